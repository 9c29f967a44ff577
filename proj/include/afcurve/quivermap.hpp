#pragma once

// The quiver on r+1 vertices whose path algebra receives the word algebra:
// every vertex sends one x-arrow back to vertex 1 and, short of the top,
// one y-arrow up a rung. Tracing a word from a fixed vertex is therefore
// deterministic, which is what makes the desk-scale checks here cheap: the
// embedding's injectivity in each degree, saturation of the left ideal
// generated by the trivial paths, the two cokernel inclusions, and the
// elimination that presents K-theory by the single window relation.

#include "common.hpp"
#include "k0ring.hpp"
#include "matrix.hpp"
#include "wordalg.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace afc::quiver {

struct Arrow {
    std::string name;
    int start = 1;
    int head = 1;
};

// Vertices are 1..r+1. Arrows are stored x_1, ..., x_{r+1}, y_1, ..., y_r;
// the per-vertex lookups give the unique outgoing arrow of each letter,
// -1 when the vertex has none.
struct Quiver {
    int r = 1;
    std::vector<Arrow> arrows;
    std::vector<int> x_at, y_at; // indexed by vertex, entry 0 unused
};

inline Quiver make_quiver(const alg::Params& p) {
    alg::validate(p);
    Quiver q;
    q.r = p.r;
    q.arrows.push_back({"x_1", 1, 1});
    for (int i = 2; i <= p.r + 1; ++i)
        q.arrows.push_back({"x_" + std::to_string(i), i, 1});
    for (int i = 1; i <= p.r; ++i)
        q.arrows.push_back({"y_" + std::to_string(i), i, i + 1});
    q.x_at.assign(static_cast<std::size_t>(p.r) + 2, -1);
    q.y_at.assign(static_cast<std::size_t>(p.r) + 2, -1);
    for (std::size_t k = 0; k < q.arrows.size(); ++k) {
        const auto& a = q.arrows[k];
        (a.name[0] == 'x' ? q.x_at : q.y_at)[static_cast<std::size_t>(a.start)] =
            static_cast<int>(k);
    }
    // every vertex feeds vertex 1, and only y_{i-1} feeds vertex i >= 2
    for (int i = 1; i <= p.r + 1; ++i) {
        std::set<int> sources;
        for (const auto& a : q.arrows)
            if (a.head == i) sources.insert(a.start);
        if (i == 1) {
            if (sources.size() != static_cast<std::size_t>(p.r) + 1)
                throw std::logic_error("make_quiver: vertex 1 must hear from everyone");
        } else if (sources != std::set<int>{i - 1}) {
            throw std::logic_error("make_quiver: upper vertices hear only from below");
        }
    }
    return q;
}

struct Path {
    int start = 1;
    std::vector<int> arrows; // indices into Quiver::arrows, traversal order

    friend bool operator==(const Path& a, const Path& b) {
        return a.start == b.start && a.arrows == b.arrows;
    }
    friend bool operator<(const Path& a, const Path& b) {
        return std::tie(a.start, a.arrows) < std::tie(b.start, b.arrows);
    }
};

inline int head_of(const Quiver& q, const Path& p) {
    int at = p.start;
    for (int idx : p.arrows) {
        const auto& a = q.arrows[static_cast<std::size_t>(idx)];
        if (a.start != at) throw std::invalid_argument("head_of: arrows do not compose");
        at = a.head;
    }
    return at;
}

inline std::string display(const Quiver& q, const Path& p) {
    if (p.arrows.empty()) return "e_" + std::to_string(p.start);
    std::string out;
    for (int idx : p.arrows) out += q.arrows[static_cast<std::size_t>(idx)].name;
    return out;
}

// A finite rational combination of paths.
using PathElement = std::map<Path, Rat>;

inline PathElement pe_multiply(const Quiver& q, const PathElement& a, const PathElement& b) {
    PathElement out;
    for (const auto& [pa, ca] : a) {
        int join = head_of(q, pa);
        for (const auto& [pb, cb] : b) {
            if (pb.start != join) continue;
            Path prod = pa;
            prod.arrows.insert(prod.arrows.end(), pb.arrows.begin(), pb.arrows.end());
            Rat c = (out[prod] += ca * cb);
            if (c == 0) out.erase(prod);
        }
    }
    return out;
}

// Substitute x for the sum of x-arrows and y for the sum of y-arrows: each
// word traces deterministically from each start vertex and dies when y is
// asked for at the top. A left unit restricts the starts to one vertex.
inline PathElement f_image(const Quiver& q, const alg::Element<Rat>& el,
                           std::optional<int> left_unit = std::nullopt) {
    if (left_unit && (*left_unit < 1 || *left_unit > q.r + 1))
        throw std::invalid_argument("f_image: left unit out of range");
    PathElement out;
    for (const auto& [w, coeff] : el.terms) {
        int lo = left_unit ? *left_unit : 1;
        int hi = left_unit ? *left_unit : q.r + 1;
        for (int v = lo; v <= hi; ++v) {
            Path path{v, {}};
            int at = v;
            bool alive = true;
            for (char ch : w) {
                int idx = (ch == 'x' ? q.x_at : q.y_at)[static_cast<std::size_t>(at)];
                if (idx < 0) {
                    alive = false;
                    break;
                }
                path.arrows.push_back(idx);
                at = q.arrows[static_cast<std::size_t>(idx)].head;
            }
            if (!alive) continue;
            Rat c = (out[path] += coeff);
            if (c == 0) out.erase(path);
        }
    }
    return out;
}

// Strip the subscripts off a path out of vertex 1, recovering the word.
inline std::string psi_forget(const Quiver& q, const Path& p) {
    if (p.start != 1) throw std::invalid_argument("psi_forget: path must start at vertex 1");
    std::string w;
    for (int idx : p.arrows) w += q.arrows[static_cast<std::size_t>(idx)].name[0];
    return w;
}

inline std::vector<Path> paths_from(const Quiver& q, int v, int n) {
    std::vector<Path> frontier{Path{v, {}}};
    for (int step = 0; step < n; ++step) {
        std::vector<Path> next;
        for (const auto& p : frontier) {
            int at = head_of(q, p);
            for (int idx : {q.x_at[static_cast<std::size_t>(at)],
                            q.y_at[static_cast<std::size_t>(at)]}) {
                if (idx < 0) continue;
                Path ext = p;
                ext.arrows.push_back(idx);
                next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
    }
    return frontier;
}

inline std::vector<Path> paths_of_length(const Quiver& q, int n) {
    std::vector<Path> out;
    for (int v = 1; v <= q.r + 1; ++v) {
        auto part = paths_from(q, v, n);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

// Every word of degree <= N must hit a distinct single unit-coefficient
// path from vertex 1 whose subscript-free readback is the word again, and
// the paths out of vertex 1 must be counted exactly by the word dimensions.
inline bool injectivity_check(const alg::Params& p, int N, int max_degree = 10) {
    alg::validate(p);
    if (N > max_degree)
        throw resource_limit_error("injectivity_check: degree " + std::to_string(N) +
                                   " above the bound " + std::to_string(max_degree));
    auto q = make_quiver(p);
    for (int n = 0; n <= N; ++n) {
        std::set<Path> seen;
        for (const auto& w : alg::basis(p, n)) {
            auto pe = f_image(q, alg::Element<Rat>::monomial(p, w, Rat(1)), 1);
            if (pe.size() != 1) return false;
            const auto& [path, c] = *pe.begin();
            if (!(c == Rat(1))) return false;
            if (psi_forget(q, path) != w) return false;
            if (!seen.insert(path).second) return false;
        }
        if (Int(seen.size()) != alg::b(p, n)) return false;
        if (Int(paths_from(q, 1, n).size()) != alg::b(p, n)) return false;
    }
    return true;
}

namespace detail {

inline std::vector<Rat> pe_vector(const PathElement& pe,
                                  const std::map<Path, std::size_t>& index) {
    std::vector<Rat> row(index.size(), Rat(0));
    for (const auto& [path, c] : pe) row[index.at(path)] = c;
    return row;
}

} // namespace detail

// The trivial paths generate each graded piece of the path algebra as a
// left module over the embedded word algebra: the span of e_i f(w) over all
// vertices i and words w of degree n is all of degree n.
inline bool ideal_check(const alg::Params& p, int N, int max_degree = 10) {
    alg::validate(p);
    if (N > max_degree)
        throw resource_limit_error("ideal_check: degree " + std::to_string(N) +
                                   " above the bound " + std::to_string(max_degree));
    auto q = make_quiver(p);
    for (int n = 0; n <= N; ++n) {
        auto all = paths_of_length(q, n);
        std::map<Path, std::size_t> index;
        for (const auto& path : all) index.emplace(path, index.size());
        RowSpace<Rat> span(all.size());
        for (int i = 1; i <= p.r + 1; ++i)
            for (const auto& w : alg::basis(p, n))
                span.insert(detail::pe_vector(
                    f_image(q, alg::Element<Rat>::monomial(p, w, Rat(1)), i), index));
        if (span.dim() != all.size()) return false;
    }
    return true;
}

// Right multiplication by degree <= 1 keeps the top graded pieces of the
// image inside the image: f(B_{r+1}) absorbs the trivial paths and
// f(B_{r+1}) times any arrow lands in f(B_{r+2}).
inline bool coker_check(const alg::Params& p) {
    alg::validate(p);
    auto q = make_quiver(p);
    auto span_of = [&](int degree, std::map<Path, std::size_t>& index) {
        index.clear();
        for (const auto& path : paths_of_length(q, degree)) index.emplace(path, index.size());
        RowSpace<Rat> span(index.size());
        for (const auto& w : alg::basis(p, degree))
            span.insert(detail::pe_vector(
                f_image(q, alg::Element<Rat>::monomial(p, w, Rat(1))), index));
        return span;
    };
    std::map<Path, std::size_t> idx1, idx2;
    auto span1 = span_of(p.r + 1, idx1);
    auto span2 = span_of(p.r + 2, idx2);
    for (const auto& w : alg::basis(p, p.r + 1)) {
        auto fw = f_image(q, alg::Element<Rat>::monomial(p, w, Rat(1)));
        for (int i = 1; i <= p.r + 1; ++i) {
            PathElement cut;
            for (const auto& [path, c] : fw)
                if (head_of(q, path) == i) cut[path] = c;
            if (!span1.contains(detail::pe_vector(cut, idx1))) return false;
        }
        for (std::size_t a = 0; a < q.arrows.size(); ++a) {
            PathElement arrow{{Path{q.arrows[a].start, {static_cast<int>(a)}}, Rat(1)}};
            if (!span2.contains(detail::pe_vector(pe_multiply(q, fw, arrow), idx2)))
                return false;
        }
    }
    return true;
}

// The presentation of the K-group read off the quiver: one relation vector
// per vertex (the projective minus t times the sources feeding it), then
// the proof's elimination p_i = t^{i-1} p_1, leaving one relation in p_1
// and the structure sheaf class in two equivalent forms.
struct K0Presentation {
    std::vector<std::vector<k0::LaurentPoly>> relation_vectors;
    k0::LaurentPoly relation;  // 1 - t - ... - t^{r+1}
    k0::LaurentPoly o_class;   // 1 + t + ... + t^r, coefficient of p_1
    k0::LaurentPoly o_reduced; // t^{-1}
};

inline K0Presentation k0_presentation(const alg::Params& p) {
    auto q = make_quiver(p);
    K0Presentation out;
    for (int i = 1; i <= p.r + 1; ++i) {
        std::vector<k0::LaurentPoly> v(static_cast<std::size_t>(p.r) + 1);
        v[static_cast<std::size_t>(i - 1)][0] += 1;
        for (const auto& a : q.arrows)
            if (a.head == i) v[static_cast<std::size_t>(a.start - 1)][1] -= 1;
        for (auto& poly : v) poly = k0::laurent_normalize(std::move(poly));
        out.relation_vectors.push_back(std::move(v));
    }
    // substitute p_j = t^{j-1} p_1 into each vector; all must collapse to
    // zero except the first, which carries the surviving relation
    auto substitute = [&](const std::vector<k0::LaurentPoly>& v) {
        k0::LaurentPoly total;
        for (int j = 1; j <= p.r + 1; ++j)
            total = k0::laurent_add(
                total, k0::laurent_mul(v[static_cast<std::size_t>(j - 1)],
                                       k0::LaurentPoly{{j - 1, Int(1)}}));
        return total;
    };
    out.relation = substitute(out.relation_vectors[0]);
    for (std::size_t i = 1; i < out.relation_vectors.size(); ++i)
        if (!substitute(out.relation_vectors[i]).empty())
            throw std::logic_error("k0_presentation: elimination left an extra relation");
    for (int i = 0; i <= p.r; ++i) out.o_class[i] = 1;
    out.o_reduced = {{-1, Int(1)}};
    auto diff = k0::laurent_add(out.o_class, k0::laurent_neg(out.o_reduced));
    if (diff != k0::laurent_mul(k0::LaurentPoly{{-1, Int(-1)}}, out.relation))
        throw std::logic_error("k0_presentation: structure sheaf rewrite is off the relation");
    return out;
}

inline std::string dot_of(const Quiver& q) {
    std::ostringstream os;
    os << "digraph quiver {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (int v = 1; v <= q.r + 1; ++v) os << "  v" << v << " [label=\"" << v << "\"];\n";
    for (const auto& a : q.arrows)
        os << "  v" << a.start << " -> v" << a.head << " [label=\"" << a.name << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace afc::quiver
