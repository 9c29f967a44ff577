#pragma once

// Point modules over the truncated word algebra. A point module is cyclic
// with one-dimensional graded slices, so in a fixed basis the two
// generators act through scalars (xi_i, eta_i) per degree. We store the
// scalar stream as an eventually periodic list of pairs, mirroring the
// digit sequences: the module of a sequence z acts by x alone where the
// digit is 0 and by y alone where it is 1. Isomorphism in the quotient of
// graded modules by finite-dimensional ones only sees the tail, and basis
// rescaling only sees each pair up to a common factor, so the decision
// procedure compares pairs projectively on one period past both preperiods.

#include <afcurve/common.hpp>
#include <afcurve/matrix.hpp>
#include <afcurve/seqspace.hpp>
#include <afcurve/wordalg.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace afc::pts {

enum class FieldTag { rationals, f2 };

using ActionPair = std::pair<Rat, Rat>;

// Eventually periodic scalar stream (xi_i, eta_i), canonical form: the
// cycle is a primitive period and matching trailing entries of the
// preperiod are absorbed into the cycle phase.
struct PointModule {
    int r = 1;
    FieldTag field = FieldTag::rationals;
    std::vector<ActionPair> pre;
    std::vector<ActionPair> cyc;

    friend bool operator==(const PointModule&, const PointModule&) = default;
};

namespace detail {

// Shared canonical form for eventually periodic containers: cut the cycle
// to its primitive period, then absorb matching trailing entries of the
// prefix by rotating the cycle phase backwards.
template <class C>
void canonicalize_periodic(C& pre, C& cyc) {
    for (std::size_t d = 1; d <= cyc.size(); ++d) {
        if (cyc.size() % d != 0) continue;
        bool repeats = true;
        for (std::size_t i = d; i < cyc.size() && repeats; ++i) repeats = (cyc[i] == cyc[i % d]);
        if (repeats) {
            cyc.erase(cyc.begin() + static_cast<std::ptrdiff_t>(d), cyc.end());
            break;
        }
    }
    while (!pre.empty() && pre.back() == cyc.back()) {
        pre.pop_back();
        std::rotate(cyc.begin(), cyc.end() - 1, cyc.end());
    }
}

} // namespace detail

inline PointModule make_point_module(const alg::Params& p, FieldTag field,
                                     std::vector<ActionPair> pre, std::vector<ActionPair> cyc) {
    alg::validate(p);
    if (cyc.empty()) throw std::invalid_argument("PointModule: cycle must be nonempty");
    auto check_entry = [&](const ActionPair& ab) {
        if (ab.first == 0 && ab.second == 0)
            throw std::invalid_argument("PointModule: the pair (0,0) kills the generator");
        if (field == FieldTag::f2 &&
            !((ab.first == 0 || ab.first == 1) && (ab.second == 0 || ab.second == 1)))
            throw std::invalid_argument("PointModule: entries over F2 must be 0 or 1");
    };
    for (const auto& ab : pre) check_entry(ab);
    for (const auto& ab : cyc) check_entry(ab);
    detail::canonicalize_periodic(pre, cyc);
    // y^(r+1) = 0 on every slice iff no r+1 consecutive eta values are all
    // nonzero; every window of the infinite stream is visible in the
    // prefix plus enough cycle copies.
    std::vector<ActionPair> u = pre;
    while (u.size() < pre.size() + cyc.size() + static_cast<std::size_t>(p.r) + 1)
        u.insert(u.end(), cyc.begin(), cyc.end());
    int run = 0;
    for (const auto& ab : u) {
        run = (ab.second == 0) ? 0 : run + 1;
        if (run > p.r)
            throw std::invalid_argument("PointModule: y acts without vanishing past power r");
    }
    return PointModule{p.r, field, std::move(pre), std::move(cyc)};
}

inline const ActionPair& action_at(const PointModule& m, long i) {
    if (i < 0) throw std::invalid_argument("action_at: negative index");
    const long pn = static_cast<long>(m.pre.size());
    if (i < pn) return m.pre[static_cast<std::size_t>(i)];
    return m.cyc[static_cast<std::size_t>((i - pn) % static_cast<long>(m.cyc.size()))];
}

// The module of a digit sequence: x alone acts across slots holding 0 and
// y alone across slots holding 1.
inline PointModule from_seq(const alg::Params& p, const seq::EventualSeq& z,
                            FieldTag field = FieldTag::rationals) {
    if (p.r != z.params.r) throw std::invalid_argument("from_seq: rank mismatch");
    auto lift = [](char ch) {
        return ch == '1' ? ActionPair{Rat(0), Rat(1)} : ActionPair{Rat(1), Rat(0)};
    };
    std::vector<ActionPair> pre, cyc;
    for (char ch : z.pre) pre.push_back(lift(ch));
    for (char ch : z.cyc) cyc.push_back(lift(ch));
    return make_point_module(p, field, std::move(pre), std::move(cyc));
}

// Drop the degree zero slice and renumber; the result is again a point
// module, in canonical form.
inline PointModule shift_point(const PointModule& m) {
    alg::Params p{m.r};
    if (!m.pre.empty())
        return make_point_module(p, m.field,
                                 std::vector<ActionPair>(m.pre.begin() + 1, m.pre.end()), m.cyc);
    std::vector<ActionPair> rot(m.cyc.begin() + 1, m.cyc.end());
    rot.push_back(m.cyc.front());
    return make_point_module(p, m.field, {}, std::move(rot));
}

// Matrices of x and y on the first N slices e_0, ..., e_{N-1}, with
// x e_i = xi_i e_{i+1} and y e_i = eta_i e_{i+1}.
inline std::pair<Matrix<Rat>, Matrix<Rat>> truncated_action_matrices(const PointModule& m, int N) {
    if (N < 1) throw std::invalid_argument("truncated_action_matrices: need at least one slice");
    const auto n = static_cast<std::size_t>(N);
    Matrix<Rat> X(n, n), Y(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto& ab = action_at(m, static_cast<long>(i));
        X.at(i + 1, i) = ab.first;
        Y.at(i + 1, i) = ab.second;
    }
    return {X, Y};
}

// Tail isomorphism test. Rescaling the basis multiplies each pair by an
// arbitrary nonzero scalar, so two streams give isomorphic tails exactly
// when the pairs are projectively equal for all large degrees, which is
// decided on one common period past both preperiods. Beyond r = 1 the
// criterion is only offered for 0/1 entries.
inline bool qgr_iso(const PointModule& a, const PointModule& b) {
    if (a.field != b.field) throw std::invalid_argument("qgr_iso: fields differ");
    if (a.r != b.r) throw std::invalid_argument("qgr_iso: ranks differ");
    if (a.r != 1) {
        auto entries01 = [](const PointModule& m) {
            auto ok = [](const ActionPair& ab) {
                return (ab.first == 0 || ab.first == 1) && (ab.second == 0 || ab.second == 1);
            };
            return std::all_of(m.pre.begin(), m.pre.end(), ok) &&
                   std::all_of(m.cyc.begin(), m.cyc.end(), ok);
        };
        if (!entries01(a) || !entries01(b))
            throw std::invalid_argument("qgr_iso: unsupported shape, need rank 1 or 0/1 entries");
    }
    const long start = static_cast<long>(std::max(a.pre.size(), b.pre.size()));
    const long window = static_cast<long>(std::lcm(a.cyc.size(), b.cyc.size()));
    for (long i = start; i < start + window; ++i) {
        const auto& pa = action_at(a, i);
        const auto& pb = action_at(b, i);
        if (pa.first * pb.second - pa.second * pb.first != 0) return false;
    }
    return true;
}

// Ratio reading at r = 1: slot i holds infinity (no value) when eta_i = 0
// and xi_i / eta_i otherwise.
struct SphereSeq {
    std::vector<std::optional<Rat>> pre;
    std::vector<std::optional<Rat>> cyc;

    friend bool operator==(const SphereSeq&, const SphereSeq&) = default;
};

inline SphereSeq make_sphere(std::vector<std::optional<Rat>> pre,
                             std::vector<std::optional<Rat>> cyc) {
    if (cyc.empty()) throw std::invalid_argument("SphereSeq: cycle must be nonempty");
    detail::canonicalize_periodic(pre, cyc);
    // at r = 1 a finite value forces eta nonzero, so finite values never
    // sit in adjacent slots
    std::vector<std::optional<Rat>> u = pre;
    u.insert(u.end(), cyc.begin(), cyc.end());
    u.insert(u.end(), cyc.begin(), cyc.end());
    for (std::size_t i = 0; i + 1 < u.size(); ++i)
        if (u[i].has_value() && u[i + 1].has_value())
            throw std::invalid_argument("SphereSeq: consecutive finite values break y^2 = 0");
    return SphereSeq{std::move(pre), std::move(cyc)};
}

inline SphereSeq to_sphere_seq(const PointModule& m) {
    if (m.r != 1) throw std::invalid_argument("to_sphere_seq: ratio reading needs r = 1");
    auto read = [](const ActionPair& ab) -> std::optional<Rat> {
        if (ab.second == 0) return std::nullopt;
        return ab.first / ab.second;
    };
    std::vector<std::optional<Rat>> pre, cyc;
    for (const auto& ab : m.pre) pre.push_back(read(ab));
    for (const auto& ab : m.cyc) cyc.push_back(read(ab));
    return make_sphere(std::move(pre), std::move(cyc));
}

// Exhaustive truncated classification over the two-element field. Slots
// hold one of the three nonzero pairs (1,0), (0,1), (1,1) subject to the
// eta run bound. Each string of eta digits labels a class; over F2 there
// is no rescaling, so slots holding (1,1) are counted separately instead
// of being merged into a digit class.
struct F2Report {
    int r = 1;
    int N = 0;
    Int total = 0;
    Int pure = 0;
    Int unresolved = 0;
    std::map<std::string, Int> class_counts;
};

inline F2Report enumerate_f2(const alg::Params& p, int N, int max_N = 20) {
    alg::validate(p);
    if (N < 1) throw std::invalid_argument("enumerate_f2: need at least one slot");
    if (N > max_N) throw resource_limit_error("enumerate_f2: 3^N states exceed the guard");
    F2Report rep;
    rep.r = p.r;
    rep.N = N;
    std::string z(static_cast<std::size_t>(N), '0');
    auto rec = [&](auto&& self, int i, int run, bool mixed) -> void {
        if (i == N) {
            rep.total += 1;
            (mixed ? rep.unresolved : rep.pure) += 1;
            rep.class_counts[z] += 1;
            return;
        }
        const auto slot = static_cast<std::size_t>(i);
        z[slot] = '0';
        self(self, i + 1, 0, mixed);
        if (run < p.r) {
            z[slot] = '1';
            self(self, i + 1, run + 1, mixed);
            self(self, i + 1, run + 1, true);
            z[slot] = '0';
        }
    };
    rec(rec, 0, 0, false);
    return rep;
}

// Walks on the two-vertex graph with a loop at 0 labelled by infinity, an
// edge 0 -> 1 labelled by a finite value, and an edge 1 -> 0 labelled by
// infinity. Label C stands for a finite value, * for infinity; the vertex
// trace is determined by the labels since C only leaves vertex 0.
struct GraphPath {
    std::string pre;
    std::string cyc;

    friend bool operator==(const GraphPath&, const GraphPath&) = default;
};

inline GraphPath psi_path(const SphereSeq& s) {
    if (s.cyc.empty()) throw std::invalid_argument("psi_path: cycle must be nonempty");
    auto label = [](const std::optional<Rat>& a) { return a.has_value() ? 'C' : '*'; };
    std::string pre, cyc;
    for (const auto& a : s.pre) pre += label(a);
    for (const auto& a : s.cyc) cyc += label(a);
    std::string u = pre + cyc + cyc;
    for (std::size_t i = 0; i + 1 < u.size(); ++i)
        if (u[i] == 'C' && u[i + 1] == 'C')
            throw std::logic_error("psi_path: consecutive finite values have no walk");
    detail::canonicalize_periodic(pre, cyc);
    return GraphPath{std::move(pre), std::move(cyc)};
}

inline std::vector<int> vertices_of(const GraphPath& gp, int n) {
    if (n < 0) throw std::invalid_argument("vertices_of: negative length");
    if (gp.cyc.empty()) throw std::invalid_argument("vertices_of: cycle must be nonempty");
    auto label_at = [&](long i) {
        const long pn = static_cast<long>(gp.pre.size());
        if (i < pn) return gp.pre[static_cast<std::size_t>(i)];
        return gp.cyc[static_cast<std::size_t>((i - pn) % static_cast<long>(gp.cyc.size()))];
    };
    std::vector<int> verts{0};
    int at = 0;
    for (long i = 0; i < n; ++i) {
        const char step = label_at(i);
        if (step == 'C') {
            if (at != 0) throw std::logic_error("vertices_of: finite step away from vertex 0");
            at = 1;
        } else if (step == '*') {
            at = 0;
        } else {
            throw std::invalid_argument("vertices_of: labels are C or *");
        }
        verts.push_back(at);
    }
    return verts;
}

} // namespace afc::pts
