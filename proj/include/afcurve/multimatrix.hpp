#pragma once

// Multi-matrix algebras from partitioned sets: the algebra A(X) of functions
// on X x X supported on blocks, the pullback homomorphism theta induced by a
// map whose restrictions to the fibers are bijections, Bratteli-diagram
// extraction, the tower built on the sequence spaces X(n), a reachability
// test for simplicity, and exhaustive matrix-unit verification of the
// homomorphism property.

#include "common.hpp"
#include "matrix.hpp"
#include "seqspace.hpp"
#include "wordalg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace afc::mmat {

// A finite set with a partition. Element order is the caller's; the tower
// builder below groups elements by block so matrices come out
// block-contiguous.
struct PartitionedSet {
    std::vector<std::string> elements;
    std::map<std::string, int> block_of;
    std::vector<int> blocks; // distinct ids, ascending
    std::map<std::string, std::size_t> pos;
};

inline PartitionedSet make_partitioned(std::vector<std::string> elements,
                                       std::map<std::string, int> block_of) {
    PartitionedSet ps;
    ps.elements = std::move(elements);
    ps.block_of = std::move(block_of);
    if (ps.block_of.size() != ps.elements.size())
        throw std::invalid_argument("make_partitioned: block assignment must cover the elements");
    std::set<int> ids;
    for (std::size_t k = 0; k < ps.elements.size(); ++k) {
        const auto& e = ps.elements[k];
        auto it = ps.block_of.find(e);
        if (it == ps.block_of.end())
            throw std::invalid_argument("make_partitioned: element " + e + " has no block");
        if (!ps.pos.emplace(e, k).second)
            throw std::invalid_argument("make_partitioned: duplicate element " + e);
        ids.insert(it->second);
    }
    ps.blocks.assign(ids.begin(), ids.end());
    return ps;
}

struct SetMap {
    PartitionedSet source, target;
    std::map<std::string, std::string> images;
};

inline SetMap make_set_map(PartitionedSet source, PartitionedSet target,
                           std::map<std::string, std::string> images) {
    for (const auto& x : source.elements) {
        auto it = images.find(x);
        if (it == images.end())
            throw std::invalid_argument("make_set_map: no image for " + x);
        if (!target.pos.count(it->second))
            throw std::invalid_argument("make_set_map: image " + it->second + " is not in the target");
    }
    return {std::move(source), std::move(target), std::move(images)};
}

inline SetMap identity_map(const PartitionedSet& ps) {
    std::map<std::string, std::string> images;
    for (const auto& e : ps.elements) images[e] = e;
    return {ps, ps, std::move(images)};
}

// Outcome of the fiber-bijectivity check, with a finger on the first
// failure: either two elements of one fiber sharing an image, or a target
// element the fiber misses.
struct ConditionReport {
    bool ok = true;
    int source_block = -1;
    int target_block = -1;
    std::string kind;                 // "collision" or "uncovered"
    std::vector<std::string> witness; // the colliding pair, or the missed element
};

inline ConditionReport check_condition(const SetMap& m) {
    for (int i : m.source.blocks)
        for (int j : m.target.blocks) {
            std::map<std::string, std::string> hit; // image -> first preimage
            bool nonempty = false;
            for (const auto& x : m.source.elements) {
                if (m.source.block_of.at(x) != i) continue;
                const auto& y = m.images.at(x);
                if (m.target.block_of.at(y) != j) continue;
                nonempty = true;
                auto [it, fresh] = hit.emplace(y, x);
                if (!fresh) return {false, i, j, "collision", {it->second, x}};
            }
            if (!nonempty) continue;
            for (const auto& y : m.target.elements)
                if (m.target.block_of.at(y) == j && !hit.count(y))
                    return {false, i, j, "uncovered", {y}};
        }
    return {};
}

// An element of A(X): a function on X x X vanishing off the blocks, stored
// densely in the element order of its partitioned set.
struct BlockFunction {
    Matrix<Rat> values;

    friend bool operator==(const BlockFunction& f, const BlockFunction& g) {
        return f.values == g.values;
    }
};

inline BlockFunction bf_zero(const PartitionedSet& ps) {
    return {Matrix<Rat>(ps.elements.size(), ps.elements.size())};
}

inline BlockFunction bf_identity(const PartitionedSet& ps) {
    auto f = bf_zero(ps);
    for (std::size_t i = 0; i < ps.elements.size(); ++i) f.values.at(i, i) = 1;
    return f;
}

inline BlockFunction bf_unit(const PartitionedSet& ps, const std::string& e1,
                             const std::string& e2) {
    if (ps.block_of.at(e1) != ps.block_of.at(e2))
        throw std::invalid_argument("bf_unit: endpoints lie in different blocks");
    auto f = bf_zero(ps);
    f.values.at(ps.pos.at(e1), ps.pos.at(e2)) = 1;
    return f;
}

inline bool is_block_function(const PartitionedSet& ps, const BlockFunction& f) {
    if (f.values.nrows != ps.elements.size() || f.values.ncols != ps.elements.size())
        return false;
    for (std::size_t i = 0; i < ps.elements.size(); ++i)
        for (std::size_t j = 0; j < ps.elements.size(); ++j)
            if (ps.block_of.at(ps.elements[i]) != ps.block_of.at(ps.elements[j]) &&
                !(f.values.at(i, j) == Rat(0)))
                return false;
    return true;
}

inline BlockFunction bf_multiply(const PartitionedSet& ps, const BlockFunction& f,
                                 const BlockFunction& g) {
    (void)ps;
    return {f.values * g.values};
}

// Pull a function back along the map: theta(f)(x, x') = f(tau x, tau x')
// on block pairs, zero elsewhere. Only admissible maps are accepted.
inline BlockFunction theta(const SetMap& m, const BlockFunction& f) {
    if (!check_condition(m).ok)
        throw std::invalid_argument("theta: the fiber-bijectivity condition fails");
    if (f.values.nrows != m.target.elements.size())
        throw std::invalid_argument("theta: function shape does not match the target");
    const std::size_t S = m.source.elements.size();
    std::vector<std::size_t> tpos(S);
    std::vector<int> blk(S);
    for (std::size_t i = 0; i < S; ++i) {
        tpos[i] = m.target.pos.at(m.images.at(m.source.elements[i]));
        blk[i] = m.source.block_of.at(m.source.elements[i]);
    }
    auto out = bf_zero(m.source);
    for (std::size_t i = 0; i < S; ++i)
        for (std::size_t j = 0; j < S; ++j)
            if (blk[i] == blk[j]) out.values.at(i, j) = f.values.at(tpos[i], tpos[j]);
    return out;
}

// One Bratteli level: a pair (i, j) whenever block i of the source meets
// the preimage of block j, i.e. the fiber X_i^j is nonempty.
inline std::vector<std::pair<int, int>> bratteli_edges(const SetMap& m) {
    if (!check_condition(m).ok)
        throw std::invalid_argument("bratteli_edges: the fiber-bijectivity condition fails");
    std::set<std::pair<int, int>> out;
    for (const auto& x : m.source.elements)
        out.insert({m.source.block_of.at(x), m.target.block_of.at(m.images.at(x))});
    return {out.begin(), out.end()};
}

// Levels of block sizes plus, per gap, the edge pairs (block index at the
// later level, block index at the earlier level). Block ids double as
// indices here, which holds for every tower this module builds.
struct BratteliDiagram {
    std::vector<std::vector<std::size_t>> level_sizes;
    std::vector<std::vector<std::pair<int, int>>> edges;
};

inline bool validate_diagram(const BratteliDiagram& d) {
    if (!d.level_sizes.empty() && d.edges.size() + 1 != d.level_sizes.size()) return false;
    for (std::size_t k = 0; k < d.edges.size(); ++k) {
        const auto& lower = d.level_sizes[k];
        const auto& upper = d.level_sizes[k + 1];
        std::vector<std::size_t> fed(upper.size(), 0);
        for (auto [i, j] : d.edges[k]) {
            if (i < 0 || static_cast<std::size_t>(i) >= upper.size()) return false;
            if (j < 0 || static_cast<std::size_t>(j) >= lower.size()) return false;
            fed[static_cast<std::size_t>(i)] += lower[static_cast<std::size_t>(j)];
        }
        for (std::size_t i = 0; i < upper.size(); ++i)
            if (fed[i] != upper[i]) return false;
    }
    return true;
}

// The sequence set X(n) partitioned by trailing-ones count, elements grouped
// by block and lexicographic inside each block. X(-1) is the one-point set.
inline PartitionedSet penrose_set(const alg::Params& p, int n) {
    seq::Params sp{p.r};
    auto elems = seq::enumerate_Xn(sp, n);
    std::map<std::string, int> blocks;
    for (const auto& e : elems) blocks[e] = e.empty() ? 0 : seq::block_index(e);
    std::stable_sort(elems.begin(), elems.end(), [&](const std::string& a, const std::string& b) {
        return blocks.at(a) < blocks.at(b);
    });
    return make_partitioned(std::move(elems), std::move(blocks));
}

// The truncation maps X(n) -> X(n-1) for n = 0..N; entry n is the map
// feeding level n+1 of the tower.
inline std::vector<SetMap> penrose_tower(const alg::Params& p, int N,
                                         std::size_t max_size = 5000) {
    alg::validate(p);
    if (N < 0) throw std::invalid_argument("penrose_tower: N must be >= 0");
    Int top = seq::c(seq::Params{p.r}, N + 1);
    if (top > Int(max_size))
        throw resource_limit_error("penrose_tower: level " + std::to_string(N) + " has " +
                                   int_str(top) + " sequences, above the bound " +
                                   std::to_string(max_size));
    std::vector<SetMap> out;
    out.reserve(static_cast<size_t>(N) + 1);
    PartitionedSet prev = penrose_set(p, -1);
    for (int n = 0; n <= N; ++n) {
        PartitionedSet cur = penrose_set(p, n);
        std::map<std::string, std::string> images;
        for (const auto& x : cur.elements) images[x] = seq::truncate(x);
        out.push_back(make_set_map(cur, prev, std::move(images)));
        prev = std::move(cur);
    }
    return out;
}

inline BratteliDiagram tower_diagram(const alg::Params& p, int N, std::size_t max_size = 5000) {
    auto maps = penrose_tower(p, N, max_size);
    BratteliDiagram d;
    auto sizes_of = [](const PartitionedSet& ps) {
        std::vector<std::size_t> sizes(ps.blocks.size(), 0);
        for (const auto& e : ps.elements) {
            auto it = std::find(ps.blocks.begin(), ps.blocks.end(), ps.block_of.at(e));
            sizes[static_cast<std::size_t>(it - ps.blocks.begin())]++;
        }
        return sizes;
    };
    d.level_sizes.push_back(sizes_of(maps[0].target));
    for (const auto& m : maps) {
        d.level_sizes.push_back(sizes_of(m.source));
        d.edges.push_back(bratteli_edges(m));
    }
    return d;
}

// True iff from every block at every level, every block `window` levels
// later can be reached along edges. The towers here pass exactly from
// window r+1 on: their deepest block needs one step to feed the top block
// and r more to spread across all the others.
inline bool simplicity_check(const BratteliDiagram& d, int window) {
    if (window < 1) throw std::invalid_argument("simplicity_check: window must be positive");
    if (d.level_sizes.size() < static_cast<std::size_t>(window) + 1)
        throw std::invalid_argument("simplicity_check: diagram shorter than the window");
    for (std::size_t L = 0; L + static_cast<std::size_t>(window) < d.level_sizes.size(); ++L) {
        for (std::size_t v = 0; v < d.level_sizes[L].size(); ++v) {
            std::set<int> reach{static_cast<int>(v)};
            for (int step = 0; step < window; ++step) {
                std::set<int> next;
                for (auto [i, j] : d.edges[L + static_cast<std::size_t>(step)])
                    if (reach.count(j)) next.insert(i);
                reach = std::move(next);
            }
            if (reach.size() != d.level_sizes[L + static_cast<std::size_t>(window)].size())
                return false;
        }
    }
    return true;
}

namespace detail {

// Per-block inverse tables: under the admissibility condition each source
// block holds at most one preimage of each target element.
struct InverseTables {
    std::size_t S = 0, T = 0, B = 0;
    std::vector<int> inv;                        // inv[b*T + y] = source pos or -1
    std::vector<std::pair<int, int>> units;      // same-block target position pairs
};

inline InverseTables build_tables(const SetMap& m) {
    InverseTables t;
    t.S = m.source.elements.size();
    t.T = m.target.elements.size();
    t.B = m.source.blocks.size();
    std::map<int, std::size_t> src_block_index;
    for (std::size_t k = 0; k < m.source.blocks.size(); ++k)
        src_block_index[m.source.blocks[k]] = k;
    t.inv.assign(t.B * t.T, -1);
    for (std::size_t sx = 0; sx < t.S; ++sx) {
        const auto& x = m.source.elements[sx];
        std::size_t bi = src_block_index.at(m.source.block_of.at(x));
        std::size_t y = m.target.pos.at(m.images.at(x));
        t.inv[bi * t.T + y] = static_cast<int>(sx);
    }
    std::map<int, std::vector<int>> by_block;
    for (std::size_t y = 0; y < t.T; ++y)
        by_block[m.target.block_of.at(m.target.elements[y])].push_back(static_cast<int>(y));
    for (const auto& [id, members] : by_block)
        for (int y1 : members)
            for (int y2 : members) t.units.emplace_back(y1, y2);
    return t;
}

} // namespace detail

// Exhaustive check that the pullback is a unital algebra homomorphism:
// theta(e e') = theta(e) theta(e') over every ordered pair of matrix units
// of the target algebra, compared blockwise through the inverse tables, and
// theta(1) = 1 once densely.
inline bool verify_homomorphism(const SetMap& m, std::size_t max_units = 20000) {
    if (!check_condition(m).ok)
        throw std::invalid_argument("verify_homomorphism: the fiber-bijectivity condition fails");
    auto t = detail::build_tables(m);
    const std::size_t U = t.units.size();
    if (U > max_units)
        throw resource_limit_error("verify_homomorphism: " + std::to_string(U) +
                                   " matrix units, above the bound " + std::to_string(max_units));
    const std::size_t B = t.B;
    // per unit, the preimages of its two endpoints in every source block
    std::vector<int> lft(U * B), rgt(U * B);
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t i = 0; i < B; ++i) {
            lft[u * B + i] = t.inv[i * t.T + static_cast<std::size_t>(t.units[u].first)];
            rgt[u * B + i] = t.inv[i * t.T + static_cast<std::size_t>(t.units[u].second)];
        }
    for (std::size_t u = 0; u < U; ++u) {
        const int* a1 = &lft[u * B];
        const int* a2 = &rgt[u * B];
        const int mid_u = t.units[u].second;
        for (std::size_t v = 0; v < U; ++v) {
            const int* b1 = &lft[v * B];
            const int* b2 = &rgt[v * B];
            const bool same_mid = (mid_u == t.units[v].first);
            for (std::size_t i = 0; i < B; ++i) {
                // the product of images has a block-i term iff the middle
                // preimages coincide; the image of the product has one iff
                // the middle elements coincide and block i sees the edge
                const bool lhs = (a2[i] != -1 && a2[i] == b1[i]);
                const bool rhs = (same_mid && a1[i] != -1);
                if (lhs != rhs) return false;
                if (lhs && (a1[i] == -1 || b2[i] == -1)) return false;
            }
        }
    }
    return theta(m, bf_identity(m.target)) == bf_identity(m.source);
}

// Certificate that theta is injective: every target block is hit, so every
// unit's image is nonzero, and images of distinct units occupy disjoint
// cells; a vanishing combination of images then has vanishing coefficients.
inline bool theta_injectivity_certificate(const SetMap& m) {
    if (!check_condition(m).ok)
        throw std::invalid_argument("theta_injectivity_certificate: condition fails");
    auto t = detail::build_tables(m);
    std::set<std::pair<int, int>> cells;
    for (const auto& [y1, y2] : t.units) {
        bool nonzero = false;
        for (std::size_t i = 0; i < t.B; ++i) {
            int x1 = t.inv[i * t.T + static_cast<std::size_t>(y1)];
            int x2 = t.inv[i * t.T + static_cast<std::size_t>(y2)];
            if (x1 == -1 && x2 == -1) continue;
            if ((x1 == -1) != (x2 == -1)) return false; // edges feed whole blocks
            nonzero = true;
            if (!cells.insert({x1, x2}).second) return false;
        }
        if (!nonzero) return false;
    }
    return true;
}

// DOT rendering: one rank per level, vertices labeled by block size.
inline std::string dot_of(const BratteliDiagram& d) {
    std::ostringstream os;
    os << "digraph bratteli {\n  rankdir=TB;\n  node [shape=circle, fontsize=10];\n";
    for (std::size_t k = 0; k < d.level_sizes.size(); ++k) {
        os << "  { rank=same;";
        for (std::size_t b = 0; b < d.level_sizes[k].size(); ++b)
            os << " L" << k << "B" << b << " [label=\"" << d.level_sizes[k][b] << "\"];";
        os << " }\n";
    }
    for (std::size_t k = 0; k < d.edges.size(); ++k) {
        auto sorted = d.edges[k];
        std::sort(sorted.begin(), sorted.end());
        for (auto [i, j] : sorted)
            os << "  L" << k << "B" << j << " -> L" << k + 1 << "B" << i << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace afc::mmat
