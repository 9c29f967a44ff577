#pragma once

// The tower of endomorphism algebras of the graded slices B_n, realized as
// block lower-triangular matrices over the word basis. The level-raising map
// psi factors each word as first letter times remainder and multiplies on
// the left; alpha embeds a tuple of diagonal blocks, phi is its abstract
// successor. Their commuting square and the absorption of lower blocks
// after r raises are the checkable content of the tower.

#include "common.hpp"
#include "matrix.hpp"
#include "wordalg.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace afc::endo {

using alg::Params;

// Sizes of the blocks y^i x B_{n-i-1} inside B_n, in block order i = 0..r.
inline std::vector<std::size_t> block_sizes(const Params& p, int n) {
    alg::validate(p);
    if (n < p.r + 1)
        throw std::invalid_argument("endo: levels up to r lack a complete block split");
    std::vector<std::size_t> s;
    s.reserve(static_cast<size_t>(p.r) + 1);
    for (int i = 0; i <= p.r; ++i)
        s.push_back(static_cast<std::size_t>(alg::b(p, n - i - 1)));
    return s;
}

// Block index of each basis position; the lexicographic basis lists the
// blocks contiguously in increasing leading-y count.
inline std::vector<int> block_of_positions(const Params& p, int n) {
    auto sizes = block_sizes(p, n);
    std::vector<int> blk;
    for (int i = 0; i <= p.r; ++i)
        blk.insert(blk.end(), sizes[static_cast<size_t>(i)], i);
    return blk;
}

namespace detail {

inline void guard_level(const Params& p, int n, std::size_t max_dim) {
    Int d = alg::b(p, n);
    if (d > Int(max_dim))
        throw resource_limit_error("endo: level " + std::to_string(n) + " needs " + int_str(d) +
                                   "x" + int_str(d) + " matrices, above the bound " +
                                   std::to_string(max_dim));
}

} // namespace detail

// A linear endomorphism of B_n: column j holds the image of the j-th basis
// word expanded over the same basis.
struct BlockMap {
    Params p;
    int level = 0;
    Matrix<Rat> m;

    friend bool operator==(const BlockMap& g, const BlockMap& h) {
        return g.p.r == h.p.r && g.level == h.level && g.m == h.m;
    }
};

inline BlockMap zero_map(const Params& p, int n, std::size_t max_dim = 200) {
    block_sizes(p, n); // validates the level
    detail::guard_level(p, n, max_dim);
    auto d = static_cast<std::size_t>(alg::b(p, n));
    return {p, n, Matrix<Rat>(d, d)};
}

inline BlockMap identity_map(const Params& p, int n, std::size_t max_dim = 200) {
    auto g = zero_map(p, n, max_dim);
    for (std::size_t i = 0; i < g.m.nrows; ++i) g.m.at(i, i) = 1;
    return g;
}

inline BlockMap unit_map(const Params& p, int n, std::size_t i, std::size_t j,
                         std::size_t max_dim = 200) {
    auto g = zero_map(p, n, max_dim);
    if (i >= g.m.nrows || j >= g.m.ncols)
        throw std::invalid_argument("unit_map: position out of range");
    g.m.at(i, j) = 1;
    return g;
}

inline BlockMap compose(const BlockMap& g, const BlockMap& h) {
    if (g.p.r != h.p.r || g.level != h.level)
        throw std::invalid_argument("compose: block maps live at different levels");
    return {g.p, g.level, g.m * h.m};
}

// Membership in the tower algebra: every block maps into blocks of equal or
// larger index, so entries above the block diagonal vanish.
inline bool is_in_Tn(const BlockMap& g) {
    auto blk = block_of_positions(g.p, g.level);
    for (std::size_t i = 0; i < g.m.nrows; ++i)
        for (std::size_t j = 0; j < g.m.ncols; ++j)
            if (blk[i] < blk[j] && !(g.m.at(i, j) == Rat(0))) return false;
    return true;
}

inline bool is_block_diagonal(const BlockMap& g) {
    auto blk = block_of_positions(g.p, g.level);
    for (std::size_t i = 0; i < g.m.nrows; ++i)
        for (std::size_t j = 0; j < g.m.ncols; ++j)
            if (blk[i] != blk[j] && !(g.m.at(i, j) == Rat(0))) return false;
    return true;
}

// Raise a tower element one level: the image of w = head * rest is head
// times the image of rest, with words over the run bound dying on the way.
inline BlockMap psi(const BlockMap& g, std::size_t max_dim = 200) {
    if (!is_in_Tn(g)) throw std::invalid_argument("psi: the map is not block lower triangular");
    const Params& p = g.p;
    const int n = g.level;
    auto ixn = alg::degree_index(p, n);
    auto ixn1 = alg::degree_index(p, n + 1);
    BlockMap out = zero_map(p, n + 1, max_dim);
    for (std::size_t j1 = 0; j1 < ixn1.words.size(); ++j1) {
        const std::string& w = ixn1.words[j1];
        const std::size_t j0 = ixn.pos.at(w.substr(1));
        for (std::size_t i0 = 0; i0 < ixn.words.size(); ++i0) {
            const Rat& c = g.m.at(i0, j0);
            if (c == Rat(0)) continue;
            std::string image = w.substr(0, 1) + ixn.words[i0];
            if (!alg::valid_word(p, image)) continue;
            out.m.at(ixn1.pos.at(image), j1) += c;
        }
    }
    return out;
}

// An element of the diagonal subalgebra: one square matrix per block,
// block i indexed by the words of y^i x B_{n-i-1} in basis order.
struct DiagTuple {
    Params p;
    int level = 0;
    std::vector<Matrix<Rat>> blocks;

    friend bool operator==(const DiagTuple& t, const DiagTuple& s) {
        return t.p.r == s.p.r && t.level == s.level && t.blocks == s.blocks;
    }
};

inline DiagTuple zero_tuple(const Params& p, int n, std::size_t max_dim = 200) {
    auto sizes = block_sizes(p, n);
    detail::guard_level(p, n, max_dim);
    DiagTuple t{p, n, {}};
    t.blocks.reserve(sizes.size());
    for (std::size_t s : sizes) t.blocks.emplace_back(s, s);
    return t;
}

inline DiagTuple identity_tuple(const Params& p, int n, std::size_t max_dim = 200) {
    auto t = zero_tuple(p, n, max_dim);
    for (auto& blkm : t.blocks)
        for (std::size_t i = 0; i < blkm.nrows; ++i) blkm.at(i, i) = 1;
    return t;
}

inline DiagTuple unit_tuple(const Params& p, int n, int blk, std::size_t a, std::size_t b,
                            std::size_t max_dim = 200) {
    auto t = zero_tuple(p, n, max_dim);
    if (blk < 0 || blk > p.r) throw std::invalid_argument("unit_tuple: block out of range");
    auto& blkm = t.blocks[static_cast<size_t>(blk)];
    if (a >= blkm.nrows || b >= blkm.ncols)
        throw std::invalid_argument("unit_tuple: position out of range");
    blkm.at(a, b) = 1;
    return t;
}

inline DiagTuple tuple_compose(const DiagTuple& t, const DiagTuple& s) {
    if (t.p.r != s.p.r || t.level != s.level)
        throw std::invalid_argument("tuple_compose: tuples live at different levels");
    DiagTuple out{t.p, t.level, {}};
    out.blocks.reserve(t.blocks.size());
    for (std::size_t i = 0; i < t.blocks.size(); ++i)
        out.blocks.push_back(t.blocks[i] * s.blocks[i]);
    return out;
}

// Assemble the tuple into the block-diagonal endomorphism it embeds as.
inline BlockMap alpha_embed(const DiagTuple& t) {
    auto sizes = block_sizes(t.p, t.level);
    auto g = zero_map(t.p, t.level, static_cast<std::size_t>(-1));
    std::size_t off = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        const auto& blkm = t.blocks[k];
        for (std::size_t i = 0; i < blkm.nrows; ++i)
            for (std::size_t j = 0; j < blkm.ncols; ++j)
                g.m.at(off + i, off + j) = blkm.at(i, j);
        off += sizes[k];
    }
    return g;
}

// Abstract successor of a tuple: the whole tuple assembles into the new
// block 0 (the x prefix copies every old block in order), and old block i
// reappears as new block i+1 (the y prefix shifts it one block down).
inline DiagTuple phi_abstract(const DiagTuple& t, std::size_t max_dim = 200) {
    const Params& p = t.p;
    auto out = zero_tuple(p, t.level + 1, max_dim);
    auto sizes = block_sizes(p, t.level);
    std::size_t off = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        const auto& blkm = t.blocks[k];
        for (std::size_t i = 0; i < blkm.nrows; ++i)
            for (std::size_t j = 0; j < blkm.ncols; ++j)
                out.blocks[0].at(off + i, off + j) = blkm.at(i, j);
        off += sizes[k];
    }
    for (int i = 0; i + 1 <= p.r; ++i)
        out.blocks[static_cast<size_t>(i) + 1] = t.blocks[static_cast<size_t>(i)];
    return out;
}

// The square: raising the embedded tuple equals embedding the successor.
inline bool check_commute(const DiagTuple& t, std::size_t max_dim = 200) {
    return psi(alpha_embed(t), max_dim) == alpha_embed(phi_abstract(t, max_dim));
}

// After r raises every tower element lands in the image of the diagonal
// embedding: the strictly lower blocks are absorbed.
inline bool check_absorption(const BlockMap& g, std::size_t max_dim = 200) {
    if (!is_in_Tn(g)) throw std::invalid_argument("check_absorption: not a tower element");
    BlockMap h = g;
    for (int k = 0; k < g.p.r; ++k) h = psi(h, max_dim);
    return is_block_diagonal(h);
}

// Independence certificate for psi on the matrix units spanning the tower
// algebra: the image of the unit at (i, j) carries coefficient one on the
// cell (x w_i, x w_j), and no other unit's image touches that cell. Any
// vanishing linear combination of images therefore has zero coefficients.
inline bool psi_injective_certificate(const Params& p, int n, std::size_t max_dim = 200) {
    auto ixn = alg::degree_index(p, n);
    auto ixn1 = alg::degree_index(p, n + 1);
    auto blk = block_of_positions(p, n);
    const std::size_t d = ixn.words.size();
    std::map<std::pair<std::size_t, std::size_t>, int> touched;
    std::vector<std::pair<std::size_t, std::size_t>> private_cells;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (blk[i] < blk[j]) continue;
            auto h = psi(unit_map(p, n, i, j, max_dim), max_dim);
            const std::size_t xi = ixn1.pos.at("x" + ixn.words[i]);
            const std::size_t xj = ixn1.pos.at("x" + ixn.words[j]);
            if (!(h.m.at(xi, xj) == Rat(1))) return false;
            private_cells.emplace_back(xi, xj);
            for (std::size_t a = 0; a < h.m.nrows; ++a)
                for (std::size_t c = 0; c < h.m.ncols; ++c)
                    if (!(h.m.at(a, c) == Rat(0))) ++touched[{a, c}];
        }
    for (const auto& cell : private_cells)
        if (touched.at(cell) != 1) return false;
    return true;
}

} // namespace afc::endo
