#pragma once

// The graded algebra B = k<x,y>/(y^{r+1}) on its word basis: enumeration of
// the basis words, exact multiplication, the free subalgebra generated by
// u_j = sum_i y^{i-1} x y^{j-i}, Hilbert series bookkeeping, the ideal
// generated by x, and the block decomposition by leading y count.

#include "common.hpp"
#include "matrix.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace afc::alg {

struct Params {
    int r = 1;
};

inline void validate(const Params& p) {
    if (p.r < 1) throw std::invalid_argument("wordalg: r must be >= 1");
}

// A word is a string over {x, y}; it survives in the quotient iff it has no
// run of more than r consecutive y's.
inline bool valid_word(const Params& p, std::string_view w) {
    int run = 0;
    for (char ch : w) {
        if (ch != 'x' && ch != 'y') return false;
        run = (ch == 'y') ? run + 1 : 0;
        if (run > p.r) return false;
    }
    return true;
}

struct Word {
    std::string letters;
    bool zero = false; // set when a product hit the defining relation
};

inline Word concat(const Params& p, const Word& a, const Word& b) {
    if (a.zero || b.zero) return {"", true};
    std::string s = a.letters + b.letters;
    if (!valid_word(p, s)) return {"", true};
    return {std::move(s), false};
}

// Dimension of the degree-n slice: 2^n while the relation cannot bite,
// then the order-(r+1) window recurrence.
inline Int b(const Params& p, int n) {
    validate(p);
    if (n < 0) return 0;
    std::vector<Int> v(static_cast<size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        if (m <= p.r) {
            v[static_cast<size_t>(m)] = pow_int(2, static_cast<unsigned>(m));
            continue;
        }
        Int s = 0;
        for (int i = 1; i <= p.r + 1; ++i) s += v[static_cast<size_t>(m - i)];
        v[static_cast<size_t>(m)] = s;
    }
    return v[static_cast<size_t>(n)];
}

// Dimension of the degree-n slice of the subalgebra on the u generators:
// coefficients of 1/(1 - t - ... - t^{r+1}).
inline Int a(const Params& p, int n) {
    validate(p);
    if (n < 0) return 0;
    std::vector<Int> v(static_cast<size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        if (m == 0) {
            v[0] = 1;
            continue;
        }
        Int s = 0;
        for (int i = 1; i <= p.r + 1 && i <= m; ++i) s += v[static_cast<size_t>(m - i)];
        v[static_cast<size_t>(m)] = s;
    }
    return v[static_cast<size_t>(n)];
}

// All valid words of length n in lexicographic order (x < y), grown one
// letter at a time; appending 'x' before 'y' keeps the order at every step.
inline std::vector<std::string> basis(const Params& p, int n) {
    validate(p);
    if (n < 0) throw std::invalid_argument("basis: n must be >= 0");
    std::vector<std::string> cur{""};
    for (int len = 1; len <= n; ++len) {
        std::vector<std::string> next;
        next.reserve(cur.size() * 2);
        for (const auto& w : cur) {
            next.push_back(w + 'x');
            int run = 0;
            for (auto it = w.rbegin(); it != w.rend() && *it == 'y'; ++it) ++run;
            if (run < p.r) next.push_back(w + 'y');
        }
        cur = std::move(next);
    }
    return cur;
}

// A finite linear combination of basis words. The map never stores a zero
// coefficient or a word killed by the relation.
template <class K = Rat>
struct Element {
    std::map<std::string, K> terms;

    bool is_zero() const { return terms.empty(); }

    static Element monomial(const Params& p, const std::string& w, K c = K(1)) {
        if (!valid_word(p, w)) throw std::invalid_argument("Element: forbidden word " + w);
        Element e;
        if (!(c == K(0))) e.terms.emplace(w, c);
        return e;
    }

    // Same, except a word killed by the relation quietly gives zero; useful
    // when the input word is produced by an unconstrained source.
    static Element monomial_or_zero(const Params& p, const std::string& w, K c = K(1)) {
        if (!valid_word(p, w)) return {};
        return monomial(p, w, c);
    }

    friend bool operator==(const Element& s, const Element& t) { return s.terms == t.terms; }
};

template <class K>
Element<K> add(const Element<K>& s, const Element<K>& t) {
    Element<K> out = s;
    for (const auto& [w, c] : t.terms) {
        auto it = out.terms.find(w);
        if (it == out.terms.end()) {
            out.terms.emplace(w, c);
        } else {
            it->second += c;
            if (it->second == K(0)) out.terms.erase(it);
        }
    }
    return out;
}

template <class K>
Element<K> scale(const K& c, const Element<K>& s) {
    Element<K> out;
    if (c == K(0)) return out;
    for (const auto& [w, k] : s.terms) out.terms.emplace(w, c * k);
    return out;
}

template <class K>
Element<K> multiply(const Params& p, const Element<K>& s, const Element<K>& t) {
    Element<K> out;
    for (const auto& [w1, c1] : s.terms)
        for (const auto& [w2, c2] : t.terms) {
            std::string w = w1 + w2;
            if (!valid_word(p, w)) continue; // a run of y's crossed the bound
            K c = c1 * c2;
            auto it = out.terms.find(w);
            if (it == out.terms.end()) {
                out.terms.emplace(std::move(w), std::move(c));
            } else {
                it->second += c;
                if (it->second == K(0)) out.terms.erase(it);
            }
        }
    return out;
}

// u_j = x y^{j-1} + y x y^{j-2} + ... + y^{j-1} x, one x sliding through
// j - 1 y's. These generate the free subalgebra.
template <class K = Rat>
Element<K> u(const Params& p, int j) {
    validate(p);
    if (j < 1 || j > p.r + 1) throw std::invalid_argument("u: index must lie in 1..r+1");
    Element<K> e;
    for (int i = 1; i <= j; ++i) {
        std::string w = std::string(static_cast<size_t>(i - 1), 'y') + "x" +
                        std::string(static_cast<size_t>(j - i), 'y');
        e = add(e, Element<K>::monomial(p, w, K(1)));
    }
    return e;
}

// A word basis of one degree with positions, so homogeneous elements become
// coordinate vectors for the linear-algebra kernel.
struct DegreeIndex {
    int degree = 0;
    std::vector<std::string> words;
    std::map<std::string, std::size_t> pos;
};

inline DegreeIndex degree_index(const Params& p, int n) {
    DegreeIndex ix;
    ix.degree = n;
    ix.words = basis(p, n);
    for (std::size_t k = 0; k < ix.words.size(); ++k) ix.pos.emplace(ix.words[k], k);
    return ix;
}

template <class K>
std::vector<K> to_vector(const DegreeIndex& ix, const Element<K>& e) {
    std::vector<K> v(ix.words.size(), K(0));
    for (const auto& [w, c] : e.terms) {
        auto it = ix.pos.find(w);
        if (it == ix.pos.end())
            throw std::invalid_argument("to_vector: word " + w + " is not in degree " +
                                        std::to_string(ix.degree));
        v[it->second] = c;
    }
    return v;
}

// A subspace of one graded slice, carried as an echelonized row space over
// that degree's word basis; dimensions and membership are exact.
template <class K = Rat>
struct GradedSubspace {
    DegreeIndex index;
    RowSpace<K> space;

    GradedSubspace(const Params& p, int n) : index(degree_index(p, n)), space(index.words.size()) {}

    bool insert(const Element<K>& e) { return space.insert(to_vector(index, e)); }
    bool contains(const Element<K>& e) const { return space.contains(to_vector(index, e)); }
    std::size_t dim() const { return space.dim(); }
};

namespace detail {

inline void guard_dim(const Params& p, int N, std::size_t max_dim) {
    Int width = b(p, N);
    if (width > Int(max_dim))
        throw resource_limit_error("wordalg: degree " + std::to_string(N) + " has " +
                                   int_str(width) + " basis words, above the bound " +
                                   std::to_string(max_dim));
}

template <class K>
void grow_products(const Params& p, int N, int deg, const Element<K>& prod,
                   const std::vector<Element<K>>& gens,
                   std::vector<std::vector<Element<K>>>& by_degree) {
    by_degree[static_cast<size_t>(deg)].push_back(prod);
    for (int j = 1; j <= p.r + 1 && deg + j <= N; ++j)
        grow_products(p, N, deg + j, multiply(p, prod, gens[static_cast<size_t>(j)]), gens,
                      by_degree);
}

} // namespace detail

// Every product of u generators of total degree <= N, grouped by degree.
// Degree 0 holds the empty product. The list in degree n has one entry per
// composition of n into parts of size at most r+1.
template <class K = Rat>
std::vector<std::vector<Element<K>>> u_products(const Params& p, int N) {
    validate(p);
    if (N < 0) throw std::invalid_argument("u_products: N must be >= 0");
    std::vector<Element<K>> gens(static_cast<size_t>(p.r) + 2);
    for (int j = 1; j <= p.r + 1; ++j) gens[static_cast<size_t>(j)] = u<K>(p, j);
    std::vector<std::vector<Element<K>>> by_degree(static_cast<size_t>(N) + 1);
    detail::grow_products(p, N, 0, Element<K>::monomial(p, "", K(1)), gens, by_degree);
    return by_degree;
}

struct DimPair {
    Int computed;  // rank of the span of all u products of this degree
    Int predicted; // series coefficient a_n
};

// Span all products of u generators degree by degree and compare the ranks
// with the series prediction. Agreement down the table is the finite shadow
// of the generators being free.
inline std::vector<DimPair> subalgebra_dims(const Params& p, int N, std::size_t max_dim = 5000) {
    validate(p);
    if (N < 0) throw std::invalid_argument("subalgebra_dims: N must be >= 0");
    detail::guard_dim(p, N, max_dim);
    auto prods = u_products<Rat>(p, N);
    std::vector<DimPair> out;
    out.reserve(static_cast<size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
        GradedSubspace<Rat> span(p, n);
        for (const auto& e : prods[static_cast<size_t>(n)]) span.insert(e);
        out.push_back({Int(span.dim()), a(p, n)});
    }
    return out;
}

// Check dim (sum_i A y^i)_n = b_n for all n <= N as an actual span: the
// y-power translates of the subalgebra fill each degree exactly once.
inline bool freeness_shadow(const Params& p, int N, std::size_t max_dim = 5000) {
    validate(p);
    if (N < 0) throw std::invalid_argument("freeness_shadow: N must be >= 0");
    detail::guard_dim(p, N, max_dim);
    auto prods = u_products<Rat>(p, N);
    for (int n = 0; n <= N; ++n) {
        GradedSubspace<Rat> span(p, n);
        for (int i = 0; i <= p.r && i <= n; ++i) {
            auto ypow = Element<Rat>::monomial(p, std::string(static_cast<size_t>(i), 'y'));
            for (const auto& e : prods[static_cast<size_t>(n - i)])
                span.insert(multiply(p, e, ypow));
        }
        if (Int(span.dim()) != b(p, n)) return false;
    }
    return true;
}

struct IdealDims {
    Int dim_xideal;     // degree-n slice of the two-sided ideal generated by x
    Int dim_usubmodule; // degree-n slice of the left module on right u multiples
};

// Both spans are computed honestly and must agree: words containing an x on
// one side, right multiples w * u_j on the other.
inline std::vector<IdealDims> left_ideal_dims(const Params& p, int N, std::size_t max_dim = 5000) {
    validate(p);
    if (N < 0) throw std::invalid_argument("left_ideal_dims: N must be >= 0");
    detail::guard_dim(p, N, max_dim);
    std::vector<IdealDims> out;
    out.reserve(static_cast<size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
        GradedSubspace<Rat> xideal(p, n);
        for (int k = 0; k + 1 <= n; ++k)
            for (const auto& w1 : basis(p, k))
                for (const auto& w2 : basis(p, n - 1 - k)) {
                    std::string w = w1 + "x" + w2;
                    if (valid_word(p, w)) xideal.insert(Element<Rat>::monomial(p, w));
                }
        GradedSubspace<Rat> umod(p, n);
        for (int j = 1; j <= p.r + 1 && j <= n; ++j) {
            auto uj = u<Rat>(p, j);
            for (const auto& w : basis(p, n - j))
                umod.insert(multiply(p, Element<Rat>::monomial(p, w), uj));
        }
        out.push_back({Int(xideal.dim()), Int(umod.dim())});
    }
    return out;
}

// (1 - t - ... - t^{r+1}) * (sum_{n<=N} b_n t^n) = 1 + t + ... + t^r
// as an exact polynomial identity modulo t^{N+1}.
inline bool hilbert_identity(const Params& p, int N) {
    validate(p);
    if (N < 0) throw std::invalid_argument("hilbert_identity: N must be >= 0");
    std::vector<Int> bs(static_cast<size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) bs[static_cast<size_t>(n)] = b(p, n);
    std::vector<Int> lhs(static_cast<size_t>(N) + 1, 0);
    for (int n = 0; n <= N; ++n) {
        lhs[static_cast<size_t>(n)] += bs[static_cast<size_t>(n)];
        for (int i = 1; i <= p.r + 1; ++i)
            if (n + i <= N) lhs[static_cast<size_t>(n + i)] -= bs[static_cast<size_t>(n)];
    }
    for (int n = 0; n <= N; ++n) {
        Int want = (n <= p.r) ? 1 : 0;
        if (lhs[static_cast<size_t>(n)] != want) return false;
    }
    return true;
}

// Index of the block y^i x B_{n-i-1} containing w, read off as the leading
// y count. Complete only once n > r: below that the pure-y word escapes
// every block, so those degrees are rejected.
inline int block_decompose(const Params& p, int n, const std::string& w) {
    validate(p);
    if (n <= p.r)
        throw std::invalid_argument("block_decompose: the blocks only cover degrees above r");
    if (static_cast<int>(w.size()) != n || !valid_word(p, w))
        throw std::invalid_argument("block_decompose: not a valid word of the stated degree");
    int i = 0;
    while (i < static_cast<int>(w.size()) && w[static_cast<size_t>(i)] == 'y') ++i;
    return i;
}

} // namespace afc::alg
