#pragma once

// Sequence spaces X(n): binary strings with at most r consecutive 1s, their
// block partition by trailing-one count, truncation, the counting sequence
// c_n, and eventually periodic infinite sequences with shift, tail
// equivalence, and the 2^{-n} metric.

#include "common.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace afc::seq {

struct Params {
    int r = 1;
};

inline void validate(const Params& p) {
    if (p.r < 1) throw std::invalid_argument("seqspace: r must be >= 1");
}

// Digits are the characters '0' and '1'.
using FiniteSeq = std::string;

inline bool valid_finite(const Params& p, const FiniteSeq& s) {
    int run = 0;
    for (char ch : s) {
        if (ch != '0' && ch != '1') return false;
        run = (ch == '1') ? run + 1 : 0;
        if (run > p.r) return false;
    }
    return true;
}

// X(n): all valid strings of length n+1, lexicographic order. X(-1) = {""}.
inline std::vector<FiniteSeq> enumerate_Xn(const Params& p, int n) {
    validate(p);
    if (n < -1) throw std::invalid_argument("enumerate_Xn: n must be >= -1");
    std::vector<FiniteSeq> cur{""};
    for (int len = 0; len <= n; ++len) {
        std::vector<FiniteSeq> next;
        next.reserve(cur.size() * 2);
        for (const auto& s : cur) {
            // '0' first keeps lexicographic order at every length.
            next.push_back(s + '0');
            int run = 0;
            for (auto it = s.rbegin(); it != s.rend() && *it == '1'; ++it) ++run;
            if (run < p.r) next.push_back(s + '1');
        }
        cur = std::move(next);
    }
    return cur;
}

// Number of trailing 1s; the all-ones string of length n+1 yields n+1,
// which is exactly the top block X(n)_{n+1}.
inline int block_index(const FiniteSeq& s) {
    if (s.empty()) throw std::invalid_argument("block_index: empty sequence");
    int i = 0;
    for (auto it = s.rbegin(); it != s.rend() && *it == '1'; ++it) ++i;
    return i;
}

inline FiniteSeq truncate(const FiniteSeq& s) {
    if (s.empty()) throw std::invalid_argument("truncate: empty sequence");
    return s.substr(0, s.size() - 1);
}

// c_{-1} = 1, c_i = 0 for i <= -2, c_n = c_{n-1} + ... + c_{n-r-1}.
inline Int c(const Params& p, int n) {
    validate(p);
    if (n <= -2) return 0;
    if (n == -1) return 1;
    std::vector<Int> v(static_cast<size_t>(n) + 2, 0); // v[k] = c_{k-1}
    v[0] = 1;
    for (int m = 0; m <= n; ++m) {
        Int s = 0;
        for (int i = 1; i <= p.r + 1; ++i) {
            int idx = m + 1 - i;
            if (idx >= 0) s += v[static_cast<size_t>(idx)];
        }
        v[static_cast<size_t>(m) + 1] = s;
    }
    return v[static_cast<size_t>(n) + 1];
}

// Eventually periodic sequence pre . cyc cyc cyc ... in canonical form
// (minimal period, then minimal preperiod). Construct via make_eventual.
struct EventualSeq {
    Params params;
    std::string pre;
    std::string cyc;

    friend bool operator==(const EventualSeq& a, const EventualSeq& b) {
        return a.params.r == b.params.r && a.pre == b.pre && a.cyc == b.cyc;
    }
};

namespace detail {
inline std::string primitive_root(std::string cyc) {
    const size_t n = cyc.size();
    for (size_t d = 1; d <= n; ++d) {
        if (n % d) continue;
        bool ok = true;
        for (size_t i = d; i < n && ok; ++i) ok = (cyc[i] == cyc[i % d]);
        if (ok) return cyc.substr(0, d);
    }
    return cyc;
}
} // namespace detail

inline EventualSeq make_eventual(const Params& p, std::string pre, std::string cyc) {
    validate(p);
    if (cyc.empty()) throw std::invalid_argument("EventualSeq: cycle must be nonempty");
    for (char ch : pre + cyc)
        if (ch != '0' && ch != '1') throw std::invalid_argument("EventualSeq: digits must be 0/1");
    if (cyc.find('0') == std::string::npos)
        throw std::invalid_argument("EventualSeq: all-ones cycle has an infinite run of 1s");
    cyc = detail::primitive_root(std::move(cyc));
    // Absorb matching trailing digits of the preperiod into the cycle phase.
    while (!pre.empty() && pre.back() == cyc.back()) {
        pre.pop_back();
        cyc = cyc.back() + cyc.substr(0, cyc.size() - 1);
    }
    // Validity of the infinite word is visible on pre + cyc + cyc.
    if (!valid_finite(p, pre + cyc + cyc))
        throw std::invalid_argument("EventualSeq: expansion contains a run of r+1 ones");
    return EventualSeq{p, std::move(pre), std::move(cyc)};
}

inline int digit(const EventualSeq& z, long i) {
    if (i < 0) throw std::invalid_argument("digit: negative index");
    const long pn = static_cast<long>(z.pre.size());
    char ch = (i < pn) ? z.pre[static_cast<size_t>(i)]
                       : z.cyc[static_cast<size_t>((i - pn) % static_cast<long>(z.cyc.size()))];
    return ch - '0';
}

inline EventualSeq shift(const EventualSeq& z) {
    if (!z.pre.empty()) return make_eventual(z.params, z.pre.substr(1), z.cyc);
    return make_eventual(z.params, "", z.cyc.substr(1) + z.cyc[0]);
}

inline bool tail_equal(const EventualSeq& z, const EventualSeq& w) {
    if (z.params.r != w.params.r) throw std::invalid_argument("tail_equal: params differ");
    const long start = static_cast<long>(std::max(z.pre.size(), w.pre.size()));
    const long window = static_cast<long>(std::lcm(z.cyc.size(), w.cyc.size()));
    for (long i = start; i < start + window; ++i)
        if (digit(z, i) != digit(w, i)) return false;
    return true;
}

// Exact partial sum of d(z,z') = sum 2^{-n} |z_n - z'_n| up to index N,
// plus the coarse tail bound 2^{1-N}.
inline std::pair<Rat, Rat> metric_partial(const EventualSeq& z, const EventualSeq& w, int N) {
    if (N < 0) throw std::invalid_argument("metric_partial: N must be >= 0");
    if (z.params.r != w.params.r) throw std::invalid_argument("metric_partial: params differ");
    Rat value = 0;
    for (int n = 0; n <= N; ++n)
        if (digit(z, n) != digit(w, n)) value += pow_rat(Rat(1, 2), n);
    return {value, pow_rat(Rat(1, 2), N - 1)};
}

inline bool is_cartwheel_class(const EventualSeq& z) {
    return tail_equal(z, make_eventual(z.params, "", "0"));
}

} // namespace afc::seq
