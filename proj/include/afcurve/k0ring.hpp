#pragma once

// Exact arithmetic in Z[alpha], where alpha is the unique root in (1, 2) of
// t^{r+1} = t^r + ... + t + 1. Since the constant term of the minimal
// polynomial is a unit, alpha is invertible inside the ring, so the whole
// Laurent calculus of shift classes lives here: signs are decided by
// bisecting a rational bracket around the root, never by floating point.
// On top of the ring sit the transition matrix with its eigenvector, the
// direct-limit embedding, greedy digit expansions with bounded-run digit
// strings, positive-class realization, and the asymptotic growth check.

#include "common.hpp"
#include "matrix.hpp"
#include "wordalg.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace afc::k0 {

// An element sum coords[i] * alpha^i. The powers 1, alpha, ..., alpha^r are
// a Z-basis, so the representation is canonical and equality is coordinate
// equality.
struct ZAlpha {
    int r = 1;
    std::vector<Int> coords;

    friend bool operator==(const ZAlpha& a, const ZAlpha& b) {
        return a.r == b.r && a.coords == b.coords;
    }
};

inline ZAlpha make_zalpha(const alg::Params& p, std::vector<Int> coords) {
    alg::validate(p);
    if (coords.size() != static_cast<std::size_t>(p.r) + 1)
        throw std::invalid_argument("make_zalpha: need r+1 coordinates");
    return {p.r, std::move(coords)};
}

inline ZAlpha za_zero(const alg::Params& p) {
    return make_zalpha(p, std::vector<Int>(static_cast<std::size_t>(p.r) + 1, Int(0)));
}

inline ZAlpha za_int(const alg::Params& p, const Int& n) {
    auto x = za_zero(p);
    x.coords[0] = n;
    return x;
}

inline ZAlpha za_one(const alg::Params& p) { return za_int(p, 1); }

inline ZAlpha za_alpha(const alg::Params& p) {
    auto x = za_zero(p);
    x.coords[1] = 1;
    return x;
}

inline bool is_zero(const ZAlpha& x) {
    for (const auto& c : x.coords)
        if (c != 0) return false;
    return true;
}

namespace detail {
inline void require_same_ring(const ZAlpha& a, const ZAlpha& b) {
    if (a.r != b.r) throw std::invalid_argument("ZAlpha: mixed rings");
}
} // namespace detail

inline ZAlpha operator+(const ZAlpha& a, const ZAlpha& b) {
    detail::require_same_ring(a, b);
    ZAlpha out = a;
    for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
    return out;
}

inline ZAlpha operator-(const ZAlpha& a) {
    ZAlpha out = a;
    for (auto& c : out.coords) c = -c;
    return out;
}

inline ZAlpha operator-(const ZAlpha& a, const ZAlpha& b) { return a + (-b); }

inline ZAlpha operator*(const Int& n, const ZAlpha& a) {
    ZAlpha out = a;
    for (auto& c : out.coords) c *= n;
    return out;
}

// alpha * x: shift coordinates up and fold the overflow back in through
// alpha^{r+1} = alpha^r + ... + 1.
inline ZAlpha mul_by_alpha(const ZAlpha& x) {
    const auto& c = x.coords;
    const std::size_t n = c.size();
    std::vector<Int> out(n);
    out[0] = c[n - 1];
    for (std::size_t i = 1; i < n; ++i) out[i] = c[i - 1] + c[n - 1];
    return {x.r, std::move(out)};
}

// alpha^{-1} * x, using alpha^{-1} = alpha^r - alpha^{r-1} - ... - 1.
inline ZAlpha mul_by_alpha_inv(const ZAlpha& x) {
    const auto& c = x.coords;
    const std::size_t n = c.size();
    std::vector<Int> out(n);
    for (std::size_t i = 0; i + 1 < n; ++i) out[i] = c[i + 1] - c[0];
    out[n - 1] = c[0];
    return {x.r, std::move(out)};
}

inline ZAlpha operator*(const ZAlpha& a, const ZAlpha& b) {
    detail::require_same_ring(a, b);
    const int r = a.r;
    // convolve to degree 2r, then fold top coefficients down one at a time
    std::vector<Int> conv(2 * static_cast<std::size_t>(r) + 1, Int(0));
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        for (std::size_t j = 0; j < b.coords.size(); ++j) conv[i + j] += a.coords[i] * b.coords[j];
    for (std::size_t e = conv.size(); e-- > static_cast<std::size_t>(r) + 1;) {
        Int c = conv[e];
        if (c == 0) continue;
        conv[e] = 0;
        for (std::size_t k = 1; k <= static_cast<std::size_t>(r) + 1; ++k) conv[e - k] += c;
    }
    conv.resize(static_cast<std::size_t>(r) + 1);
    return {r, std::move(conv)};
}

inline ZAlpha za_pow_alpha(const alg::Params& p, int n) {
    auto x = za_one(p);
    for (int k = 0; k < (n >= 0 ? n : -n); ++k)
        x = n >= 0 ? mul_by_alpha(x) : mul_by_alpha_inv(x);
    return x;
}

// A rational bracket around the root, kept with the minimal polynomial
// negative at lo and positive at hi.
struct AlphaInterval {
    Rat lo, hi;
};

inline Rat min_poly_at(int r, const Rat& t) {
    Rat m = pow_rat(t, static_cast<unsigned>(r) + 1);
    Rat pw = 1;
    for (int i = 0; i <= r; ++i) {
        m -= pw;
        pw *= t;
    }
    return m;
}

namespace detail {

// One bracket per ring, confined to the calling thread so refinements are
// monotone and concurrent readers never see it widen.
inline AlphaInterval& alpha_memo(int r) {
    thread_local std::map<int, AlphaInterval> memo;
    auto it = memo.find(r);
    if (it == memo.end()) {
        AlphaInterval init{Rat(3, 2), Rat(2)};
        if (!(min_poly_at(r, init.lo) < 0)) init = {Rat(1), Rat(2)};
        it = memo.emplace(r, init).first;
    }
    return it->second;
}

inline void refine(int r, AlphaInterval& iv) {
    Rat mid = (iv.lo + iv.hi) / 2;
    Rat v = min_poly_at(r, mid);
    if (v == 0) throw std::logic_error("alpha bracket: hit the root at a rational point");
    (v < 0 ? iv.lo : iv.hi) = mid;
}

// Enclosure of the value of x over the bracket; powers of alpha are
// monotone since the bracket sits inside (0, inf).
inline std::pair<Rat, Rat> value_bounds(const ZAlpha& x, const AlphaInterval& iv) {
    Rat lo = 0, hi = 0, plo = 1, phi = 1;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        const Int& c = x.coords[i];
        if (c > 0) {
            lo += Rat(c) * plo;
            hi += Rat(c) * phi;
        } else if (c < 0) {
            lo += Rat(c) * phi;
            hi += Rat(c) * plo;
        }
        plo *= iv.lo;
        phi *= iv.hi;
    }
    return {lo, hi};
}

} // namespace detail

inline AlphaInterval alpha_bracket(const alg::Params& p) {
    alg::validate(p);
    return detail::alpha_memo(p.r);
}

// Exact sign. A nonzero element with any higher coordinate set has an
// irrational, hence nonzero, value, so bisection must eventually separate
// the enclosure from zero.
inline int sign(const ZAlpha& x) {
    bool higher = false;
    for (std::size_t i = 1; i < x.coords.size(); ++i)
        if (x.coords[i] != 0) higher = true;
    if (!higher) return x.coords[0] == 0 ? 0 : (x.coords[0] > 0 ? 1 : -1);
    auto& iv = detail::alpha_memo(x.r);
    for (int k = 0; k < 100000; ++k) {
        auto [lo, hi] = detail::value_bounds(x, iv);
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        detail::refine(x.r, iv);
    }
    throw resource_limit_error("sign: bisection failed to separate the value from zero");
}

// Decimal rendering to `sig` significant digits, refined until both bracket
// endpoints round identically. Irrational values never sit on a rounding
// boundary, so this terminates; exact integers short-circuit.
inline std::string decimal_approx(const ZAlpha& x, int sig = 30) {
    bool higher = false;
    for (std::size_t i = 1; i < x.coords.size(); ++i)
        if (x.coords[i] != 0) higher = true;
    if (!higher) return rat_decimal(Rat(x.coords[0]), sig);
    auto& iv = detail::alpha_memo(x.r);
    for (int k = 0; k < 200000; ++k) {
        auto [lo, hi] = detail::value_bounds(x, iv);
        std::string a = rat_decimal(lo, sig), b = rat_decimal(hi, sig);
        if (a == b) return a;
        detail::refine(x.r, iv);
    }
    throw resource_limit_error("decimal_approx: bisection failed to settle the digits");
}

// The class of the shift O(n). The convention sends O(1) to alpha, so O(n)
// goes to alpha^n; the opposite convention is available for experiments.
enum class TwistConvention { alpha_power, alpha_inverse };

inline ZAlpha class_of_shift(const alg::Params& p, int n,
                             TwistConvention conv = TwistConvention::alpha_power) {
    return za_pow_alpha(p, conv == TwistConvention::alpha_power ? n : -n);
}

// Finitely supported integer Laurent polynomials in the variable t, which
// evaluation sends to alpha^{-1}. Kept normalized: no zero coefficients.
using LaurentPoly = std::map<int, Int>;

inline LaurentPoly laurent_normalize(LaurentPoly a) {
    for (auto it = a.begin(); it != a.end();)
        it = (it->second == 0) ? a.erase(it) : std::next(it);
    return a;
}

inline LaurentPoly laurent_add(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = a;
    for (const auto& [e, c] : b) out[e] += c;
    return laurent_normalize(std::move(out));
}

inline LaurentPoly laurent_neg(const LaurentPoly& a) {
    LaurentPoly out;
    for (const auto& [e, c] : a) out[e] = -c;
    return out;
}

inline LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) out[ea + eb] += ca * cb;
    return laurent_normalize(std::move(out));
}

inline ZAlpha eval_laurent(const alg::Params& p, const LaurentPoly& poly) {
    auto out = za_zero(p);
    for (const auto& [e, c] : poly)
        if (c != 0) out = out + c * class_of_shift(p, -e);
    return out;
}

// Fibonacci numbers with f_0 = f_1 = 1.
inline Int fib(int n) {
    if (n < 0) throw std::invalid_argument("fib: negative index");
    Int a = 1, b = 1;
    for (int k = 0; k < n; ++k) {
        Int c = a + b;
        a = b;
        b = c;
    }
    return a;
}

// Left multiplication by alpha on coordinates: first row all ones, identity
// subdiagonal. Applied to a window (b_n, ..., b_{n-r}) it advances the
// window one step.
inline Matrix<Int> transition_matrix(const alg::Params& p) {
    alg::validate(p);
    const std::size_t n = static_cast<std::size_t>(p.r) + 1;
    Matrix<Int> M(n, n);
    for (std::size_t j = 0; j < n; ++j) M.at(0, j) = 1;
    for (std::size_t i = 1; i < n; ++i) M.at(i, i - 1) = 1;
    return M;
}

// The row vector v with v_i = alpha^r + ... + alpha^i (so v_0 = alpha^{r+1});
// checked on construction to be a left alpha-eigenvector of the transition
// matrix.
inline std::vector<ZAlpha> eigvec_v(const alg::Params& p) {
    alg::validate(p);
    std::vector<ZAlpha> v;
    for (int i = 0; i <= p.r; ++i) {
        auto entry = za_zero(p);
        for (int j = i; j <= p.r; ++j) entry = entry + za_pow_alpha(p, j);
        if (i == 0) entry = za_pow_alpha(p, p.r + 1);
        v.push_back(entry);
    }
    auto M = transition_matrix(p);
    for (int j = 0; j <= p.r; ++j) {
        auto entry = za_zero(p);
        for (int i = 0; i <= p.r; ++i)
            entry = entry + M.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) *
                                v[static_cast<std::size_t>(i)];
        if (!(entry == mul_by_alpha(v[static_cast<std::size_t>(j)])))
            throw std::logic_error("eigvec_v: eigenvector identity failed");
    }
    return v;
}

// The level-n vertical map of the direct limit: x maps to alpha^{-n} (v.x).
// Compatibility limit_embed(n+1, Mx) = limit_embed(n, x) follows from
// vM = alpha v and makes this well defined on the limit.
inline ZAlpha limit_embed(const alg::Params& p, int n, const std::vector<Int>& x) {
    alg::validate(p);
    if (n < p.r) throw std::invalid_argument("limit_embed: level below r");
    if (x.size() != static_cast<std::size_t>(p.r) + 1)
        throw std::invalid_argument("limit_embed: need r+1 coordinates");
    auto v = eigvec_v(p);
    auto dot = za_zero(p);
    for (std::size_t i = 0; i < x.size(); ++i) dot = dot + x[i] * v[i];
    return za_pow_alpha(p, -n) * dot;
}

// Greedy base-alpha expansion of a nonnegative element. Since alpha lies in
// (1, 2) every digit is 0 or 1; the expansion is exact for ring elements
// and the digit string never carries r+1 consecutive ones. The depth cap
// bounds the number of digit positions scanned, and hitting it is an error:
// the expansion is supposed to terminate, so running past the cap means a
// bug, not a long tail.
inline std::vector<std::pair<int, int>> digit_expand(const alg::Params& p, const ZAlpha& g,
                                                     int max_depth = 256) {
    alg::validate(p);
    if (g.r != p.r) throw std::invalid_argument("digit_expand: mixed rings");
    if (max_depth < 1) throw std::invalid_argument("digit_expand: depth cap must be positive");
    int s = sign(g);
    if (s < 0) throw std::domain_error("digit_expand: negative input");
    std::vector<std::pair<int, int>> out;
    if (s == 0) return out;
    int N = 0;
    if (sign(g - za_one(p)) >= 0) {
        while (sign(g - za_pow_alpha(p, N + 1)) >= 0) {
            ++N;
            if (N > max_depth)
                throw depth_exceeded_error("digit_expand: leading exponent beyond the cap");
        }
    } else {
        while (sign(g - za_pow_alpha(p, N)) < 0) {
            --N;
            if (-N > max_depth)
                throw depth_exceeded_error("digit_expand: leading exponent beyond the cap");
        }
    }
    ZAlpha rem = g;
    for (int i = N; !is_zero(rem); --i) {
        if (N - i >= max_depth)
            throw depth_exceeded_error("digit_expand: scanned " + std::to_string(max_depth) +
                                       " digit positions without terminating");
        auto pw = za_pow_alpha(p, i);
        if (sign(rem - pw) >= 0) {
            out.emplace_back(i, 1);
            rem = rem - pw;
        }
    }
    return out;
}

// A finite direct sum of shifts, recorded as exponent -> multiplicity.
using ShiftMultiset = std::map<int, Int>;

inline ZAlpha class_of(const alg::Params& p, const ShiftMultiset& ms) {
    auto out = za_zero(p);
    for (const auto& [n, a] : ms) {
        if (a < 0) throw std::invalid_argument("class_of: negative multiplicity");
        out = out + a * class_of_shift(p, n);
    }
    return out;
}

// Every nonnegative class is the class of an actual direct sum of shifts:
// read the sum off the digit expansion.
inline ShiftMultiset realize_class(const alg::Params& p, const ZAlpha& g, int max_depth = 256) {
    ShiftMultiset out;
    for (const auto& [e, d] : digit_expand(p, g, max_depth)) out[e] = Int(d);
    return out;
}

enum class Order { less, equal, greater };

struct CompareResult {
    Order order = Order::equal;
    ShiftMultiset complement;
};

// Compare two classes given by Laurent polynomials; when the first is no
// larger, produce a direct sum of shifts whose class is exactly the
// difference, the complement that cancellation promises.
inline CompareResult cancellation_compare(const alg::Params& p, const LaurentPoly& pm,
                                          const LaurentPoly& pn, int max_depth = 256) {
    auto diff = eval_laurent(p, pn) - eval_laurent(p, pm);
    int s = sign(diff);
    if (s < 0) return {Order::greater, {}};
    if (s == 0) return {Order::equal, {}};
    return {Order::less, realize_class(p, diff, max_depth)};
}

// Check |b_n alpha^{-n} - L| < tol for the limit constant
// L = alpha^{r+2} / (alpha^r + 2 alpha^{r-1} + ... + (r+1)). Clearing the
// positive denominator turns the bound into two sign conditions inside the
// ring, so the verdict is exact.
inline bool growth_limit_check(const alg::Params& p, int n = 60, Rat tol = Rat(1, 1000000)) {
    alg::validate(p);
    if (n < 0) throw std::invalid_argument("growth_limit_check: negative index");
    if (!(tol > 0)) throw std::invalid_argument("growth_limit_check: tolerance must be positive");
    ZAlpha approx = alg::b(p, n) * za_pow_alpha(p, -n);
    auto D = za_zero(p);
    for (int i = 0; i <= p.r; ++i) D = D + Int(i + 1) * za_pow_alpha(p, p.r - i);
    ZAlpha W = approx * D - za_pow_alpha(p, p.r + 2); // (b_n alpha^{-n} - L) * D
    Int pt = boost::multiprecision::numerator(tol);
    Int qt = boost::multiprecision::denominator(tol);
    return sign(pt * D - qt * W) > 0 && sign(pt * D + qt * W) > 0;
}

} // namespace afc::k0
