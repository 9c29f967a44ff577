#pragma once

// Exact plane geometry for the kite and dart system behind the r = 1
// sequence space. Coordinates live in Z[zeta] for zeta a primitive 10th
// root of unity, written on the basis {1, zeta, zeta^2, zeta^3}. The two
// triangle families (acute with apex angle pi/5, obtuse with apex angle
// 3 pi/5) carry colored vertices; the obtuse ones are mirror halves of
// darts, the acute ones mirror halves of kites. Levels alternate between
// the two shape parities, a large tile splits into a large and a small
// child, a small tile relabels to a large one, and the kind read off
// along a nested chain of tiles is exactly a digit string with no two
// consecutive ones. Everything here is rational arithmetic: sign tests
// reduce to integer comparisons against sqrt(5), and the SVG writer
// turns exact values into fixed 12 significant digit decimals, so output
// bytes are reproducible across runs and platforms.

#include "common.hpp"
#include "seqspace.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace afc::tile {

// ---------------------------------------------------------------------
// the real quadratic subfield, numbers a + b*tau with tau the golden ratio

struct RealQ {
    Rat a, b;
    friend bool operator==(const RealQ&, const RealQ&) = default;
};

inline RealQ operator+(const RealQ& x, const RealQ& y) { return {x.a + y.a, x.b + y.b}; }
inline RealQ operator-(const RealQ& x, const RealQ& y) { return {x.a - y.a, x.b - y.b}; }
inline RealQ operator-(const RealQ& x) { return {-x.a, -x.b}; }
inline RealQ operator*(const RealQ& x, const RealQ& y) {
    // tau^2 = tau + 1
    return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
}
inline RealQ operator*(const RealQ& x, const Rat& s) { return {x.a * s, x.b * s}; }

namespace detail {

inline Int floordiv(const Int& n, const Int& d) {
    Int q = n / d, r = n % d;
    if (r != 0 && (r < 0) != (d < 0)) --q;
    return q;
}

inline Int isqrt(const Int& n) { return boost::multiprecision::sqrt(n); }

// floor(10^k * (A + B*sqrt(5))) for rational A, B and any integer k
inline Int floor_scaled_sqrt5(const Rat& A, const Rat& B, int k) {
    const Rat ten = k >= 0 ? Rat(pow_int(10, static_cast<unsigned>(k)))
                           : Rat(1) / Rat(pow_int(10, static_cast<unsigned>(-k)));
    const Rat As = A * ten, Bs = B * ten;
    const Int P = numerator(As) * denominator(Bs);
    const Int Q = numerator(Bs) * denominator(As);
    const Int L = denominator(As) * denominator(Bs);
    if (Q == 0) return floordiv(P, L);
    const Int m = Q > 0 ? isqrt(5 * Q * Q) : -isqrt(5 * Q * Q) - 1;
    const Int k1 = floordiv(P + m, L), k2 = floordiv(P + m + 1, L);
    if (k1 == k2) return k1;
    // the open unit bracket straddles a multiple of L, compare exactly
    const Int D = k2 * L - P;
    bool greater;
    if (Q > 0 && D <= 0) greater = true;
    else if (Q < 0 && D >= 0) greater = false;
    else greater = Q > 0 ? 5 * Q * Q > D * D : 5 * Q * Q < D * D;
    return greater ? k2 : k1;
}

} // namespace detail

inline int sign(const RealQ& v) {
    // value is (a + b/2) + (b/2) sqrt(5)
    const Rat A = v.a + v.b / 2, B = v.b / 2;
    const int sa = A == 0 ? 0 : (A > 0 ? 1 : -1);
    const int sb = B == 0 ? 0 : (B > 0 ? 1 : -1);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    const Rat diff = A * A - 5 * B * B;
    if (diff == 0) return 0; // a = b = 0 is the only rational solution
    return (diff > 0) ? sa : sb;
}

inline RealQ abs(const RealQ& v) { return sign(v) < 0 ? -v : v; }

namespace detail {

// shared digit pipeline: F(k) must return floor(10^k * value) for a
// positive irrational value; renders `sig` significant digits in the
// same style as rat_decimal
template <class FloorFn>
std::string decimal_digits(FloorFn&& F, bool negative, int sig) {
    if (sig < 1) sig = 1;
    int e = 0;
    Int f0 = F(0);
    if (f0 >= 1) {
        e = static_cast<int>(int_str(f0).size()) - 1;
    } else {
        int k = 1;
        while (true) {
            if (F(k) >= 1) { e = -k; break; }
            if (++k > 400) throw std::logic_error("decimal_digits: value underflow");
        }
    }
    Int rounded = detail::floordiv(F(sig - e) + 5, 10);
    std::string ds = int_str(rounded);
    if (static_cast<int>(ds.size()) > sig) {
        ds.pop_back();
        ++e;
    }
    std::string out;
    if (negative) out += '-';
    if (e >= 0 && e < sig) {
        out += ds.substr(0, static_cast<size_t>(e) + 1);
        std::string frac = ds.substr(static_cast<size_t>(e) + 1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
    } else if (e < 0 && e >= -4) {
        out += "0.";
        out.append(static_cast<size_t>(-e - 1), '0');
        while (!ds.empty() && ds.back() == '0') ds.pop_back();
        out += ds;
    } else {
        out += ds.substr(0, 1);
        std::string frac = ds.substr(1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
        out += "e" + std::to_string(e);
    }
    return out;
}

} // namespace detail

// decimal form of a + b*tau to `sig` significant digits, round half up
inline std::string decimal(const RealQ& v, int sig = 12) {
    if (v.b == 0) return rat_decimal(v.a, sig);
    const int s = sign(v);
    const RealQ m = s < 0 ? -v : v;
    const Rat A = m.a + m.b / 2, B = m.b / 2;
    return detail::decimal_digits(
        [&](int k) { return detail::floor_scaled_sqrt5(A, B, k); }, s < 0, sig);
}

// decimal form of sin(pi/5) * (a + b*tau); these are the heights that
// appear as imaginary parts of cyclotomic integers
inline std::string decimal_height(const RealQ& g, int sig = 12) {
    const int s = sign(g);
    if (s == 0) return "0";
    const RealQ m = s < 0 ? -g : g;
    // square the value: sin^2(pi/5) = (3 - tau)/4 keeps us quadratic
    const RealQ sq = RealQ{Rat(3, 4), Rat(-1, 4)} * m * m;
    const Rat A = sq.a + sq.b / 2, B = sq.b / 2;
    return detail::decimal_digits(
        [&](int k) { return detail::isqrt(detail::floor_scaled_sqrt5(A, B, 2 * k)); }, s < 0,
        sig);
}

// ---------------------------------------------------------------------
// cyclotomic numbers c0 + c1 zeta + c2 zeta^2 + c3 zeta^3

struct Cyc {
    std::array<Rat, 4> c{};
    friend bool operator==(const Cyc&, const Cyc&) = default;
};

inline Cyc cyc(const Rat& r) { return Cyc{{r, Rat(0), Rat(0), Rat(0)}}; }

inline Cyc operator+(const Cyc& x, const Cyc& y) {
    Cyc out;
    for (size_t i = 0; i < 4; ++i) out.c[i] = x.c[i] + y.c[i];
    return out;
}

inline Cyc operator-(const Cyc& x, const Cyc& y) {
    Cyc out;
    for (size_t i = 0; i < 4; ++i) out.c[i] = x.c[i] - y.c[i];
    return out;
}

inline Cyc operator-(const Cyc& x) {
    Cyc out;
    for (size_t i = 0; i < 4; ++i) out.c[i] = -x.c[i];
    return out;
}

inline Cyc operator*(const Cyc& x, const Rat& s) {
    Cyc out;
    for (size_t i = 0; i < 4; ++i) out.c[i] = x.c[i] * s;
    return out;
}

inline Cyc operator*(const Cyc& x, const Cyc& y) {
    // raw product has degree up to 6; fold with zeta^5 = -1 and
    // zeta^4 = zeta^3 - zeta^2 + zeta - 1
    std::array<Rat, 7> raw{};
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) raw[i + j] += x.c[i] * y.c[j];
    for (size_t d = 6; d >= 5; --d) {
        raw[d - 5] -= raw[d];
        raw[d] = 0;
    }
    Cyc out{{raw[0], raw[1], raw[2], raw[3]}};
    const Rat& top = raw[4];
    out.c[0] -= top;
    out.c[1] += top;
    out.c[2] -= top;
    out.c[3] += top;
    return out;
}

inline Cyc zeta_pow(int k) {
    k %= 10;
    if (k < 0) k += 10;
    const bool flip = k >= 5;
    if (flip) k -= 5;
    Cyc out;
    if (k < 4) out.c[static_cast<size_t>(k)] = 1;
    else out = Cyc{{Rat(-1), Rat(1), Rat(-1), Rat(1)}};
    return flip ? -out : out;
}

inline Cyc conj(const Cyc& w) {
    // conj(zeta) = zeta^9 = -zeta^4
    return Cyc{{w.c[0] + w.c[1], -w.c[1], w.c[1] - w.c[3], -w.c[1] - w.c[2]}};
}

inline Cyc tau_cyc() { return Cyc{{Rat(1), Rat(0), Rat(1), Rat(-1)}}; }

// embed a + b*tau back into the cyclotomic ring
inline Cyc cyc_of(const RealQ& v) { return Cyc{{v.a + v.b, Rat(0), v.b, -v.b}}; }

// real part, exactly, as an element of the quadratic subfield
inline RealQ re_q(const Cyc& w) {
    return {w.c[0] + (w.c[3] - w.c[2]) / 2, (w.c[1] + w.c[2] - w.c[3]) / 2};
}

// imaginary part divided by sin(pi/5), again quadratic
inline RealQ im_q(const Cyc& w) { return {w.c[1], w.c[2] + w.c[3]}; }

inline bool is_real(const Cyc& w) { return w.c[1] == 0 && w.c[2] + w.c[3] == 0; }

inline int im_sign(const Cyc& w) { return sign(im_q(w)); }

inline RealQ dot_q(const Cyc& u, const Cyc& v) { return re_q(conj(u) * v); }
inline RealQ cross_q(const Cyc& u, const Cyc& v) { return im_q(conj(u) * v); }
inline RealQ norm_sq(const Cyc& u) { return re_q(conj(u) * u); }

inline int orient(const Cyc& p, const Cyc& q, const Cyc& r) {
    return sign(cross_q(q - p, r - p));
}

// tau^e in the quadratic subfield, e >= 0
inline RealQ tau_pow_q(int e) {
    if (e < 0) throw std::invalid_argument("tau_pow_q: negative exponent");
    Rat a = 1, b = 0;
    for (int i = 0; i < e; ++i) {
        Rat na = b, nb = a + b;
        a = na;
        b = nb;
    }
    return {a, b};
}

// coordinate strings (x, y) of a scaled point, for output layers
inline std::pair<std::string, std::string> xy_strings(const Cyc& w, const Rat& scale,
                                                      int sig = 12) {
    return {decimal(re_q(w) * scale, sig), decimal_height(im_q(w) * scale, sig)};
}

// ---------------------------------------------------------------------
// colored triangles

enum class Kind { large, small };
enum class Color { black, white };
enum class Chirality { left, right };

inline Color flip(Color c) { return c == Color::black ? Color::white : Color::black; }

// `match` is the base vertex wearing the apex color; the edge from apex
// to match is the mirror axis of the kite or dart the tile came from,
// and the only edge whose endpoints share a color. `other` carries the
// opposite color.
struct Triangle {
    Kind kind = Kind::large;
    int level = 0;
    Cyc apex, match, other;
    Color apex_color = Color::black;
    friend bool operator==(const Triangle&, const Triangle&) = default;
};

// shape parity: large tiles are acute exactly at even levels
inline bool acute(const Triangle& t) {
    return (t.kind == Kind::large) == (t.level % 2 == 0);
}

inline Chirality chirality(const Triangle& t) {
    const int s = orient(t.apex, t.match, t.other);
    if (s == 0) throw std::invalid_argument("chirality: degenerate triangle");
    return s > 0 ? Chirality::right : Chirality::left;
}

// expected squared leg and base lengths from kind and level alone
inline std::pair<RealQ, RealQ> expected_sq(const Triangle& t) {
    const int j = t.level / 2;
    if (acute(t)) return {tau_pow_q(2 * j + 2), tau_pow_q(2 * j)};
    if (t.level % 2 == 0) return {tau_pow_q(2 * j), tau_pow_q(2 * j + 2)};
    return {tau_pow_q(2 * j + 2), tau_pow_q(2 * j + 4)};
}

// twice the area divided by sin(pi/5), always a nonnegative quadratic value
inline RealQ area_factor(const Triangle& t) {
    return abs(cross_q(t.match - t.apex, t.other - t.apex));
}

// apex colors of freshly seeded tiles; the pattern repeats with period 4
// because two composition steps swap the roles and two more swap back
inline Color large_apex_color(int level) {
    const int m = ((level % 4) + 4) % 4;
    return (m == 0 || m == 1) ? Color::black : Color::white;
}

inline Color small_apex_color(int level) { return flip(large_apex_color(level + 1)); }

// ---------------------------------------------------------------------
// decomposition and its inverse

// One step down the hierarchy. A small tile relabels to the large tile
// of the level below; a large tile splits along the segment from the
// base point at distance base/tau off `match` (obtuse case) or from the
// leg point at distance leg/tau off the apex (acute case). The split
// point always wears the color opposite the parent apex. Children come
// back large first.
inline std::vector<Triangle> decompose(const Triangle& t) {
    if (t.level < 1) throw std::invalid_argument("decompose: level 0 tiles are atomic");
    const int k = t.level - 1;
    if (t.kind == Kind::small)
        return {Triangle{Kind::large, k, t.apex, t.match, t.other, t.apex_color}};
    const Cyc inv_tau = tau_cyc() - cyc(Rat(1)); // 1/tau = tau - 1
    if (acute(t)) {
        const Cyc w = t.apex + (t.match - t.apex) * inv_tau;
        return {Triangle{Kind::large, k, w, t.other, t.apex, flip(t.apex_color)},
                Triangle{Kind::small, k, t.other, w, t.match, flip(t.apex_color)}};
    }
    const Cyc f = t.match + (t.other - t.match) * inv_tau;
    return {Triangle{Kind::large, k, t.match, t.apex, f, t.apex_color},
            Triangle{Kind::small, k, f, t.other, t.apex, flip(t.apex_color)}};
}

// Reassemble the output of one decompose call. The candidate parent is
// reconstructed from the stored roles and then checked by decomposing it
// again, so success certifies exactness.
inline Triangle compose(const std::vector<Triangle>& kids) {
    Triangle parent;
    if (kids.size() == 1) {
        const Triangle& c = kids[0];
        if (c.kind != Kind::large) throw std::invalid_argument("compose: lone child not large");
        parent = Triangle{Kind::small, c.level + 1, c.apex, c.match, c.other, c.apex_color};
    } else if (kids.size() == 2) {
        const Triangle& l = kids[0];
        const Triangle& s = kids[1];
        if (l.kind != Kind::large || s.kind != Kind::small || l.level != s.level)
            throw std::invalid_argument("compose: expected a large and a small child");
        const int up = l.level + 1;
        if (up % 2 == 1)
            parent = Triangle{Kind::large, up, l.match, l.apex, s.match, l.apex_color};
        else
            parent = Triangle{Kind::large, up, l.other, s.other, l.match, flip(l.apex_color)};
    } else {
        throw std::invalid_argument("compose: takes one or two children");
    }
    if (decompose(parent) != kids) throw std::invalid_argument("compose: children do not fit");
    return parent;
}

// ---------------------------------------------------------------------
// prefix coded hierarchies

// Nested tiles for a digit prefix z_0 .. z_{n-1}: entry i is the level i
// tile, kind large for digit 0 and small for digit 1. The top tile sits
// in a canonical pose, base on the real axis starting at the origin,
// apex above, and each step down picks the unique child of the demanded
// kind.
inline std::vector<Triangle> chain_from_prefix(const std::string& prefix) {
    if (prefix.empty()) throw std::invalid_argument("chain_from_prefix: empty prefix");
    if (!seq::valid_finite(seq::Params{1}, prefix))
        throw std::invalid_argument("chain_from_prefix: not a digit string without 11");
    const int top_level = static_cast<int>(prefix.size()) - 1;
    const Kind top_kind = prefix.back() == '1' ? Kind::small : Kind::large;

    Triangle top;
    top.kind = top_kind;
    top.level = top_level;
    top.apex_color = top_kind == Kind::large ? large_apex_color(top_level)
                                             : small_apex_color(top_level);
    const bool top_acute = (top_kind == Kind::large) == (top_level % 2 == 0);
    const int j = top_level / 2;
    const int base_exp = top_acute ? j : (top_level % 2 == 0 ? j + 1 : j + 2);
    top.match = cyc(Rat(0));
    top.other = cyc_of(tau_pow_q(base_exp));
    const Cyc slope = top_acute ? tau_cyc() * zeta_pow(2)
                                : (tau_cyc() - cyc(Rat(1))) * zeta_pow(1);
    top.apex = top.other * slope;

    std::vector<Triangle> chain(prefix.size());
    chain[static_cast<size_t>(top_level)] = top;
    Triangle cur = top;
    for (int lvl = top_level - 1; lvl >= 0; --lvl) {
        const Kind want = prefix[static_cast<size_t>(lvl)] == '1' ? Kind::small : Kind::large;
        bool found = false;
        for (const auto& child : decompose(cur))
            if (child.kind == want) {
                cur = child;
                found = true;
                break;
            }
        if (!found) throw std::logic_error("chain_from_prefix: missing child kind");
        chain[static_cast<size_t>(lvl)] = cur;
    }
    return chain;
}

struct Patch {
    std::vector<Triangle> tiles;  // full level 0 decomposition of the top tile
    std::vector<Triangle> chain;  // chain[i] is the distinguished level i tile
    Cyc marked;                   // barycenter of chain[0]
};

inline Patch patch_from_prefix(const std::string& prefix, size_t max_tiles = 50000) {
    Patch out;
    out.chain = chain_from_prefix(prefix);
    out.marked = (out.chain[0].apex + out.chain[0].match + out.chain[0].other) * Rat(1, 3);

    std::vector<Triangle> stack{out.chain.back()};
    while (!stack.empty()) {
        Triangle t = stack.back();
        stack.pop_back();
        if (t.level == 0) {
            if (out.tiles.size() >= max_tiles)
                throw resource_limit_error("patch_from_prefix: tile budget exceeded");
            out.tiles.push_back(t);
            continue;
        }
        auto kids = decompose(t);
        // push in reverse so the large child is expanded first
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

enum class Loc { inside, boundary, outside };

inline Loc locate(const Cyc& p, const Triangle& t) {
    const int s1 = orient(t.apex, t.match, p);
    const int s2 = orient(t.match, t.other, p);
    const int s3 = orient(t.other, t.apex, p);
    if ((s1 > 0 && (s2 < 0 || s3 < 0)) || (s1 < 0 && (s2 > 0 || s3 > 0)) ||
        (s2 > 0 && s3 < 0) || (s2 < 0 && s3 > 0))
        return Loc::outside;
    if (s1 == 0 || s2 == 0 || s3 == 0) return Loc::boundary;
    return Loc::inside;
}

// Digits of the point p under the patch hierarchy: digit i is 0 when the
// level i tile containing p is large and 1 when it is small. Points on
// any tile edge are rejected because both neighbors claim them.
inline std::string code_point(const Patch& patch, const Cyc& p) {
    if (patch.chain.empty()) throw std::invalid_argument("code_point: empty patch");
    Triangle cur = patch.chain.back();
    switch (locate(p, cur)) {
    case Loc::outside: throw std::invalid_argument("code_point: point outside the top tile");
    case Loc::boundary: throw boundary_point_error("code_point: point on a tile edge");
    case Loc::inside: break;
    }
    std::string out(patch.chain.size(), '0');
    out[static_cast<size_t>(cur.level)] = cur.kind == Kind::small ? '1' : '0';
    while (cur.level > 0) {
        bool found = false;
        for (const auto& child : decompose(cur)) {
            const Loc l = locate(p, child);
            if (l == Loc::boundary)
                throw boundary_point_error("code_point: point on a tile edge");
            if (l == Loc::inside) {
                cur = child;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("code_point: interior point lost between children");
        out[static_cast<size_t>(cur.level)] = cur.kind == Kind::small ? '1' : '0';
    }
    return out;
}

inline std::pair<Int, Int> kind_counts(const std::vector<Triangle>& tiles) {
    Int large = 0, small = 0;
    for (const auto& t : tiles) (t.kind == Kind::large ? large : small) += 1;
    return {large, small};
}

// ---------------------------------------------------------------------
// mirror pairs, matching rule, rendering

namespace detail {

inline std::string point_key(const Cyc& w) {
    std::string out;
    for (const auto& coord : w.c) {
        out += rat_str(coord);
        out += ';';
    }
    return out;
}

} // namespace detail

// Quadrilateral from two mirror mates glued along the apex-match axis.
// Corners run apex corner, wing, head, wing; for a kite the head is the
// 4 theta vertex, for a dart the apex corner is the 6 theta reflex one.
struct Quad {
    bool kite = false;
    std::array<Cyc, 4> corner;
    std::array<Color, 4> color;
    int level = 0;
};

struct MergeResult {
    std::vector<Quad> quads;
    std::vector<Triangle> unpaired;
};

// Pair up mirror mates in a same-level patch of even parity. Tiles whose
// axis edge lies on the patch boundary have no mate and are reported,
// not rejected.
inline MergeResult merge_to_kites_darts(const std::vector<Triangle>& tiles) {
    MergeResult out;
    if (tiles.empty()) return out;
    const int level = tiles[0].level;
    if (level % 2 != 0)
        throw std::invalid_argument("merge_to_kites_darts: needs an even level patch");
    for (const auto& t : tiles)
        if (t.level != level)
            throw std::invalid_argument("merge_to_kites_darts: mixed levels");

    std::map<std::string, std::vector<const Triangle*>> groups;
    for (const auto& t : tiles) {
        std::string a = detail::point_key(t.apex), m = detail::point_key(t.match);
        groups[a < m ? a + m : m + a].push_back(&t);
    }
    for (const auto& [key, mates] : groups) {
        const bool mirror_pair =
            mates.size() == 2 && mates[0]->kind == mates[1]->kind &&
            mates[0]->apex == mates[1]->apex && mates[0]->match == mates[1]->match &&
            !(mates[0]->other == mates[1]->other) &&
            mates[0]->apex_color == mates[1]->apex_color;
        if (!mirror_pair) {
            for (const auto* t : mates) out.unpaired.push_back(*t);
            continue;
        }
        const Triangle* first = mates[0];
        const Triangle* second = mates[1];
        if (detail::point_key(second->other) < detail::point_key(first->other))
            std::swap(first, second);
        Quad q;
        q.kite = first->kind == Kind::large;
        q.level = level;
        q.corner = {first->apex, first->other, first->match, second->other};
        const Color c = first->apex_color;
        q.color = {c, flip(c), c, flip(c)};
        out.quads.push_back(q);
    }
    return out;
}

struct MatchReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// Coincident vertices must agree on color everywhere.
inline MatchReport verify_matching(const std::vector<Triangle>& tiles) {
    MatchReport report;
    std::map<std::string, Color> seen;
    auto visit = [&](const Cyc& v, Color c) {
        auto key = detail::point_key(v);
        auto [it, fresh] = seen.emplace(key, c);
        if (!fresh && it->second != c) {
            report.ok = false;
            report.violations.push_back("vertex " + key + " colored both ways");
        }
    };
    for (const auto& t : tiles) {
        visit(t.apex, t.apex_color);
        visit(t.match, t.apex_color);
        visit(t.other, flip(t.apex_color));
    }
    return report;
}

struct SvgOptions {
    int scale = 200;
    bool vertex_dots = false;
};

namespace detail {

struct SvgPoly {
    std::vector<Cyc> pts;
    const char* fill;
};

inline std::string render_svg_impl(const std::vector<SvgPoly>& polys,
                                   const std::vector<std::pair<Cyc, Color>>& dots,
                                   const SvgOptions& opts) {
    if (polys.empty()) return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n";
    const Rat scale(opts.scale);
    bool first = true;
    RealQ minx{}, maxx{}, ming{}, maxg{};
    for (const auto& poly : polys)
        for (const auto& p : poly.pts) {
            const RealQ x = re_q(p) * scale, g = im_q(p) * -scale; // svg y axis points down
            if (first || sign(x - minx) < 0) minx = x;
            if (first || sign(x - maxx) > 0) maxx = x;
            if (first || sign(g - ming) < 0) ming = g;
            if (first || sign(g - maxg) > 0) maxg = g;
            first = false;
        }
    const RealQ pad{scale / 5, Rat(0)};
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    out += decimal(minx - pad) + " " + decimal_height(ming - pad) + " ";
    out += decimal(maxx - minx + pad + pad) + " " + decimal_height(maxg - ming + pad + pad);
    out += "\">\n<g stroke=\"#303030\" stroke-width=\"" + rat_decimal(scale / 100, 12) +
           "\" stroke-linejoin=\"round\">\n";
    auto coord = [&](const Cyc& p) {
        return decimal(re_q(p) * scale) + "," + decimal_height(im_q(p) * -scale);
    };
    for (const auto& poly : polys) {
        out += "<polygon points=\"";
        for (size_t i = 0; i < poly.pts.size(); ++i) {
            if (i) out += ' ';
            out += coord(poly.pts[i]);
        }
        out += "\" fill=\"";
        out += poly.fill;
        out += "\"/>\n";
    }
    out += "</g>\n";
    if (opts.vertex_dots && !dots.empty()) {
        std::map<std::string, std::pair<Cyc, Color>> unique;
        for (const auto& d : dots) unique.emplace(point_key(d.first), d);
        out += "<g stroke=\"#303030\" stroke-width=\"" + rat_decimal(scale / 200, 12) + "\">\n";
        for (const auto& [key, d] : unique) {
            const auto [x, y] = std::pair{decimal(re_q(d.first) * scale),
                                          decimal_height(im_q(d.first) * -scale)};
            out += "<circle cx=\"" + x + "\" cy=\"" + y + "\" r=\"" +
                   rat_decimal(scale / 40, 12) + "\" fill=\"";
            out += d.second == Color::black ? "#1a1a1a" : "#fbfbf6";
            out += "\"/>\n";
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

inline const char* fill_large() { return "#b7cfe8"; }
inline const char* fill_small() { return "#f2cfae"; }

} // namespace detail

inline std::string render_svg(const Patch& patch, const SvgOptions& opts = {}) {
    std::vector<detail::SvgPoly> polys;
    std::vector<std::pair<Cyc, Color>> dots;
    for (const auto& t : patch.tiles) {
        polys.push_back({{t.apex, t.match, t.other},
                         t.kind == Kind::large ? detail::fill_large() : detail::fill_small()});
        dots.emplace_back(t.apex, t.apex_color);
        dots.emplace_back(t.match, t.apex_color);
        dots.emplace_back(t.other, flip(t.apex_color));
    }
    return detail::render_svg_impl(polys, dots, opts);
}

inline std::string render_svg(const MergeResult& merged, const SvgOptions& opts = {}) {
    std::vector<detail::SvgPoly> polys;
    std::vector<std::pair<Cyc, Color>> dots;
    for (const auto& q : merged.quads) {
        polys.push_back({{q.corner[0], q.corner[1], q.corner[2], q.corner[3]},
                         q.kite ? detail::fill_large() : detail::fill_small()});
        for (size_t i = 0; i < 4; ++i) dots.emplace_back(q.corner[i], q.color[i]);
    }
    for (const auto& t : merged.unpaired) {
        polys.push_back({{t.apex, t.match, t.other},
                         t.kind == Kind::large ? detail::fill_large() : detail::fill_small()});
        dots.emplace_back(t.apex, t.apex_color);
        dots.emplace_back(t.match, t.apex_color);
        dots.emplace_back(t.other, flip(t.apex_color));
    }
    return detail::render_svg_impl(polys, dots, opts);
}

} // namespace afc::tile
