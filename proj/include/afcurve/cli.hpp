#pragma once

// The command line surface. run() takes the argument vector (without the
// program name) plus output and error streams, and returns the process
// exit code, so tests can drive every command in-process and compare
// bytes. Exit codes: 0 on success, 1 when a check or computation fails
// (with a JSON report on the output stream), 2 on a usage error (with a
// message on the error stream naming the offending flag or argument).
//
// Output is deterministic for fixed arguments: no timestamps, no
// addresses, no timing unless --timings is passed explicitly, and every
// container printed is ordered. The --json form of each command is a
// single line produced by the canonical writer in json_io.hpp.

#include "checks.hpp"
#include "json_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace afc::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

namespace detail {

struct UsageError {
    std::string msg;
};

struct FlagSpec {
    const char* name;
    bool takes_value;
};

struct Args {
    std::map<std::string, std::string> values;
    std::set<std::string> seen;
    std::vector<std::string> positionals;

    bool has(const std::string& f) const { return seen.count(f) > 0; }

    const std::string& value(const std::string& f) const { return values.at(f); }
};

inline Args parse_args(const std::vector<std::string>& tokens,
                       const std::vector<FlagSpec>& specs) {
    Args a;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& t = tokens[i];
        if (t.rfind("--", 0) != 0) {
            a.positionals.push_back(t);
            continue;
        }
        const FlagSpec* spec = nullptr;
        for (const auto& s : specs)
            if (t == s.name) spec = &s;
        if (!spec) throw UsageError{"unknown flag: " + t};
        if (!a.seen.insert(t).second) throw UsageError{"flag given twice: " + t};
        if (spec->takes_value) {
            if (i + 1 >= tokens.size()) throw UsageError{"flag " + t + " needs a value"};
            a.values[t] = tokens[++i];
        }
    }
    return a;
}

inline long long flag_int(const Args& a, const std::string& f, long long fallback,
                          long long lo, long long hi) {
    if (!a.has(f)) return fallback;
    const std::string& raw = a.value(f);
    long long v = 0;
    try {
        std::size_t used = 0;
        v = std::stoll(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
    } catch (const std::exception&) {
        throw UsageError{"flag " + f + ": expected an integer, got '" + raw + "'"};
    }
    if (v < lo || v > hi)
        throw UsageError{"flag " + f + ": value " + raw + " outside [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]"};
    return v;
}

inline long long require_int(const Args& a, const std::string& f, long long lo, long long hi) {
    if (!a.has(f)) throw UsageError{"missing flag: " + f};
    return flag_int(a, f, 0, lo, hi);
}

inline void reject_positionals(const Args& a, std::size_t allowed = 0) {
    if (a.positionals.size() > allowed)
        throw UsageError{"unexpected argument: '" + a.positionals[allowed] + "'"};
}

// ------------------------------------------------------------------
// small formatters shared by the text and json renderings

inline std::string laurent_str(const k0::LaurentPoly& poly) {
    if (poly.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : poly) {
        if (c == 0) continue;
        const bool neg = c < 0;
        Int mag = neg ? Int(-c) : c;
        std::string term;
        if (e == 0) term = int_str(mag);
        else {
            if (mag != 1) term = int_str(mag) + "*";
            term += "t";
            if (e != 1) term += "^" + std::to_string(e);
        }
        if (out.empty()) out = neg ? "-" + term : term;
        else out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

inline jio::JVal laurent_json(const k0::LaurentPoly& poly) {
    auto arr = jio::JVal::array();
    for (const auto& [e, c] : poly) {
        auto pair = jio::JVal::array();
        pair.push(jio::JVal::number(e));
        pair.push(jio::JVal::number(c));
        arr.push(std::move(pair));
    }
    return arr;
}

inline std::string digits_str(const std::vector<std::pair<int, int>>& digits) {
    if (digits.empty()) return "(none)";
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) out += ",";
        out += "(" + std::to_string(digits[i].first) + "," +
               std::to_string(digits[i].second) + ")";
    }
    return out;
}

inline std::string seq_str(const seq::EventualSeq& z) { return z.pre + ":" + z.cyc; }

inline seq::EventualSeq parse_seq(const seq::Params& sp, const std::string& raw,
                                  const std::string& flag) {
    auto colon = raw.find(':');
    if (colon == std::string::npos)
        throw UsageError{"flag " + flag + ": expected PRE:CYC (PRE may be empty), got '" + raw +
                         "'"};
    try {
        return seq::make_eventual(sp, raw.substr(0, colon), raw.substr(colon + 1));
    } catch (const std::invalid_argument& e) {
        throw UsageError{"flag " + flag + ": " + e.what()};
    }
}

inline std::vector<Int> parse_coords(const std::string& raw, int r, const std::string& flag) {
    std::vector<Int> coords;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw UsageError{"flag " + flag + ": empty coordinate in '" + raw + "'"};
        try {
            coords.push_back(parse_int(cur));
        } catch (const std::exception&) {
            throw UsageError{"flag " + flag + ": bad integer '" + cur + "'"};
        }
        cur.clear();
    };
    for (char ch : raw) {
        if (ch == ',') flush();
        else if (!std::isspace(static_cast<unsigned char>(ch))) cur += ch;
    }
    flush();
    if (coords.size() > static_cast<std::size_t>(r) + 1)
        throw UsageError{"flag " + flag + ": " + std::to_string(coords.size()) +
                         " coordinates, but the ring has rank " + std::to_string(r + 1)};
    coords.resize(static_cast<std::size_t>(r) + 1, Int(0));
    return coords;
}

inline k0::LaurentPoly parse_laurent(const std::string& raw, const std::string& flag) {
    k0::LaurentPoly poly;
    std::istringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw UsageError{"flag " + flag + ": expected EXP:COEFF terms, got '" + item + "'"};
        try {
            int e = std::stoi(item.substr(0, colon));
            poly[e] += parse_int(item.substr(colon + 1));
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw UsageError{"flag " + flag + ": bad term '" + item + "'"};
        }
    }
    if (poly.empty()) throw UsageError{"flag " + flag + ": no terms in '" + raw + "'"};
    return k0::laurent_normalize(std::move(poly));
}

inline std::string sphere_entry(const std::optional<Rat>& v) {
    return v.has_value() ? rat_str(*v) : "inf";
}

// A failing command prints its JSON report before returning 1, whether or
// not --json was asked for, so failures are always machine readable.
inline int finish(const jio::JVal& report, bool pass, bool json, std::ostream& out,
                  const std::string& text) {
    if (json) {
        out << jio::dump(report) << "\n";
    } else {
        out << text;
        if (!pass) out << jio::dump(report) << "\n";
    }
    return pass ? 0 : 1;
}

// ------------------------------------------------------------------
// commands

inline int cmd_hilbert(const Args& a, std::ostream& out) {
    const int r = static_cast<int>(require_int(a, "--r", 1, 12));
    const int N = static_cast<int>(flag_int(a, "--N", 10, 0, 2000));
    alg::Params p{r};
    std::string list;
    auto b = jio::JVal::array();
    for (int n = 0; n <= N; ++n) {
        auto bn = alg::b(p, n);
        if (n) list += ",";
        list += int_str(bn);
        b.push(jio::JVal::number(bn));
    }
    const bool ok = alg::hilbert_identity(p, std::max(N, 1));
    auto report = jio::JVal::object();
    report["command"] = jio::JVal::string("hilbert");
    report["r"] = jio::JVal::number(r);
    report["N"] = jio::JVal::number(N);
    report["b"] = std::move(b);
    report["identity"] = jio::JVal::boolean(ok);
    std::ostringstream text;
    text << "b_0..b_" << N << " (r=" << r << "): " << list << "\n";
    text << "series identity through degree " << std::max(N, 1) << ": "
         << (ok ? "pass" : "FAIL") << "\n";
    return finish(report, ok, a.has("--json"), out, text.str());
}

inline int cmd_enumerate(const Args& a, std::ostream& out) {
    const int r = static_cast<int>(require_int(a, "--r", 1, 12));
    const int n = static_cast<int>(require_int(a, "--n", -1, 30));
    const auto limit = static_cast<std::size_t>(flag_int(a, "--limit", 64, 0, 1000000));
    seq::Params sp{r};
    auto xs = seq::enumerate_Xn(sp, n);
    const bool ok = Int(xs.size()) == seq::c(sp, n + 1);
    const std::size_t shown = std::min(limit, xs.size());
    auto report = jio::JVal::object();
    report["command"] = jio::JVal::string("enumerate");
    report["r"] = jio::JVal::number(r);
    report["n"] = jio::JVal::number(n);
    report["count"] = jio::JVal::number(xs.size());
    report["count_matches_recurrence"] = jio::JVal::boolean(ok);
    report["listed"] = jio::JVal::number(shown);
    auto elems = jio::JVal::array();
    for (std::size_t i = 0; i < shown; ++i) elems.push(jio::JVal::string(xs[i]));
    report["elements"] = std::move(elems);
    std::ostringstream text;
    text << "|X(" << n << ")| = " << xs.size() << " strings of length " << (n + 1) << " (r=" << r
         << "), count recurrence " << (ok ? "agrees" : "DISAGREES") << "\n";
    for (std::size_t i = 0; i < shown; ++i)
        text << (xs[i].empty() ? std::string("(empty)") : xs[i]) << "\n";
    if (shown < xs.size())
        text << "... " << (xs.size() - shown) << " more, raise --limit to list them\n";
    return finish(report, ok, a.has("--json"), out, text.str());
}

inline int cmd_bratteli(const Args& a, std::ostream& out) {
    const int r = static_cast<int>(require_int(a, "--r", 1, 12));
    const int N = static_cast<int>(require_int(a, "--N", 1, 40));
    const auto max_size = static_cast<std::size_t>(flag_int(a, "--max-size", 5000, 1, 10000000));
    alg::Params p{r};
    auto d = mmat::tower_diagram(p, N - 1, max_size);
    if (a.has("--dot")) {
        out << mmat::dot_of(d);
        return 0;
    }
    const bool ok = mmat::validate_diagram(d);
    auto report = jio::JVal::object();
    report["command"] = jio::JVal::string("bratteli");
    report["r"] = jio::JVal::number(r);
    report["N"] = jio::JVal::number(N);
    auto levels = jio::JVal::array();
    for (const auto& lvl : d.level_sizes) {
        auto row = jio::JVal::array();
        for (auto s : lvl) row.push(jio::JVal::number(s));
        levels.push(std::move(row));
    }
    report["levels"] = std::move(levels);
    auto steps = jio::JVal::array();
    for (const auto& es : d.edges) {
        auto sorted = es;
        std::sort(sorted.begin(), sorted.end());
        auto row = jio::JVal::array();
        for (auto [i, j] : sorted) {
            auto pair = jio::JVal::array();
            pair.push(jio::JVal::number(i));
            pair.push(jio::JVal::number(j));
            row.push(std::move(pair));
        }
        steps.push(std::move(row));
    }
    report["edges"] = std::move(steps);
    report["consistent"] = jio::JVal::boolean(ok);
    std::ostringstream text;
    text << "tower diagram, levels 0.." << N << " (r=" << r << ")\n";
    for (std::size_t k = 0; k < d.level_sizes.size(); ++k) {
        text << "level " << k << ":";
        for (std::size_t i = 0; i < d.level_sizes[k].size(); ++i)
            text << (i ? "," : " ") << d.level_sizes[k][i];
        text << "\n";
    }
    for (std::size_t k = 0; k < d.edges.size(); ++k) {
        auto sorted = d.edges[k];
        std::sort(sorted.begin(), sorted.end());
        text << "step " << k << "->" << (k + 1) << ":";
        for (std::size_t i = 0; i < sorted.size(); ++i)
            text << (i ? ",(" : " (") << sorted[i].first << "<-" << sorted[i].second << ")";
        text << "\n";
    }
    text << "consistency: " << (ok ? "pass" : "FAIL") << "\n";
    return finish(report, ok, a.has("--json"), out, text.str());
}

inline int cmd_k0(const Args& a, std::ostream& out) {
    const int r = static_cast<int>(require_int(a, "--r", 1, 12));
    alg::Params p{r};
    if (a.positionals.empty())
        throw UsageError{"k0 needs an operation: expand, compare, or growth"};
    const std::string& op = a.positionals[0];
    reject_positionals(a, 1);
    const int depth = static_cast<int>(flag_int(a, "--depth", 256, 1, 100000));

    if (op == "expand") {
        if (!a.has("--class")) throw UsageError{"missing flag: --class"};
        auto coords = parse_coords(a.value("--class"), r, "--class");
        auto g = k0::make_zalpha(p, coords);
        auto report = jio::JVal::object();
        report["command"] = jio::JVal::string("k0");
        report["op"] = jio::JVal::string("expand");
        report["r"] = jio::JVal::number(r);
        auto cj = jio::JVal::array();
        for (const auto& c : coords) cj.push(jio::JVal::number(c));
        report["class"] = std::move(cj);
        std::ostringstream text;
        text << "class: " << a.value("--class") << " (value " << k0::decimal_approx(g, 12)
             << ")\n";
        if (k0::sign(g) < 0) {
            report["error"] = jio::JVal::string("negative class has no greedy expansion");
            text << "sign: negative, no greedy expansion\n";
            return finish(report, false, a.has("--json"), out, text.str());
        }
        auto digits = k0::digit_expand(p, g, depth);
        auto resum = k0::za_zero(p);
        for (const auto& [e, dg] : digits) resum = resum + Int(dg) * k0::za_pow_alpha(p, e);
        const bool ok = resum == g;
        auto dj = jio::JVal::array();
        for (const auto& [e, dg] : digits) {
            auto pair = jio::JVal::array();
            pair.push(jio::JVal::number(e));
            pair.push(jio::JVal::number(dg));
            dj.push(std::move(pair));
        }
        report["digits"] = std::move(dj);
        report["resummation"] = jio::JVal::string(ok ? "exact" : "mismatch");
        text << "digits: " << digits_str(digits) << "\n";
        text << "resummation: " << (ok ? "exact" : "MISMATCH") << "\n";
        return finish(report, ok, a.has("--json"), out, text.str());
    }

    if (op == "compare") {
        if (!a.has("--a")) throw UsageError{"missing flag: --a"};
        if (!a.has("--b")) throw UsageError{"missing flag: --b"};
        auto pa = parse_laurent(a.value("--a"), "--a");
        auto pb = parse_laurent(a.value("--b"), "--b");
        auto cmp = k0::cancellation_compare(p, pa, pb, depth);
        const char* word = cmp.order == k0::Order::less
                               ? "less"
                               : (cmp.order == k0::Order::equal ? "equal" : "greater");
        auto report = jio::JVal::object();
        report["command"] = jio::JVal::string("k0");
        report["op"] = jio::JVal::string("compare");
        report["r"] = jio::JVal::number(r);
        report["a"] = laurent_json(pa);
        report["b"] = laurent_json(pb);
        report["order"] = jio::JVal::string(word);
        auto comp = jio::JVal::array();
        for (const auto& [e, m] : cmp.complement) {
            auto pair = jio::JVal::array();
            pair.push(jio::JVal::number(e));
            pair.push(jio::JVal::number(m));
            comp.push(std::move(pair));
        }
        report["complement"] = std::move(comp);
        std::ostringstream text;
        text << "a: " << laurent_str(pa) << "\n";
        text << "b: " << laurent_str(pb) << "\n";
        text << "order: a " << word << " b\n";
        if (cmp.order == k0::Order::less) {
            text << "complement (shift -> multiplicity):";
            for (const auto& [e, m] : cmp.complement) text << " " << e << "->" << int_str(m);
            text << "\n";
        }
        return finish(report, true, a.has("--json"), out, text.str());
    }

    if (op == "growth") {
        const int n = static_cast<int>(flag_int(a, "--n", 60, 1, 5000));
        Rat tol(1, 1000000);
        if (a.has("--tol")) {
            try {
                tol = parse_rat(a.value("--tol"));
            } catch (const std::exception&) {
                throw UsageError{"flag --tol: bad rational '" + a.value("--tol") + "'"};
            }
            if (tol <= 0) throw UsageError{"flag --tol: must be positive"};
        }
        const bool ok = k0::growth_limit_check(p, n, tol);
        auto scaled = alg::b(p, n) * k0::za_pow_alpha(p, -n);
        auto report = jio::JVal::object();
        report["command"] = jio::JVal::string("k0");
        report["op"] = jio::JVal::string("growth");
        report["r"] = jio::JVal::number(r);
        report["n"] = jio::JVal::number(n);
        report["tol"] = jio::JVal::string(rat_str(tol));
        report["scaled_value"] = jio::JVal::string(k0::decimal_approx(scaled, 12));
        report["within_tol"] = jio::JVal::boolean(ok);
        std::ostringstream text;
        text << "b_" << n << " * alpha^-" << n << " = " << k0::decimal_approx(scaled, 12) << "\n";
        text << "within " << rat_str(tol) << " of the limit: " << (ok ? "pass" : "FAIL") << "\n";
        return finish(report, ok, a.has("--json"), out, text.str());
    }

    throw UsageError{"unknown k0 operation: '" + op + "' (expected expand, compare, or growth)"};
}

inline int cmd_quiver(const Args& a, std::ostream& out) {
    const int r = static_cast<int>(require_int(a, "--r", 1, 12));
    alg::Params p{r};
    auto q = quiver::make_quiver(p);
    if (a.has("--dot")) {
        out << quiver::dot_of(q);
        return 0;
    }
    auto pres = quiver::k0_presentation(p);
    auto report = jio::JVal::object();
    report["command"] = jio::JVal::string("quiver");
    report["r"] = jio::JVal::number(r);
    auto arrows = jio::JVal::array();
    for (const auto& ar : q.arrows) {
        auto one = jio::JVal::object();
        one["name"] = jio::JVal::string(ar.name);
        one["start"] = jio::JVal::number(ar.start);
        one["head"] = jio::JVal::number(ar.head);
        arrows.push(std::move(one));
    }
    report["arrows"] = std::move(arrows);
    report["relation"] = laurent_json(pres.relation);
    report["structure_class"] = laurent_json(pres.o_class);
    report["structure_class_reduced"] = laurent_json(pres.o_reduced);
    std::ostringstream text;
    text << "vertices: 1.." << (r + 1) << " (r=" << r << ")\n";
    for (const auto& ar : q.arrows)
        text << "arrow " << ar.name << ": " << ar.start << " -> " << ar.head << "\n";
    text << "grothendieck relation: " << laurent_str(pres.relation) << "\n";
    text << "structure class: " << laurent_str(pres.o_class) << " = " << laurent_str(pres.o_reduced)
         << " modulo the relation\n";
    return finish(report, true, a.has("--json"), out, text.str());
}

inline int cmd_points(const Args& a, std::ostream& out) {
    const int r = static_cast<int>(require_int(a, "--r", 1, 12));
    alg::Params p{r};
    seq::Params sp{r};
    if (a.positionals.empty())
        throw UsageError{"points needs an operation: iso, sphere, or count"};
    const std::string& op = a.positionals[0];
    reject_positionals(a, 1);

    if (op == "iso") {
        if (!a.has("--a")) throw UsageError{"missing flag: --a"};
        if (!a.has("--b")) throw UsageError{"missing flag: --b"};
        auto za = parse_seq(sp, a.value("--a"), "--a");
        auto zb = parse_seq(sp, a.value("--b"), "--b");
        const bool tails = seq::tail_equal(za, zb);
        const bool iso = pts::qgr_iso(pts::from_seq(p, za), pts::from_seq(p, zb));
        const bool ok = tails == iso;
        auto report = jio::JVal::object();
        report["command"] = jio::JVal::string("points");
        report["op"] = jio::JVal::string("iso");
        report["r"] = jio::JVal::number(r);
        report["a"] = jio::JVal::string(seq_str(za));
        report["b"] = jio::JVal::string(seq_str(zb));
        report["tail_equal"] = jio::JVal::boolean(tails);
        report["module_isomorphic"] = jio::JVal::boolean(iso);
        report["agreement"] = jio::JVal::boolean(ok);
        std::ostringstream text;
        text << "a (canonical): " << seq_str(za) << "\n";
        text << "b (canonical): " << seq_str(zb) << "\n";
        text << "tail equivalent: " << (tails ? "yes" : "no") << "\n";
        text << "modules isomorphic in the quotient: " << (iso ? "yes" : "no") << "\n";
        if (!ok) text << "DISAGREEMENT between the two criteria\n";
        return finish(report, ok, a.has("--json"), out, text.str());
    }

    if (op == "sphere") {
        if (!a.has("--seq")) throw UsageError{"missing flag: --seq"};
        if (r != 1) throw UsageError{"flag --r: the sphere reading needs r = 1"};
        auto z = parse_seq(sp, a.value("--seq"), "--seq");
        auto m = pts::from_seq(p, z);
        auto s = pts::to_sphere_seq(m);
        auto gp = pts::psi_path(s);
        auto verts = pts::vertices_of(gp, 8);
        auto report = jio::JVal::object();
        report["command"] = jio::JVal::string("points");
        report["op"] = jio::JVal::string("sphere");
        report["r"] = jio::JVal::number(r);
        report["seq"] = jio::JVal::string(seq_str(z));
        auto put = [&](const char* key, const std::vector<std::optional<Rat>>& part) {
            auto arr = jio::JVal::array();
            for (const auto& v : part) arr.push(jio::JVal::string(sphere_entry(v)));
            report[key] = std::move(arr);
        };
        put("ratios_pre", s.pre);
        put("ratios_cyc", s.cyc);
        report["path_pre"] = jio::JVal::string(gp.pre);
        report["path_cyc"] = jio::JVal::string(gp.cyc);
        auto vj = jio::JVal::array();
        for (int v : verts) vj.push(jio::JVal::number(v));
        report["vertices"] = std::move(vj);
        std::ostringstream text;
        text << "sequence (canonical): " << seq_str(z) << "\n";
        text << "ratios pre:";
        for (const auto& v : s.pre) text << " " << sphere_entry(v);
        text << "\nratios cyc:";
        for (const auto& v : s.cyc) text << " " << sphere_entry(v);
        text << "\npath labels: pre=\"" << gp.pre << "\" cyc=\"" << gp.cyc << "\"\n";
        text << "vertices (first 8):";
        for (int v : verts) text << " " << v;
        text << "\n";
        return finish(report, true, a.has("--json"), out, text.str());
    }

    if (op == "count") {
        const int N = static_cast<int>(require_int(a, "--N", 1, 20));
        auto rep = pts::enumerate_f2(p, N);
        auto report = jio::JVal::object();
        report["command"] = jio::JVal::string("points");
        report["op"] = jio::JVal::string("count");
        report["r"] = jio::JVal::number(r);
        report["N"] = jio::JVal::number(N);
        report["total"] = jio::JVal::number(rep.total);
        report["pure"] = jio::JVal::number(rep.pure);
        report["unresolved"] = jio::JVal::number(rep.unresolved);
        auto classes = jio::JVal::array();
        for (const auto& [z, count] : rep.class_counts) {
            auto one = jio::JVal::array();
            one.push(jio::JVal::string(z));
            one.push(jio::JVal::number(count));
            classes.push(std::move(one));
        }
        report["classes"] = std::move(classes);
        std::ostringstream text;
        text << "two-element-field point modules on " << N << " slots (r=" << r << ")\n";
        text << "total: " << int_str(rep.total) << "\n";
        text << "settled digit class: " << int_str(rep.pure) << "\n";
        text << "mixed: " << int_str(rep.unresolved) << "\n";
        text << "distinct digit classes: " << rep.class_counts.size() << "\n";
        return finish(report, true, a.has("--json"), out, text.str());
    }

    throw UsageError{"unknown points operation: '" + op + "' (expected iso, sphere, or count)"};
}

inline int cmd_tiles(const Args& a, std::ostream& out) {
    if (!a.has("--prefix")) throw UsageError{"missing flag: --prefix"};
    const std::string& prefix = a.value("--prefix");
    if (prefix.empty()) throw UsageError{"flag --prefix: needs at least one digit"};
    const auto max_tiles = static_cast<std::size_t>(flag_int(a, "--max-tiles", 50000, 1, 5000000));
    tile::Patch patch;
    try {
        patch = tile::patch_from_prefix(prefix, max_tiles);
    } catch (const std::invalid_argument& e) {
        throw UsageError{std::string("flag --prefix: ") + e.what()};
    }
    if (a.has("--svg")) {
        if (a.has("--merge")) out << tile::render_svg(tile::merge_to_kites_darts(patch.tiles));
        else out << tile::render_svg(patch);
        return 0;
    }
    auto [large, small] = tile::kind_counts(patch.tiles);
    auto match = tile::verify_matching(patch.tiles);
    auto [mx, my] = tile::xy_strings(patch.marked, Rat(1), 12);
    const std::string code = tile::code_point(patch, patch.marked);

    auto report = jio::JVal::object();
    report["command"] = jio::JVal::string("tiles");
    report["prefix"] = jio::JVal::string(prefix);
    report["levels"] = jio::JVal::number(patch.chain.size());
    report["tiles"] = jio::JVal::number(patch.tiles.size());
    report["large"] = jio::JVal::number(large);
    report["small"] = jio::JVal::number(small);
    report["marked_x"] = jio::JVal::string(mx);
    report["marked_y"] = jio::JVal::string(my);
    report["marked_code"] = jio::JVal::string(code);
    report["matching_ok"] = jio::JVal::boolean(match.ok);

    std::ostringstream text;
    text << "prefix: " << prefix << "\n";
    text << "chain levels: " << patch.chain.size() << " (top level "
         << (patch.chain.size() - 1) << ")\n";
    text << "tiles: " << patch.tiles.size() << " (large " << int_str(large) << ", small "
         << int_str(small) << ")\n";
    text << "marked point: (" << mx << ", " << my << ") codes back to " << code << "\n";
    text << "vertex coloring: " << (match.ok ? "consistent" : "VIOLATED") << "\n";

    std::string svg;
    if (a.has("--merge")) {
        auto merged = tile::merge_to_kites_darts(patch.tiles);
        std::size_t kites = 0, darts = 0;
        for (const auto& qd : merged.quads) (qd.kite ? kites : darts) += 1;
        report["kites"] = jio::JVal::number(kites);
        report["darts"] = jio::JVal::number(darts);
        report["unpaired_halves"] = jio::JVal::number(merged.unpaired.size());
        text << "merged: " << kites << " kites, " << darts << " darts, " << merged.unpaired.size()
             << " unpaired halves\n";
        if (a.has("--out")) svg = tile::render_svg(merged);
    } else if (a.has("--out")) {
        svg = tile::render_svg(patch);
    }
    bool ok = match.ok && code == prefix;
    if (a.has("--out")) {
        const std::string& path = a.value("--out");
        std::ofstream f(path, std::ios::binary);
        if (!f) throw UsageError{"flag --out: cannot open '" + path + "' for writing"};
        f << svg;
        f.close();
        report["svg_bytes"] = jio::JVal::number(svg.size());
        text << "svg written: " << path << " (" << svg.size() << " bytes)\n";
    }
    return finish(report, ok, a.has("--json"), out, text.str());
}

inline chk::CheckResult cli_determinism(chk::Tier tier);

inline int cmd_verify(const Args& a, std::ostream& out) {
    chk::Tier tier = chk::Tier::quick;
    if (a.has("--level")) {
        const std::string& lvl = a.value("--level");
        if (lvl == "quick") tier = chk::Tier::quick;
        else if (lvl == "full") tier = chk::Tier::full;
        else throw UsageError{"flag --level: expected quick or full, got '" + lvl + "'"};
    }
    std::optional<int> only_r;
    if (a.has("--r")) only_r = static_cast<int>(require_int(a, "--r", 1, 12));

    auto results = chk::core_battery(tier, only_r);
    {
        auto start = std::chrono::steady_clock::now();
        auto c12 = cli_determinism(tier);
        auto stop = std::chrono::steady_clock::now();
        c12.ms = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
        results.push_back(std::move(c12));
    }
    std::sort(results.begin(), results.end(),
              [](const chk::CheckResult& x, const chk::CheckResult& y) { return x.id < y.id; });

    std::size_t passed = 0;
    for (const auto& res : results) passed += res.pass ? 1 : 0;
    const bool all = passed == results.size();

    auto report = jio::JVal::object();
    report["command"] = jio::JVal::string("verify");
    report["level"] = jio::JVal::string(chk::tier_name(tier));
    if (only_r) report["r"] = jio::JVal::number(*only_r);
    auto checks = jio::JVal::array();
    for (const auto& res : results) {
        auto one = jio::JVal::object();
        one["id"] = jio::JVal::string(res.id);
        one["params"] = jio::JVal::string(res.params);
        one["pass"] = jio::JVal::boolean(res.pass);
        one["skipped"] = jio::JVal::boolean(res.skipped);
        auto notes = jio::JVal::array();
        for (const auto& n : res.notes) notes.push(jio::JVal::string(n));
        one["notes"] = std::move(notes);
        if (a.has("--timings")) one["ms"] = jio::JVal::number(Int(res.ms));
        checks.push(std::move(one));
    }
    report["checks"] = std::move(checks);
    report["pass"] = jio::JVal::boolean(all);

    std::ostringstream text;
    for (const auto& res : results) {
        text << "check " << res.id << ": " << (res.pass ? (res.skipped ? "pass (skipped)" : "pass")
                                                        : "FAIL");
        if (!res.params.empty()) text << " (" << res.params << ")";
        if (a.has("--timings")) text << " [" << res.ms << " ms]";
        text << "\n";
        for (const auto& n : res.notes) text << "  - " << n << "\n";
    }
    text << "verdict: " << passed << "/" << results.size() << " pass\n";
    return finish(report, all, a.has("--json"), out, text.str());
}

inline const char* usage_text() {
    return
        "afcurve <command> [flags]\n"
        "\n"
        "commands:\n"
        "  hilbert   --r R [--N N] [--json]\n"
        "            graded dimensions b_0..b_N and the exact series identity\n"
        "  enumerate --r R --n N [--limit K] [--json]\n"
        "            the admissible digit strings of length n+1\n"
        "  bratteli  --r R --N L [--max-size S] [--dot | --json]\n"
        "            the tower diagram through level L\n"
        "  k0        --r R expand --class C [--depth D] [--json]\n"
        "            greedy digit expansion of a ring element (C = c0,c1,...)\n"
        "  k0        --r R compare --a TERMS --b TERMS [--depth D] [--json]\n"
        "            order comparison with complement (TERMS = EXP:COEFF,...)\n"
        "  k0        --r R growth [--n N] [--tol Q] [--json]\n"
        "            the scaled growth value against the exact limit\n"
        "  quiver    --r R [--dot | --json]\n"
        "            the quiver, its relation, and the structure class\n"
        "  points    --r R iso --a PRE:CYC --b PRE:CYC [--json]\n"
        "            tail equivalence vs module isomorphism for two sequences\n"
        "  points    --r 1 sphere --seq PRE:CYC [--json]\n"
        "            ratio stream, path labels, and visited vertices\n"
        "  points    --r R count --N K [--json]\n"
        "            census of the two-element-field point modules on K slots\n"
        "  tiles     --prefix Z [--merge] [--svg | --out FILE] [--max-tiles M] [--json]\n"
        "            the patch for a digit prefix, optionally merged; --svg\n"
        "            prints the drawing, --out FILE writes it beside the report\n"
        "  verify    [--level quick|full] [--r R] [--timings] [--json]\n"
        "            run the named check battery; exit 0 only if all pass\n"
        "\n"
        "exit codes: 0 success, 1 check failure (JSON report on stdout),\n"
        "            2 usage error (message on stderr)\n"
        "output is byte-deterministic for fixed arguments unless --timings\n";
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace detail;
    if (args.empty()) {
        err << "usage error: missing command\n" << usage_text();
        return 2;
    }
    const std::string& cmd = args[0];
    std::vector<std::string> rest(args.begin() + 1, args.end());
    try {
        if (cmd == "help" || cmd == "--help") {
            out << usage_text();
            return 0;
        }
        if (cmd == "hilbert")
            return cmd_hilbert(parse_args(rest, {{"--r", true}, {"--N", true}, {"--json", false}}),
                               out);
        if (cmd == "enumerate")
            return cmd_enumerate(parse_args(rest, {{"--r", true},
                                                   {"--n", true},
                                                   {"--limit", true},
                                                   {"--json", false}}),
                                 out);
        if (cmd == "bratteli")
            return cmd_bratteli(parse_args(rest, {{"--r", true},
                                                  {"--N", true},
                                                  {"--max-size", true},
                                                  {"--dot", false},
                                                  {"--json", false}}),
                                out);
        if (cmd == "k0")
            return cmd_k0(parse_args(rest, {{"--r", true},
                                            {"--class", true},
                                            {"--a", true},
                                            {"--b", true},
                                            {"--n", true},
                                            {"--tol", true},
                                            {"--depth", true},
                                            {"--json", false}}),
                          out);
        if (cmd == "quiver")
            return cmd_quiver(parse_args(rest, {{"--r", true}, {"--dot", false}, {"--json", false}}),
                              out);
        if (cmd == "points")
            return cmd_points(parse_args(rest, {{"--r", true},
                                                {"--a", true},
                                                {"--b", true},
                                                {"--seq", true},
                                                {"--N", true},
                                                {"--json", false}}),
                              out);
        if (cmd == "tiles")
            return cmd_tiles(parse_args(rest, {{"--prefix", true},
                                               {"--merge", false},
                                               {"--svg", false},
                                               {"--out", true},
                                               {"--max-tiles", true},
                                               {"--json", false}}),
                             out);
        if (cmd == "verify")
            return cmd_verify(parse_args(rest, {{"--level", true},
                                                {"--r", true},
                                                {"--timings", false},
                                                {"--json", false}}),
                              out);
        throw UsageError{"unknown command: '" + cmd + "'"};
    } catch (const UsageError& u) {
        err << "usage error: " << u.msg << "\n";
        return 2;
    } catch (const resource_limit_error& e) {
        auto report = jio::JVal::object();
        report["command"] = jio::JVal::string(cmd);
        report["error"] = jio::JVal::string(e.what());
        out << jio::dump(report) << "\n";
        return 1;
    } catch (const std::exception& e) {
        auto report = jio::JVal::object();
        report["command"] = jio::JVal::string(cmd);
        report["error"] = jio::JVal::string(e.what());
        out << jio::dump(report) << "\n";
        return 1;
    }
}

namespace detail {

// c12: run every command family twice with fixed arguments and demand
// byte-identical output and identical exit codes. The full tier nests one
// quick verify, which itself runs this check at quick tier; the quick list
// stays verify-free, so the recursion is two levels deep and terminates.
inline chk::CheckResult cli_determinism(chk::Tier tier) {
    chk::CheckResult res{"c12-cli-determinism", "", true, false, {}, 0};
    chk::detail::Recorder rec{res};
    std::vector<std::vector<std::string>> cmds = {
        {"hilbert", "--r", "1", "--N", "10"},
        {"hilbert", "--r", "3", "--N", "12", "--json"},
        {"enumerate", "--r", "1", "--n", "3"},
        {"enumerate", "--r", "2", "--n", "4", "--json"},
        {"bratteli", "--r", "2", "--N", "5"},
        {"bratteli", "--r", "1", "--N", "6", "--dot"},
        {"bratteli", "--r", "3", "--N", "4", "--json"},
        {"k0", "--r", "1", "expand", "--class", "2"},
        {"k0", "--r", "2", "expand", "--class", "3", "--json"},
        {"k0", "--r", "1", "compare", "--a", "0:1", "--b", "1:1"},
        {"k0", "--r", "1", "growth", "--n", "40"},
        {"quiver", "--r", "1"},
        {"quiver", "--r", "2", "--dot"},
        {"quiver", "--r", "2", "--json"},
        {"points", "--r", "1", "iso", "--a", "0:10", "--b", ":10"},
        {"points", "--r", "1", "sphere", "--seq", "0:01"},
        {"points", "--r", "1", "count", "--N", "6", "--json"},
        {"tiles", "--prefix", "0100"},
        {"tiles", "--prefix", "000", "--merge", "--json"},
        {"tiles", "--prefix", "010", "--svg"},
        {"help"},
    };
    if (tier == chk::Tier::full) cmds.push_back({"verify", "--level", "quick"});
    res.params = std::to_string(cmds.size()) + " fixed commands, two runs each";
    for (const auto& cmd : cmds) {
        std::string label;
        for (const auto& t : cmd) label += (label.empty() ? "" : " ") + t;
        std::ostringstream out1, err1, out2, err2;
        int code1 = run(cmd, out1, err1);
        int code2 = run(cmd, out2, err2);
        rec.require(code1 == 0, "exit 0 for: " + label);
        rec.require(code1 == code2, "stable exit code for: " + label);
        rec.require(out1.str() == out2.str(), "byte-identical output for: " + label);
        rec.require(err1.str() == err2.str(), "byte-identical error stream for: " + label);
    }
    return res;
}

} // namespace detail

// The full battery the verify command runs, exposed for the acceptance
// binary: library checks plus the command line determinism check, sorted
// by check id.
inline std::vector<chk::CheckResult> full_battery(chk::Tier tier, std::optional<int> only_r) {
    auto results = chk::core_battery(tier, only_r);
    auto start = std::chrono::steady_clock::now();
    auto c12 = detail::cli_determinism(tier);
    auto stop = std::chrono::steady_clock::now();
    c12.ms = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    results.push_back(std::move(c12));
    std::sort(results.begin(), results.end(),
              [](const chk::CheckResult& a, const chk::CheckResult& b) { return a.id < b.id; });
    return results;
}

} // namespace afc::cli
