// The command line surface, driven in-process: pinned output lines for the
// documented invocations, exit code contract (0 success, 1 check failure
// with a JSON report, 2 usage error naming the offender), byte determinism
// across repeated runs, JSON round trips through the canonical writer, and
// agreement of --dot and --out payloads with the library renderers.

#include <catch2/catch_amalgamated.hpp>

#include <afcurve/cli.hpp>
#include <afcurve/json_io.hpp>
#include <afcurve/multimatrix.hpp>
#include <afcurve/points.hpp>
#include <afcurve/quivermap.hpp>
#include <afcurve/tiling.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace afc;

namespace {

struct RunOut {
    int code = -1;
    std::string out;
    std::string err;
};

RunOut drive(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    RunOut r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("pinned hilbert run", "[cli]") {
    auto r = drive({"hilbert", "--r", "1", "--N", "10"});
    REQUIRE(r.code == 0);
    REQUIRE(r.err.empty());
    REQUIRE(contains(r.out, "b_0..b_10 (r=1): 1,2,3,5,8,13,21,34,55,89,144"));
    REQUIRE(contains(r.out, "series identity through degree 10: pass"));
}

TEST_CASE("hilbert json round trip", "[cli]") {
    auto r = drive({"hilbert", "--r", "2", "--N", "6", "--json"});
    REQUIRE(r.code == 0);
    auto v = jio::parse(r.out.substr(0, r.out.size() - 1));
    REQUIRE(v.at("command").text == "hilbert");
    REQUIRE(v.at("b").items.size() == 7);
    REQUIRE(v.at("b").items[6].token == "44");
    REQUIRE(v.at("identity").flag);
    REQUIRE(jio::dump(v) + "\n" == r.out);
}

TEST_CASE("pinned digit expansion run", "[cli]") {
    auto r = drive({"k0", "--r", "1", "expand", "--class", "2"});
    REQUIRE(r.code == 0);
    REQUIRE(contains(r.out, "digits: (1,1),(-2,1)"));
    REQUIRE(contains(r.out, "resummation: exact"));
}

TEST_CASE("expansion of zero and of a negative class", "[cli]") {
    auto zero = drive({"k0", "--r", "1", "expand", "--class", "0"});
    REQUIRE(zero.code == 0);
    REQUIRE(contains(zero.out, "digits: (none)"));

    auto neg = drive({"k0", "--r", "2", "expand", "--class", "0,-1"});
    REQUIRE(neg.code == 1);
    REQUIRE(contains(neg.out, "no greedy expansion"));
    auto body = neg.out;
    body.pop_back();
    auto v = jio::parse(body.substr(body.rfind('\n') + 1));
    REQUIRE(v.at("error").text == "negative class has no greedy expansion");
}

TEST_CASE("k0 compare and growth", "[cli]") {
    auto cmp = drive({"k0", "--r", "1", "compare", "--a", "1:1", "--b", "0:1"});
    REQUIRE(cmp.code == 0);
    REQUIRE(contains(cmp.out, "order: a less b"));
    REQUIRE(contains(cmp.out, "complement"));

    auto eq = drive({"k0", "--r", "1", "compare", "--a", "0:1", "--b", "1:1,2:1", "--json"});
    REQUIRE(eq.code == 0);
    auto v = jio::parse(eq.out.substr(0, eq.out.size() - 1));
    REQUIRE(v.at("order").text == "equal");

    auto gr = drive({"k0", "--r", "1", "growth", "--n", "40"});
    REQUIRE(gr.code == 0);
    REQUIRE(contains(gr.out, "within 1/1000000 of the limit: pass"));
}

TEST_CASE("usage errors name the offender and exit 2", "[cli]") {
    auto bad_cmd = drive({"frobnicate"});
    REQUIRE(bad_cmd.code == 2);
    REQUIRE(contains(bad_cmd.err, "unknown command: 'frobnicate'"));
    REQUIRE(bad_cmd.out.empty());

    auto bad_int = drive({"hilbert", "--r", "1", "--N", "ten"});
    REQUIRE(bad_int.code == 2);
    REQUIRE(contains(bad_int.err, "--N"));

    auto missing = drive({"hilbert", "--N", "4"});
    REQUIRE(missing.code == 2);
    REQUIRE(contains(missing.err, "missing flag: --r"));

    auto unknown_flag = drive({"quiver", "--r", "1", "--frob"});
    REQUIRE(unknown_flag.code == 2);
    REQUIRE(contains(unknown_flag.err, "unknown flag: --frob"));

    auto twice = drive({"hilbert", "--r", "1", "--r", "2"});
    REQUIRE(twice.code == 2);
    REQUIRE(contains(twice.err, "flag given twice: --r"));

    auto bad_seq = drive({"points", "--r", "1", "iso", "--a", "0110", "--b", ":10"});
    REQUIRE(bad_seq.code == 2);
    REQUIRE(contains(bad_seq.err, "--a"));

    auto no_args = drive({});
    REQUIRE(no_args.code == 2);
    REQUIRE(contains(no_args.err, "missing command"));

    auto help = drive({"help"});
    REQUIRE(help.code == 0);
    REQUIRE(contains(help.out, "afcurve <command>"));
}

TEST_CASE("enumerate lists in order and honors the cap", "[cli]") {
    auto r = drive({"enumerate", "--r", "1", "--n", "2"});
    REQUIRE(r.code == 0);
    REQUIRE(contains(r.out, "|X(2)| = 5 strings of length 3 (r=1)"));
    REQUIRE(contains(r.out, "000\n001\n010\n100\n101\n"));

    auto capped = drive({"enumerate", "--r", "1", "--n", "2", "--limit", "2"});
    REQUIRE(capped.code == 0);
    REQUIRE(contains(capped.out, "000\n001\n... 3 more"));

    auto empty = drive({"enumerate", "--r", "2", "--n", "-1", "--json"});
    REQUIRE(empty.code == 0);
    auto v = jio::parse(empty.out.substr(0, empty.out.size() - 1));
    REQUIRE(v.at("count").token == "1");
    REQUIRE(v.at("elements").items[0].text.empty());
}

TEST_CASE("bratteli text, dot, and json agree with the library", "[cli]") {
    auto r = drive({"bratteli", "--r", "2", "--N", "4"});
    REQUIRE(r.code == 0);
    REQUIRE(contains(r.out, "level 4: 7,4,2"));
    REQUIRE(contains(r.out, "consistency: pass"));

    auto dot = drive({"bratteli", "--r", "1", "--N", "5", "--dot"});
    REQUIRE(dot.code == 0);
    REQUIRE(dot.out == mmat::dot_of(mmat::tower_diagram(alg::Params{1}, 4)));

    auto js = drive({"bratteli", "--r", "3", "--N", "4", "--json"});
    REQUIRE(js.code == 0);
    auto v = jio::parse(js.out.substr(0, js.out.size() - 1));
    REQUIRE(v.at("levels").items.size() == 5);
    REQUIRE(v.at("levels").items[4].items.size() == 4);
    REQUIRE(v.at("consistent").flag);
}

TEST_CASE("quiver text matches the presentation and dot the renderer", "[cli]") {
    auto r = drive({"quiver", "--r", "1"});
    REQUIRE(r.code == 0);
    REQUIRE(contains(r.out, "vertices: 1..2 (r=1)"));
    REQUIRE(contains(r.out, "arrow x_2: 2 -> 1"));
    REQUIRE(contains(r.out, "arrow y_1: 1 -> 2"));
    REQUIRE(contains(r.out, "grothendieck relation: 1 - t - t^2"));
    REQUIRE(contains(r.out, "structure class: 1 + t = t^-1 modulo the relation"));

    auto dot = drive({"quiver", "--r", "2", "--dot"});
    REQUIRE(dot.code == 0);
    REQUIRE(dot.out == quiver::dot_of(quiver::make_quiver(alg::Params{2})));

    auto js = drive({"quiver", "--r", "3", "--json"});
    REQUIRE(js.code == 0);
    auto v = jio::parse(js.out.substr(0, js.out.size() - 1));
    REQUIRE(v.at("arrows").items.size() == 7);
    REQUIRE(v.at("relation").items.size() == 5);
}

TEST_CASE("points iso answers match the library on both outcomes", "[cli]") {
    auto yes = drive({"points", "--r", "1", "iso", "--a", "01:01", "--b", ":01", "--json"});
    REQUIRE(yes.code == 0);
    auto vy = jio::parse(yes.out.substr(0, yes.out.size() - 1));
    REQUIRE(vy.at("tail_equal").flag);
    REQUIRE(vy.at("module_isomorphic").flag);
    REQUIRE(vy.at("a").text == ":01");

    auto no = drive({"points", "--r", "1", "iso", "--a", "0:10", "--b", ":10"});
    REQUIRE(no.code == 0);
    REQUIRE(contains(no.out, "tail equivalent: no"));
    REQUIRE(contains(no.out, "modules isomorphic in the quotient: no"));
}

TEST_CASE("points sphere and count runs", "[cli]") {
    auto sp = drive({"points", "--r", "1", "sphere", "--seq", "0:01", "--json"});
    REQUIRE(sp.code == 0);
    auto v = jio::parse(sp.out.substr(0, sp.out.size() - 1));
    REQUIRE(v.at("path_cyc").text.size() == 2);
    REQUIRE(v.at("vertices").items.size() == 9);

    auto wrong_r = drive({"points", "--r", "2", "sphere", "--seq", "0:01"});
    REQUIRE(wrong_r.code == 2);
    REQUIRE(contains(wrong_r.err, "r = 1"));

    auto ct = drive({"points", "--r", "1", "count", "--N", "4", "--json"});
    REQUIRE(ct.code == 0);
    auto vc = jio::parse(ct.out.substr(0, ct.out.size() - 1));
    auto census = pts::enumerate_f2(alg::Params{1}, 4);
    REQUIRE(vc.at("total").token == int_str(census.total));
    REQUIRE(vc.at("classes").items.size() == census.class_counts.size());
}

TEST_CASE("tiles report codes the marked point back and writes exact svg", "[cli]") {
    auto r = drive({"tiles", "--prefix", "0100"});
    REQUIRE(r.code == 0);
    REQUIRE(contains(r.out, "prefix: 0100"));
    REQUIRE(contains(r.out, "codes back to 0100"));
    REQUIRE(contains(r.out, "vertex coloring: consistent"));

    auto svg_out = drive({"tiles", "--prefix", "010", "--svg"});
    REQUIRE(svg_out.code == 0);
    REQUIRE(svg_out.out == tile::render_svg(tile::patch_from_prefix("010")));

    auto svg_merged = drive({"tiles", "--prefix", "0100", "--merge", "--svg"});
    REQUIRE(svg_merged.code == 0);
    REQUIRE(svg_merged.out ==
            tile::render_svg(tile::merge_to_kites_darts(tile::patch_from_prefix("0100").tiles)));

    const std::string path = "cli_test_patch.svg";
    auto svg_run = drive({"tiles", "--prefix", "010", "--out", path});
    REQUIRE(svg_run.code == 0);
    std::ifstream f(path, std::ios::binary);
    std::stringstream buf;
    buf << f.rdbuf();
    REQUIRE(buf.str() == tile::render_svg(tile::patch_from_prefix("010")));
    std::remove(path.c_str());

    auto merged = drive({"tiles", "--prefix", "000", "--merge", "--json"});
    REQUIRE(merged.code == 0);
    auto v = jio::parse(merged.out.substr(0, merged.out.size() - 1));
    REQUIRE(contains(merged.out, "\"kites\""));
    REQUIRE(v.at("matching_ok").flag);

    auto bad = drive({"tiles", "--prefix", "012"});
    REQUIRE(bad.code == 2);
    REQUIRE(contains(bad.err, "--prefix"));
}

TEST_CASE("repeated runs are byte identical", "[cli]") {
    std::vector<std::vector<std::string>> cmds = {
        {"bratteli", "--r", "2", "--N", "5", "--json"},
        {"points", "--r", "1", "count", "--N", "5"},
        {"tiles", "--prefix", "0100", "--merge"},
        {"k0", "--r", "3", "expand", "--class", "5", "--json"},
    };
    for (const auto& cmd : cmds) {
        auto first = drive(cmd);
        auto second = drive(cmd);
        REQUIRE(first.code == second.code);
        REQUIRE(first.out == second.out);
        REQUIRE(first.err == second.err);
    }
}

TEST_CASE("pinned quick verify scoped to r=2 passes", "[cli]") {
    auto r = drive({"verify", "--r", "2", "--level", "quick"});
    REQUIRE(r.code == 0);
    REQUIRE(contains(r.out, "check c01-dimension-tables: pass"));
    REQUIRE(contains(r.out, "check c12-cli-determinism: pass"));
    REQUIRE(contains(r.out, "verdict: 12/12 pass"));
}

TEST_CASE("verify json lists checks sorted by id without timing fields", "[cli]") {
    auto r = drive({"verify", "--r", "1", "--level", "quick", "--json"});
    REQUIRE(r.code == 0);
    auto v = jio::parse(r.out.substr(0, r.out.size() - 1));
    REQUIRE(v.at("pass").flag);
    const auto& checks = v.at("checks").items;
    REQUIRE(checks.size() == 12);
    for (std::size_t i = 1; i < checks.size(); ++i)
        REQUIRE(checks[i - 1].at("id").text < checks[i].at("id").text);
    for (const auto& c : checks) REQUIRE_THROWS(c.at("ms"));

    auto bad_level = drive({"verify", "--level", "brisk"});
    REQUIRE(bad_level.code == 2);
    REQUIRE(contains(bad_level.err, "--level"));
}
