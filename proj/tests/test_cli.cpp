#include "qsft/bundle.hpp"
#include "qsft/cli.hpp"
#include "qsft/invariants.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qsft;
using namespace qsft::testing;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string parse_error(std::string_view text) {
    try {
        parse_bundle(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

constexpr std::string_view kTiny =
    "graph G\nvertex u\nedge a u u\nedge b u u\nedge c u u\n"
    "graph H\nvertex p\nedge h p p\n"
    "map vertex p u\nmap xi0 h a\nmap xi1 h b\n";

}  // namespace

TEST_CASE("bundle parser") {
    const SeedBundle b = parse_bundle(kTiny);
    CHECK(b.pair.g().edge_count() == 3);
    CHECK(b.pair.report().standing());
    CHECK(parse_bundle(std::string("# comment\n\nname tiny\n") + std::string(kTiny)).name == "tiny");
}

TEST_CASE("bundle parse errors carry line numbers") {
    CHECK(parse_error("") == "line 0: empty bundle");
    CHECK(parse_error("# only a comment\n") == "line 0: empty bundle");
    CHECK(parse_error("graph G\nvertex u\nedge a u w\n").rfind("line 3:", 0) == 0);
    CHECK(parse_error("graph G\nvertex u\nvertex u\n").rfind("line 3:", 0) == 0);
    CHECK(parse_error("graph G\nvertex u\nedge a u u\nedge a u u\n").rfind("line 4:", 0) == 0);
    CHECK(parse_error("vertex u\n").rfind("line 1:", 0) == 0);
    CHECK(parse_error("graph K\n").rfind("line 1:", 0) == 0);
    std::string undeclared(kTiny);
    undeclared += "map xi0 h zz\n";
    CHECK(parse_error(undeclared).rfind("line 12:", 0) == 0);
    CHECK(parse_error("graph G\nfrobnicate\n").rfind("line 2:", 0) == 0);
}

TEST_CASE("bundle formatting round trips") {
    for (const EmbeddingPair* p : {&full2(), &full3(), &two_vertex()}) {
        const std::string text = format_bundle(*p, "copy");
        const SeedBundle b = parse_bundle(text);
        CHECK(b.name == "copy");
        CHECK(format_bundle(b.pair, "copy") == text);
        CHECK(ruelle_k_theory(b.pair).k0_Rs == ruelle_k_theory(*p).k0_Rs);
    }
}

TEST_CASE("check command") {
    const Result f2 = run_cli({"check", bundle_path("full2.bundle")});
    CHECK(f2.code == kExitDomain);
    CHECK(f2.out.find("H2 fails at h") != std::string::npos);
    CHECK(f2.out.find("H0 holds") != std::string::npos);
    const Result f3 = run_cli({"check", bundle_path("full3.bundle")});
    CHECK(f3.code == kExitOk);
    CHECK(f3.out.find("standing hypotheses: hold") != std::string::npos);
}

TEST_CASE("usage and domain failures map to exit codes") {
    CHECK(run_cli({}).code == kExitUsage);
    CHECK(run_cli({"nosuch"}).code == kExitUsage);
    CHECK(run_cli({"check"}).code == kExitUsage);
    CHECK(run_cli({"invariants", bundle_path("full3.bundle"), "--format", "xml"}).code == kExitUsage);
    CHECK(run_cli({"check", bundle_path("missing.bundle")}).code == kExitUsage);
    CHECK(run_cli({"distance", bundle_path("full3.bundle"), "c;a", "q;a"}).code == kExitUsage);
    CHECK(run_cli({"synthesize", "--k1", "Z/2", "--k0tor", "Z"}).code == kExitUsage);
    CHECK(run_cli({"--help"}).code == kExitOk);
}

TEST_CASE("invariants command") {
    const Result r = run_cli({"invariants", bundle_path("full3.bundle"), "--format", "kv"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("k0_Rs = Z^1 (+) Z/2\n") != std::string::npos);
    CHECK(r.out.find("k1_Rs = Z^1\n") != std::string::npos);
    CHECK(r.out.find("k0_Ru = Z^1 (+) Z/2\n") != std::string::npos);
    CHECK(r.out.find("k1_Ru = Z^1\n") != std::string::npos);
}

TEST_CASE("distance, zeta and fibers commands") {
    const std::string f3 = bundle_path("full3.bundle");
    const Result d = run_cli({"distance", f3, "c;a", "c,b;a"});
    CHECK(d.code == kExitOk);
    CHECK(d.out == "1/16\n");
    const Result z = run_cli({"zeta", f3, "c;a"});
    CHECK(z.code == kExitOk);
    CHECK(z.out.find("zeta = 0.0625") != std::string::npos);
    CHECK(run_cli({"fibers", f3, ";c'"}).out == "Points(1)\n");
    CHECK(run_cli({"fibers", f3, ";c',h'"}).out == "TotallyDisconnected\n");
    CHECK(run_cli({"fibers", f3, "h',c';h'"}).out == "Circles(2)\n");
}

TEST_CASE("render and synthesize write files") {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string svg = (dir / "qsft_cli_test.svg").string();
    const Result r = run_cli({"render", bundle_path("full3.bundle"), "--max-k", "1", "--depth", "4", "-o", svg});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("circles = 16") != std::string::npos);
    std::ifstream in(svg);
    const std::string text((std::istreambuf_iterator<char>(in)), {});
    CHECK(text.rfind("<?xml", 0) == 0);
    std::remove(svg.c_str());

    const std::string bundle = (dir / "qsft_cli_test.bundle").string();
    const Result s = run_cli({"synthesize", "--k1", "Z (+) Z/3", "--k0tor", "Z/4", "-o", bundle});
    CHECK(s.code == kExitOk);
    const SeedBundle b = load_bundle(bundle);
    const KTheoryTable k = ruelle_k_theory(b.pair);
    CHECK(k.k1_Rs == FgAbelianGroup::parse("Z (+) Z/3"));
    CHECK(k.k0_Rs == FgAbelianGroup::parse("Z (+) Z/4"));
    CHECK(run_cli({"check", bundle}).code == kExitOk);
    std::remove(bundle.c_str());
}

TEST_CASE("complex command reports the containment failure") {
    const Result r = run_cli({"complex", bundle_path("full3.bundle")});
    CHECK(r.code == kExitDomain);
    CHECK(r.out.find("containments = fail") != std::string::npos);
    CHECK(r.out.find("quotient_rank = 1") != std::string::npos);
}
