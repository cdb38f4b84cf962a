#include "qsft/realization.hpp"
#include "qsft/metric.hpp"

#include "fiber_oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <map>

#include <cmath>
#include <numbers>

using namespace qsft;
using namespace qsft::testing;

namespace {

double slack(const ZetaValue& z) { return z.error_bound.get_d(); }

LassoRay qray(const EmbeddingPair& p, const std::string& text) { return LassoRay::parse(p.quotient().graph, text); }

}  // namespace

TEST_CASE("zeta on worked rays") {
    const auto& p = full3();
    const ZetaValue one = zeta_approx(p, ray(p, ";a"), 10);
    CHECK(std::abs(one.value - std::complex<double>(1, 0)) < 1e-15);
    const ZetaValue z = zeta_approx(p, ray(p, "c;a"), 10);
    CHECK(std::abs(z.value - std::complex<double>(1.0 / 16, 0)) < 1e-15);
    // (;b) is the flip of (;a) and lands on the same point.
    CHECK(std::abs(zeta_approx(p, ray(p, ";b"), 10).value - one.value) < 1e-15);
    // Level chain of (a,b,c;a): n = 3, θ = 1/4; tail θ = 0.
    const LevelChain c = level_chain(p, ray(p, "a,b,c;a"));
    REQUIRE(c.levels.size() == 1);
    CHECK(c.levels[0].n == 3);
    CHECK(c.levels[0].theta.turns == Rational(1, 4));
    const std::complex<double> want = 0.75 * std::complex<double>(0, 1) + std::ldexp(1.0, -6);
    CHECK(std::abs(zeta_approx(p, ray(p, "a,b,c;a"), 10).value - want) < 1e-15);
}

TEST_CASE("zeta bounds, Lipschitz and recursion identity") {
    std::mt19937_64 rng(81);
    for (const EmbeddingPair* p : {&full3(), &two_vertex()}) {
        for (int i = 0; i < 300; ++i) {
            const LassoRay a = random_finite_lasso(*p, rng);
            const LassoRay b = random_finite_lasso(*p, rng);
            const ZetaValue za = zeta_approx(*p, a, 30), zb = zeta_approx(*p, b, 30);
            CHECK(std::abs(za.value) <= 1 + slack(za));
            if (kappa(*p, a) == kappa(*p, b)) {
                const double d = d_stratum(*p, a, b).get_d();
                CHECK(std::abs(za.value - zb.value) <= 8 * d + slack(za) + slack(zb) + 1e-14);
            }
            if (kappa(*p, a).count > 0) {
                const std::size_t n = first_nonxi(*p, a);
                const double th = 2 * std::numbers::pi * theta(*p, a).turns.get_d();
                const ZetaValue zs = zeta_approx(*p, shift(a, n), 30);
                const std::complex<double> lhs = (1 - std::ldexp(1.0, 1 - static_cast<int>(n))) * std::polar(1.0, th);
                const std::complex<double> diff = za.value - lhs;
                const std::complex<double> rhs = std::ldexp(1.0, -3 - static_cast<int>(n)) * zs.value;
                CHECK(std::abs(diff - rhs) <= slack(za) + slack(zs) + 1e-14);
            }
        }
    }
}

TEST_CASE("zeta on infinite-kappa rays carries a certified error") {
    const auto& p = full3();
    const LassoRay x = ray(p, ";a,c");
    const ZetaValue coarse = zeta_approx(p, x, 10), fine = zeta_approx(p, x, 30);
    CHECK(coarse.error_bound > fine.error_bound);
    CHECK(std::abs(coarse.value - fine.value) <= slack(coarse) + slack(fine));
    CHECK(std::abs(fine.value) <= 1 + slack(fine));
}

TEST_CASE("circle specifications reproduce the FULL3 picture") {
    const auto& p = full3();
    const CircleEnumeration e = circle_specs(p, 1, 4, Rational(0));
    REQUIRE(e.specs.size() == 16);
    CHECK(e.specs[0].k() == 0);
    CHECK(e.specs[0].radius == 1);
    std::map<std::size_t, int> counts;
    for (std::size_t i = 1; i < e.specs.size(); ++i) {
        const CircleSpec& s = e.specs[i];
        REQUIRE(s.k() == 1);
        const std::size_t n = s.levels[0].n;
        ++counts[n];
        CHECK(s.radius == pow2_neg(3 + n));
        // θ is a multiple of 2^{-(n-1)}.
        const Rational j = s.levels[0].theta.turns * pow2(n - 1);
        CHECK(j.get_den() == 1);
        const std::complex<double> want =
            (1 - std::ldexp(1.0, 1 - static_cast<int>(n))) * std::polar(1.0, 2 * std::numbers::pi * j.get_d() / std::ldexp(1.0, static_cast<int>(n) - 1));
        CHECK(std::abs(s.center() - want) < 1e-9);
    }
    CHECK(counts == std::map<std::size_t, int>{{1, 1}, {2, 2}, {3, 4}, {4, 8}});
    // Sorted by (k, n-chain, θ-chain).
    CHECK(e.specs[1].levels[0].n == 1);
    CHECK(e.specs[2].levels[0].theta.turns == 0);
    CHECK(e.specs[3].levels[0].theta.turns == Rational(1, 2));
}

TEST_CASE("circle radii equal the product of recursion scale factors") {
    const auto& p = full3();
    const CircleEnumeration e = circle_specs(p, 3, 7, Rational(0));
    for (const auto& s : e.specs) {
        Rational scale = 1;
        for (const auto& l : s.levels) scale *= pow2_neg(3 + l.n);
        CHECK(s.radius == scale);
    }
    CHECK(e.specs.size() > 16);
}

TEST_CASE("pruning reports the omitted radius mass") {
    const auto& p = full3();
    const CircleEnumeration all = circle_specs(p, 1, 4, Rational(0));
    const CircleEnumeration pruned = circle_specs(p, 1, 4, pow2_neg(5));
    CHECK(pruned.specs.size() + pruned.pruned == all.specs.size());
    CHECK(pruned.pruned == 12);
    CHECK(pruned.pruned_radius_sum == 4 * pow2_neg(6) + 8 * pow2_neg(7));
}

TEST_CASE("FULL2 renders a single circle and output is deterministic") {
    const std::string svg = render_svg(full2(), 3, 6, Rational(0), 100);
    std::size_t count = 0;
    for (std::size_t pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++count;
    CHECK(count == 1);
    const std::string a = render_svg(full3(), 1, 4, Rational(0), 256);
    CHECK(a == render_svg(full3(), 1, 4, Rational(0), 256));
    CHECK(a.find("<circle cx=\"272.000000000\" cy=\"272.000000000\" r=\"256.000000000\"/>") != std::string::npos);
}

TEST_CASE("fiber classification examples") {
    const auto& p = full3();
    CHECK(fiber_classify(p, qray(p, ";h'")) == FiberClass{FiberClass::Kind::Circles, 1});
    CHECK(fiber_classify(p, qray(p, "h',c';h'")) == FiberClass{FiberClass::Kind::Circles, 2});
    CHECK(fiber_classify(p, qray(p, ";c'")) == FiberClass{FiberClass::Kind::Points, 1});
    CHECK(fiber_classify(p, qray(p, "h',h';c'")) == FiberClass{FiberClass::Kind::Points, 4});
    CHECK(fiber_classify(p, qray(p, ";c',h'")).kind == FiberClass::Kind::TotallyDisconnected);
    CHECK(fiber_classify(p, qray(p, ";h'")).to_string() == "Circles(1)");
}

TEST_CASE("fiber classification agrees with the sampling oracle") {
    const auto& p = full3();
    const FiberOracle oracle(p);
    for (const char* text : {";h'", "h',c';h'", ";c'", "h';c'", ";c',h'", "c',h',c';h'", "h',h',c';c'", "c';h',h',c'"}) {
        const LassoRay base = qray(p, text);
        CHECK_MESSAGE(fiber_classify(p, base) == oracle.classify(base), text);
    }
}

TEST_CASE("discrete injectivity check") {
    const InjectivityReport r = embedding_injectivity_check(full3(), 6);
    CHECK(r.collisions == 0);
    CHECK(r.lassos > r.classes);  // flipped pairs share a class
    const InjectivityReport t = embedding_injectivity_check(two_vertex(), 3, 2);
    CHECK(t.collisions == 0);
}
