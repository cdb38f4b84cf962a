#include "qsft/symbolic.hpp"
#include "qsft/metric.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace qsft;
using namespace qsft::testing;

TEST_CASE("lasso normal form") {
    const auto& p = full3();
    const Index a = edge(p, "a"), b = edge(p, "b");
    CHECK(LassoRay({a, b, a, b}, {a, b}) == LassoRay({}, {a, b}));
    CHECK(LassoRay({b}, {a, a, a}) == LassoRay({b}, {a}));
    CHECK(LassoRay({a, b}, {a, b, a, b}).cycle().size() == 2);
    CHECK(LassoRay({b, a}, {b, a}) == LassoRay({}, {b, a}));
    CHECK(LassoRay({b, a}, {b, a}).prefix().empty());
    CHECK(LassoRay({a}, {b, a}) == LassoRay({}, {a, b}));
    CHECK_THROWS_AS(LassoRay({a}, {}), Error);
}

TEST_CASE("lasso positions are 1-indexed") {
    const auto& p = full3();
    const LassoRay x = ray(p, "c;a,b");
    CHECK(x.at(1) == edge(p, "c"));
    CHECK(x.at(2) == edge(p, "a"));
    CHECK(x.at(3) == edge(p, "b"));
    CHECK(x.at(4) == edge(p, "a"));
}

TEST_CASE("lasso literals") {
    const auto& p = full3();
    CHECK(ray(p, "(c,b;[a])") == ray(p, "c,b;a"));
    CHECK(ray(p, ";a").to_string(p.g()) == ";a");
    CHECK(ray(p, "c,b;a").to_string(p.g()) == "c,b;a");
    CHECK_THROWS_AS(ray(p, "a,b"), ParseError);
    CHECK_THROWS_AS(ray(p, "a;"), ParseError);
    CHECK_THROWS_AS(ray(p, "a;b;c"), ParseError);
    CHECK_THROWS_AS(ray(p, "z;a"), ParseError);
}

TEST_CASE("common prefix and ray order") {
    const auto& p = full3();
    CHECK(common_prefix(ray(p, "c;a"), ray(p, "c,b;a")) == 1u);
    CHECK_FALSE(common_prefix(ray(p, ";a"), ray(p, "a,a;a")));
    CHECK(common_prefix(ray(p, ";a,b"), ray(p, ";a,b,a,b,a,c")) == 5u);
    CHECK(compare_rays(ray(p, ";a"), ray(p, ";b")) == std::strong_ordering::less);
    CHECK(compare_rays(ray(p, "a;b"), ray(p, "a;b")) == std::strong_ordering::equal);
}

TEST_CASE("kappa, first non-xi and theta on examples") {
    const auto& p = full3();
    CHECK(kappa(p, ray(p, ";a")) == Kappa::finite(0));
    CHECK(kappa(p, ray(p, "c,a,c;b")) == Kappa::finite(2));
    CHECK(kappa(p, ray(p, ";a,c")).infinite);
    CHECK(first_nonxi(p, ray(p, "a,b,c;a")) == 3);
    CHECK_THROWS_AS(first_nonxi(p, ray(p, ";a")), Error);
    CHECK(nonxi_count(p, ray(p, ";a,c"), 5) == 2);

    CHECK(theta(p, ray(p, ";a")).turns == 0);
    CHECK(theta(p, ray(p, ";b")).turns == 0);  // 1 ≡ 0 turns
    CHECK(theta(p, ray(p, "b;a")).turns == Rational(1, 2));
    CHECK(theta(p, ray(p, "a,b,c;a")).turns == Rational(1, 4));
    CHECK(theta(p, ray(p, ";b,a")).turns == Rational(2, 3));
    CHECK(theta(p, ray(p, "a;a,b")).turns == Rational(1, 6));
}

TEST_CASE("theta agrees with a truncated binary expansion") {
    std::mt19937_64 rng(17);
    for (const EmbeddingPair* p : {&full3(), &two_vertex()}) {
        for (int i = 0; i < 300; ++i) {
            const LassoRay x = random_finite_lasso(*p, rng);
            // Sum ε(x_j) 2^{-j} over the ξ-run; for κ = 0 truncate at 200 positions.
            double sum = 0;
            for (std::size_t j = 1; j <= 200; ++j) {
                if (!p->in_xi(x.at(j))) break;
                if (p->epsilon(x.at(j))) sum += std::ldexp(1.0, -static_cast<int>(j));
            }
            const double expected = sum - std::floor(sum + 1e-15);
            const double got = theta(*p, x).turns.get_d();
            const double diff = std::abs(expected - got);
            CHECK(std::min(diff, 1 - diff) < 1e-12);
        }
    }
}

TEST_CASE("flip on examples") {
    const auto& p = full3();
    CHECK(flip(p, ray(p, ";a")) == ray(p, ";b"));
    CHECK(flip(p, ray(p, "c;a")) == ray(p, "c;b"));
    CHECK(flip(p, ray(p, "c,a;b")) == ray(p, "c,b;a"));
    CHECK(flip(p, ray(p, "c,b,a;b")) == ray(p, "c,b,b;a"));
    CHECK(flip(p, ray(p, "c,b;a")) == ray(p, "c,a;b"));
    CHECK_FALSE(flip(p, ray(p, ";a,b")));
    CHECK_FALSE(flip(p, ray(p, ";c")));
    CHECK(canonical(p, ray(p, "c,b;a")).rep == ray(p, "c,a;b"));
}

TEST_CASE("flip is an involution preserving tau, kappa and the level data") {
    std::mt19937_64 rng(23);
    for (const EmbeddingPair* p : {&full3(), &two_vertex()}) {
        for (int i = 0; i < 500; ++i) {
            const LassoRay x = random_finite_lasso(*p, rng);
            const auto f = flip(*p, x);
            if (!f) continue;
            CHECK(*f != x);
            CHECK(f->valid_in(p->g()));
            CHECK(flip(*p, *f) == x);
            CHECK(tau_image(*p, *f) == tau_image(*p, x));
            CHECK(kappa(*p, *f) == kappa(*p, x));
            CHECK(theta(*p, *f) == theta(*p, x));
            CHECK(canonical(*p, *f) == canonical(*p, x));
            CHECK(d_extended(*p, x, *f, 16).hi == 0);
        }
    }
}

TEST_CASE("shift and tau image") {
    const auto& p = full3();
    CHECK(shift(ray(p, "c,b;a")) == ray(p, "b;a"));
    CHECK(shift(ray(p, "c;a,b"), 3) == ray(p, ";a,b"));
    const LassoRay t = tau_image(p, ray(p, "c,b;a"));
    CHECK(t.to_string(p.quotient().graph) == "c';h'");
}

TEST_CASE("stratum approximant") {
    std::mt19937_64 rng(29);
    const auto& p = full3();
    for (int i = 0; i < 200; ++i) {
        PathWord pre = random_walk(p.g(), rng, rng() % 4);
        PathWord cyc = random_walk(p.g(), rng, 1 + rng() % 3);
        const LassoRay x(pre, cyc);
        const std::size_t N = 1 + rng() % 8;
        const std::size_t j = nonxi_count(p, x, N);
        for (std::size_t k = j; k <= j + 2; ++k) {
            const LassoRay a = stratum_approximant(p, x, N, k);
            CHECK(kappa(p, a) == Kappa::finite(k));
            for (std::size_t n = 1; n <= N; ++n) CHECK(a.at(n) == x.at(n));
        }
        if (j > 0) CHECK_THROWS_AS(stratum_approximant(p, x, N, j - 1), Error);
    }
    CHECK_THROWS_AS(stratum_approximant(p, ray(p, ";a"), 0, 0), Error);
}

TEST_CASE("lift_preimage example and postconditions") {
    const auto& p = full3();
    CHECK(lift_preimage(p, ray(p, "b;a"), ray(p, ";a")) == ray(p, "a,b;a"));
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const LassoRay x = random_finite_lasso(p, rng);
        const LassoRay y = random_finite_lasso(p, rng);
        const LassoRay z = lift_preimage(p, x, y);
        CHECK(canonical(p, shift(z)) == canonical(p, x));
        CHECK(tau_image(p, z).at(1) == tau_image(p, y).at(1));
    }
}
