#pragma once

#include "qsft/symbolic.hpp"

#include <complex>
#include <string>
#include <vector>

namespace qsft {

struct ZetaValue {
    std::complex<double> value;
    Rational error_bound;
};

/// Gap to the next non-ξ edge and the angle of the ξ-run before it.
struct Level {
    std::size_t n = 0;
    Angle theta;
    bool operator==(const Level&) const = default;
};

/// Level data of a κ-finite ray: one Level per non-ξ edge, then the angle of the ξ-tail.
struct LevelChain {
    std::vector<Level> levels;
    Angle tail;
};

/// Throws when κ(x) is infinite.
LevelChain level_chain(const EmbeddingPair& p, const LassoRay& x);

/// ζ evaluated from level data.
std::complex<double> zeta_from_levels(const std::vector<Level>& levels, const Angle& tail);

/// ζ_ξ(x); exact up to floating slack for κ-finite rays, otherwise evaluated on
/// the depth-N stratum approximant with the Lipschitz error added.
ZetaValue zeta_approx(const EmbeddingPair& p, const LassoRay& x, std::size_t N);

/// ζ-image of the rays sharing the given level data: a circle.
struct CircleSpec {
    std::vector<Level> levels;
    Rational radius;  ///< 2^{-3k - (n_1 + ... + n_k)}
    std::size_t k() const { return levels.size(); }
    std::complex<double> center() const;
};

struct CircleEnumeration {
    std::vector<CircleSpec> specs;  ///< sorted by (k, n-chain, θ-chain)
    std::size_t pruned = 0;
    Rational pruned_radius_sum;
};

inline constexpr std::size_t kCircleStateCap = 2'000'000;

CircleEnumeration circle_specs(const EmbeddingPair& p, std::size_t max_k, std::size_t max_depth,
                               const Rational& min_radius);

struct FiberClass {
    enum class Kind { Circles, Points, TotallyDisconnected };
    Kind kind = Kind::Points;
    std::size_t count = 0;  ///< unused for TotallyDisconnected
    bool operator==(const FiberClass&) const = default;
    std::string to_string() const;
};

/// Shape of ρ_ξ^{-1}(base) for a ray over the quotient graph.
FiberClass fiber_classify(const EmbeddingPair& p, const LassoRay& base);

std::string render_svg(const EmbeddingPair& p, std::size_t max_k, std::size_t max_depth,
                       const Rational& min_radius, double scale);

struct InjectivityReport {
    std::size_t lassos = 0;
    std::size_t classes = 0;
    std::size_t collisions = 0;  ///< pairs of distinct classes with equal (τ-image, level data)
};

inline constexpr std::size_t kInjectivityLassoCap = 1'000'000;

/// Lassos with prefix length `depth` and cycle length at most `max_cycle`.
InjectivityReport embedding_injectivity_check(const EmbeddingPair& p, std::size_t depth, std::size_t max_cycle = 1);

}  // namespace qsft
