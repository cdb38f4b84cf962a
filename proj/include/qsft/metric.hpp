#pragma once

#include "qsft/symbolic.hpp"

namespace qsft {

/// Closed rational interval certified to contain a distance.
struct MetricInterval {
    Rational lo;
    Rational hi;
    bool exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

/// Depth used when lift_preimage compares candidate preimages.
inline constexpr std::size_t kLiftDepth = 32;

/// 2^{-m}, m the common prefix length; 0 for equal rays.
Rational d_shift(const LassoRay& x, const LassoRay& y);

/// Distance in turns on the circle, in [0, 1/2].
Rational circle_distance(const Angle& s, const Angle& t);

/// d_{G_ξ}(τx, τy).
Rational d_quotient(const EmbeddingPair& p, const LassoRay& x, const LassoRay& y);

/// λ_k(x, y) for κ(x) = κ(y) = k finite.
Rational lambda(const EmbeddingPair& p, const LassoRay& x, const LassoRay& y);

/// d_k(x, y) = d_{G_ξ}(τx, τy) + λ_k(x, y); requires equal finite κ.
Rational d_stratum(const EmbeddingPair& p, const LassoRay& x, const LassoRay& y);

/// Enclosure of the extended pseudo-metric d(x, y) with width at most 6·2^{-N}.
MetricInterval d_extended(const EmbeddingPair& p, const LassoRay& x, const LassoRay& y, std::size_t N);

/// Quotient metric between classes.
MetricInterval d_class(const EmbeddingPair& p, const ClassPoint& x, const ClassPoint& y, std::size_t N);

}  // namespace qsft
