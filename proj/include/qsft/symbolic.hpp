#pragma once

#include "qsft/embedding.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace qsft {

/// Eventually periodic one-sided path: prefix followed by a repeated cycle.
///
/// Stored in normal form (primitive cycle, shortest prefix), so equality of
/// the represented infinite paths is component equality.
class LassoRay {
public:
    LassoRay(PathWord prefix, PathWord cycle);

    const PathWord& prefix() const { return prefix_; }
    const PathWord& cycle() const { return cycle_; }

    /// Edge at 1-indexed position n.
    Index at(std::size_t n) const;

    bool valid_in(const Graph& g) const;

    bool operator==(const LassoRay&) const = default;

    /// Literal form "e1,e2;c1,c2".
    std::string to_string(const Graph& g) const;
    static LassoRay parse(const Graph& g, std::string_view text);

private:
    PathWord prefix_;
    PathWord cycle_;
};

/// Lexicographic comparison of the infinite edge sequences.
std::strong_ordering compare_rays(const LassoRay& a, const LassoRay& b);

/// Length of the longest common prefix; nullopt when the rays are equal.
std::optional<std::size_t> common_prefix(const LassoRay& a, const LassoRay& b);

/// Point of the circle stored in turns, reduced to [0, 1).
struct Angle {
    Rational turns;
    Angle() = default;
    explicit Angle(const Rational& t) : turns(frac(t)) {}
    bool operator==(const Angle& o) const { return turns == o.turns; }
};

/// Number of non-ξ positions; infinite when the cycle has one.
struct Kappa {
    bool infinite = false;
    std::size_t count = 0;
    bool operator==(const Kappa&) const = default;
    static Kappa finite(std::size_t n) { return {false, n}; }
    static Kappa inf() { return {true, 0}; }
};

/// Canonical representative of a flip class.
struct ClassPoint {
    LassoRay rep;
    bool operator==(const ClassPoint&) const = default;
};

Kappa kappa(const EmbeddingPair& p, const LassoRay& x);

/// Non-ξ edges among positions 1..N.
std::size_t nonxi_count(const EmbeddingPair& p, const LassoRay& x, std::size_t N);

/// Position of the first non-ξ edge; throws when κ = 0.
std::size_t first_nonxi(const EmbeddingPair& p, const LassoRay& x);

Angle theta(const EmbeddingPair& p, const LassoRay& x);

/// The unique other member of x's class, if any.
std::optional<LassoRay> flip(const EmbeddingPair& p, const LassoRay& x);

ClassPoint canonical(const EmbeddingPair& p, const LassoRay& x);

LassoRay shift(const LassoRay& x, std::size_t n = 1);

/// Image of x in the quotient graph.
LassoRay tau_image(const EmbeddingPair& p, const LassoRay& x);

/// Agrees with x on positions 1..N and has exactly k non-ξ edges.
LassoRay stratum_approximant(const EmbeddingPair& p, const LassoRay& x, std::size_t N, std::size_t k);

/// A preimage z of x under the shift, close to y: z = (e, x'_1, x'_2, ...)
/// where e lies over y's first quotient edge and x' represents x's class.
/// Among these candidates the one nearest to y is returned, preferring
/// e = y_1 and x' = x on ties.
LassoRay lift_preimage(const EmbeddingPair& p, const LassoRay& x, const LassoRay& y);

}  // namespace qsft
