#pragma once

#include "qsft/metric.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsft {

/// Eventually periodic bi-infinite path: ...past past [core] future future...
/// with core[0] at position `start`.
class BiLasso {
public:
    BiLasso(PathWord past, PathWord core, PathWord future, long start);

    const PathWord& past() const { return past_; }
    const PathWord& core() const { return core_; }
    const PathWord& future() const { return future_; }
    long start() const { return start_; }
    /// One past the last core position.
    long end() const { return start_ + static_cast<long>(core_.size()); }

    Index at(long n) const;

    /// The one-sided ray (x_s, x_{s+1}, ...).
    LassoRay ray_from(long s) const;

    bool valid_in(const Graph& g) const;

    /// Equality of the represented bi-infinite paths.
    bool operator==(const BiLasso& other) const;

    /// Literal "past;left|right;future"; without '|' the core starts at position 1.
    static BiLasso parse(const Graph& g, std::string_view text);
    std::string to_string(const Graph& g) const;

private:
    PathWord past_, core_, future_;
    long start_;
};

BiLasso shift(const BiLasso& x);
BiLasso inverse_shift(const BiLasso& x);

/// Truncated point of the inverse limit: levels x^0..x^M.
struct Tower {
    std::vector<ClassPoint> levels;
    std::size_t depth() const { return levels.size() - 1; }
    bool operator==(const Tower&) const = default;
};

/// Depth used for the levelwise class-distance enclosures.
inline constexpr std::size_t kTowerMetricDepth = 32;

Tower pi_xi_tower(const EmbeddingPair& p, const BiLasso& x, std::size_t M);

/// Levelwise σ_ξ.
Tower shift_tower(const EmbeddingPair& p, const Tower& x);

/// σ_ξ(x^{n+1}) = x^n for every level.
bool tower_consistent(const EmbeddingPair& p, const Tower& x);

MetricInterval tower_distance(const EmbeddingPair& p, const Tower& x, const Tower& y,
                              std::size_t N = kTowerMetricDepth);

/// Requires tower_distance(x, y).hi <= 1/2.
Tower bracket(const EmbeddingPair& p, const Tower& x, const Tower& y);

struct PairWitness {
    enum class Case { Equal, TotalSwap, Pivot };
    Case kind = Case::Equal;
    int superscript = 0;                 ///< x uses ξ^i, y uses ξ^{1-i} on the swapped part
    long m = 0;                          ///< pivot position (case c)
    bool pivot_nonxi = false;            ///< pivot edge is a shared non-ξ edge
    std::optional<BiLasso> h_path;       ///< case b: the H bi-path z
    std::optional<LassoRay> h_tail;      ///< case c: z from the first swapped position on
};

std::optional<PairWitness> pair_related(const EmbeddingPair& p, const BiLasso& x, const BiLasso& y);

struct TransversalSpec {
    PathWord cycle;  ///< minimal cycle avoiding ξ(H¹)
    std::size_t period_count() const { return cycle.size(); }
};

TransversalSpec transversal_spec(const EmbeddingPair& p);
bool membership_Yu(const EmbeddingPair& p, const TransversalSpec& spec, const BiLasso& x);
bool membership_Ys(const EmbeddingPair& p, const TransversalSpec& spec, const BiLasso& x);

}  // namespace qsft
