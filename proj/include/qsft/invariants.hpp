#pragma once

#include "qsft/embedding.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsft {

/// U·A·V = D with U, V unimodular and D diagonal, d1 | d2 | ...
struct SmithDecomposition {
    IntMatrix U, D, V;
    /// Nonzero diagonal entries, in order.
    std::vector<Integer> factors() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& A);

/// Finitely generated abelian group Z^rank ⊕ Z/d1 ⊕ ... with d1 | d2 | ..., di >= 2.
class FgAbelianGroup {
public:
    FgAbelianGroup() = default;
    /// Canonicalizes an arbitrary list of cyclic orders (0 = Z, 1 = trivial).
    static FgAbelianGroup from_cyclic(std::size_t rank, const std::vector<Integer>& orders);
    static FgAbelianGroup free(std::size_t rank) { return from_cyclic(rank, {}); }

    std::size_t rank() const { return rank_; }
    const std::vector<Integer>& torsion() const { return torsion_; }
    bool trivial() const { return rank_ == 0 && torsion_.empty(); }

    FgAbelianGroup operator+(const FgAbelianGroup& other) const;  ///< direct sum
    bool operator==(const FgAbelianGroup&) const = default;

    /// "Z^r (+) Z/d1 (+) ..." or "0".
    std::string to_string() const;
    /// Accepts the rendering above plus "Z", "Z^r", "Z/d", "0", joined by "(+)" or "+".
    static FgAbelianGroup parse(std::string_view text);

private:
    std::size_t rank_ = 0;
    std::vector<Integer> torsion_;
};

FgAbelianGroup cokernel(const IntMatrix& A);
std::size_t matrix_rank(const IntMatrix& A);
std::size_t kernel_rank(const IntMatrix& A);

/// Stationary inductive limit lim(Z^d, M) with its canonical automorphism.
struct MarkedGroupPresentation {
    std::size_t size = 0;
    IntMatrix matrix;
    std::string label;
};

enum class Variant { Stable, Unstable };

MarkedGroupPresentation dimension_group(const Graph& g, Variant v);

FgAbelianGroup bowen_franks(const Graph& g);

struct KTheoryTable {
    MarkedGroupPresentation k0_S, k1_S, k0_U, k1_U;
    FgAbelianGroup k0_Rs, k1_Rs, k0_Ru, k1_Ru;
    bool valid = true;  ///< standing hypotheses hold
};

KTheoryTable ruelle_k_theory(const EmbeddingPair& p);

struct HomologyRow {
    Variant variant;
    int degree;
    MarkedGroupPresentation group;
};

struct HomologyTable {
    std::vector<HomologyRow> rows;  ///< nonzero rows; every other degree is 0
    std::optional<MarkedGroupPresentation> at(Variant v, int degree) const;
};

HomologyTable homology_table(const EmbeddingPair& p);

/// Pair of words of equal length (a point of G^n × G^n).
using PairWord = std::pair<PathWord, PathWord>;

struct PairComplex {
    static constexpr std::size_t kBlock = 7;
    Graph block_graph;                                   ///< G^7
    std::array<std::vector<PairWord>, 7> vertex_cells;   ///< V0..V6, pairs of 6-words
    std::array<std::vector<PairWord>, 8> edge_cells;     ///< E0..E7, pairs of 7-words
    std::size_t overlapping_vertices = 0;                ///< words listed in two cells
    std::size_t overlapping_edges = 0;
    /// Per cell j: edges whose initial / terminal pair-word misses the required vertex cell.
    std::array<std::size_t, 8> initial_violations{};
    std::array<std::size_t, 8> terminal_violations{};
    std::size_t boundary_nonzero = 0;  ///< V6 generators with t(ξ⁰(y)) - t(ξ¹(y)) != 0
    std::size_t quotient_rank = 0;     ///< swap orbits in V6
    std::size_t h_words = 0;           ///< |H^6|
    bool eventual_cells_are_v6 = false;  ///< only V6 ends long paths avoiding V0
    bool quotient_matches_h = false;     ///< V6 / swap with E7 reproduces the block graph of H

    bool containments_hold() const;
};

inline constexpr double kPairComplexWordCap = 1e7;

PairComplex build_pair_complex(const EmbeddingPair& p, double word_cap = kPairComplexWordCap);

/// Square matrix A of size >= d0, entries >= M0, with coker(I - A) = target.
IntMatrix realize_group_matrix(const FgAbelianGroup& target, std::size_t d0, const Integer& M0);

/// Seed pair with K0(R^s) = Z^{rank k1} ⊕ k0_torsion and K1(R^s) = k1.
EmbeddingPair synthesize_seed(const FgAbelianGroup& k0_torsion, const FgAbelianGroup& k1);

}  // namespace qsft
