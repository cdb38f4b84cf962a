#pragma once

#include "qsft/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qsft {

/// Graph G identified with its quotient: identification classes of edges.
struct QuotientGraph {
    Graph graph;
    std::vector<Index> tau;  ///< G-edge -> quotient edge
};

/// Eventually-ξ tail from a vertex: prefix then a repeated cycle, all edges in ξ⁰(H¹).
struct TailWitness {
    PathWord prefix;
    PathWord cycle;
};

/// Per-vertex completion data used to build stratum approximants.
struct CompletionTables {
    std::vector<std::optional<TailWitness>> tail;
    std::vector<std::optional<PathWord>> nonxi_to_tail;  ///< non-ξ edges only; empty if the vertex has a tail
    std::vector<std::optional<PathWord>> to_nonxi;       ///< shortest path ending in a non-ξ edge
};

struct Check {
    bool passed = true;
    std::string witness;
};

struct HypothesisReport {
    Check h0, h1, h2, primitive;
    bool h_has_cycle = false;  ///< informational: H admits an infinite path
    bool standing() const { return h0.passed && h1.passed && h2.passed && primitive.passed; }
};

/// Seed data (G, H, ξ⁰, ξ¹).
///
/// Construction checks that both maps are total, injective graph
/// homomorphisms; the standing hypotheses are reported separately.
class EmbeddingPair {
public:
    EmbeddingPair(Graph g, Graph h, std::vector<Index> xi0_vertex, std::vector<Index> xi1_vertex,
                  std::vector<Index> xi0_edge, std::vector<Index> xi1_edge);

    const Graph& g() const { return g_; }
    const Graph& h() const { return h_; }

    Index xi_vertex(int i, Index hv) const { return i == 0 ? xi0_vertex_.at(hv) : xi1_vertex_.at(hv); }
    Index xi_edge(int i, Index he) const { return i == 0 ? xi0_edge_.at(he) : xi1_edge_.at(he); }

    /// True iff e lies in ξ⁰(H¹) ∪ ξ¹(H¹).
    bool in_xi(Index e) const { return owner_.at(e) >= 0; }
    /// The H-edge y with e = ξ^i(y).
    Index h_edge_of(Index e) const;
    /// ξ^{1-i}(y) for e = ξ^i(y).
    Index partner(Index e) const;
    /// Superscript map; throws outside ξ(H¹).
    int epsilon(Index e) const;

    const HypothesisReport& report() const { return report_; }
    /// Throws unless H0 and H1 hold.
    const QuotientGraph& quotient() const;
    /// Throws if some vertex has no outgoing edge.
    const CompletionTables& tables() const;

private:
    Graph g_, h_;
    std::vector<Index> xi0_vertex_, xi1_vertex_, xi0_edge_, xi1_edge_;
    std::vector<long> owner_;   ///< H-edge owning each G-edge, or -1
    std::vector<int> eps_;      ///< superscript, -1 outside ξ(H¹), 2 if in both images
    HypothesisReport report_;
    std::optional<QuotientGraph> quotient_;
    std::optional<CompletionTables> tables_;
    std::string tables_error_;
};

HypothesisReport check_standing_hypotheses(const EmbeddingPair& p);

const QuotientGraph& quotient_graph(const EmbeddingPair& p);

int epsilon(const EmbeddingPair& p, Index e);

const CompletionTables& completion_tables(const EmbeddingPair& p);

/// Shortest path from v with exactly r non-ξ edges that ends at a vertex
/// admitting a ξ-tail. Throws if none exists.
PathWord exact_completion(const EmbeddingPair& p, Index v, std::size_t r);

}  // namespace qsft
