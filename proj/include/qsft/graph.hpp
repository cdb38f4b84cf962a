#pragma once

#include "qsft/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qsft {

using Index = std::size_t;

/// Sequence of edge indices; consecutive edges must be composable.
using PathWord = std::vector<Index>;

/// Finite directed multigraph with named vertices and edges.
///
/// Vertex and edge order is fixed at construction and determines the
/// row/column order of adjacency matrices.
class Graph {
public:
    struct EdgeDecl {
        std::string id;
        std::string source;
        std::string target;
    };

    Graph() = default;
    Graph(std::vector<std::string> vertices, const std::vector<EdgeDecl>& edges);
    Graph(std::vector<std::string> vertices, std::vector<std::string> edge_ids,
          std::vector<Index> sources, std::vector<Index> targets);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& vertex_id(Index v) const { return vertices_.at(v); }
    const std::string& edge_id(Index e) const { return edges_.at(e); }
    const std::vector<std::string>& vertex_ids() const { return vertices_; }
    const std::vector<std::string>& edge_ids() const { return edges_; }

    Index source(Index e) const { return source_.at(e); }
    Index target(Index e) const { return target_.at(e); }

    /// Outgoing edges of v in increasing edge index.
    const std::vector<Index>& out_edges(Index v) const { return out_.at(v); }

    std::optional<Index> find_vertex(const std::string& id) const;
    std::optional<Index> find_edge(const std::string& id) const;
    Index vertex_index(const std::string& id) const;
    Index edge_index(const std::string& id) const;

    bool operator==(const Graph& other) const;

private:
    void index_();

    std::vector<std::string> vertices_;
    std::vector<std::string> edges_;
    std::vector<Index> source_;
    std::vector<Index> target_;
    std::vector<std::vector<Index>> out_;
    std::unordered_map<std::string, Index> vertex_lookup_;
    std::unordered_map<std::string, Index> edge_lookup_;
};

/// Dense integer matrix with arbitrary precision entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::size_t rows, std::size_t cols, const std::vector<long>& row_major);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const;

    bool is_square() const { return rows_ == cols_; }
    Integer entry_sum() const;
    Integer max_entry() const;

    /// Exact determinant by fraction-free elimination.
    Integer determinant() const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Entry (v, w) counts edges with source w and target v.
IntMatrix adjacency_matrix(const Graph& g);

bool is_path(const Graph& g, const PathWord& word);

bool is_irreducible(const Graph& g);

struct Primitivity {
    bool primitive = false;
    std::optional<std::size_t> exponent;
};

/// Least k with A^k entrywise positive, searched up to (d-1)^2 + 1.
Primitivity is_primitive(const Graph& g);

/// All paths of length n, lexicographic by edge index.
std::vector<PathWord> paths_of_length(const Graph& g, std::size_t n,
                                      std::optional<Index> from = std::nullopt,
                                      std::optional<Index> to = std::nullopt);

/// Identifier of a word in the block graph: edge ids joined by '.'.
std::string word_id(const Graph& g, const PathWord& word);

/// Vertices are paths of length K-1, edges are paths of length K.
Graph higher_block_graph(const Graph& g, std::size_t K);

/// True iff g contains a directed cycle.
bool has_cycle(const Graph& g);

}  // namespace qsft
