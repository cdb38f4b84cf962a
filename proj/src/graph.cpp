#include "qsft/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qsft {

Graph::Graph(std::vector<std::string> vertices, const std::vector<EdgeDecl>& edges)
    : vertices_(std::move(vertices)) {
    for (Index v = 0; v < vertices_.size(); ++v) {
        if (!vertex_lookup_.emplace(vertices_[v], v).second) {
            throw Error("duplicate vertex id '" + vertices_[v] + "'");
        }
    }
    for (const auto& decl : edges) {
        auto s = vertex_lookup_.find(decl.source);
        auto t = vertex_lookup_.find(decl.target);
        if (s == vertex_lookup_.end()) throw Error("edge '" + decl.id + "': unknown source '" + decl.source + "'");
        if (t == vertex_lookup_.end()) throw Error("edge '" + decl.id + "': unknown target '" + decl.target + "'");
        edges_.push_back(decl.id);
        source_.push_back(s->second);
        target_.push_back(t->second);
    }
    vertex_lookup_.clear();
    index_();
}

Graph::Graph(std::vector<std::string> vertices, std::vector<std::string> edge_ids,
             std::vector<Index> sources, std::vector<Index> targets)
    : vertices_(std::move(vertices)),
      edges_(std::move(edge_ids)),
      source_(std::move(sources)),
      target_(std::move(targets)) {
    if (source_.size() != edges_.size() || target_.size() != edges_.size()) {
        throw Error("edge endpoint arrays do not match edge count");
    }
    for (Index e = 0; e < edges_.size(); ++e) {
        if (source_[e] >= vertices_.size() || target_[e] >= vertices_.size()) {
            throw Error("edge '" + edges_[e] + "' has an undeclared endpoint");
        }
    }
    index_();
}

void Graph::index_() {
    for (Index v = 0; v < vertices_.size(); ++v) {
        if (!vertex_lookup_.emplace(vertices_[v], v).second) {
            throw Error("duplicate vertex id '" + vertices_[v] + "'");
        }
    }
    for (Index e = 0; e < edges_.size(); ++e) {
        if (!edge_lookup_.emplace(edges_[e], e).second) {
            throw Error("duplicate edge id '" + edges_[e] + "'");
        }
    }
    out_.assign(vertices_.size(), {});
    for (Index e = 0; e < edges_.size(); ++e) out_[source_[e]].push_back(e);
}

std::optional<Index> Graph::find_vertex(const std::string& id) const {
    auto it = vertex_lookup_.find(id);
    if (it == vertex_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<Index> Graph::find_edge(const std::string& id) const {
    auto it = edge_lookup_.find(id);
    if (it == edge_lookup_.end()) return std::nullopt;
    return it->second;
}

Index Graph::vertex_index(const std::string& id) const {
    auto v = find_vertex(id);
    if (!v) throw Error("unknown vertex '" + id + "'");
    return *v;
}

Index Graph::edge_index(const std::string& id) const {
    auto e = find_edge(id);
    if (!e) throw Error("unknown edge '" + id + "'");
    return *e;
}

bool Graph::operator==(const Graph& other) const {
    return vertices_ == other.vertices_ && edges_ == other.edges_ && source_ == other.source_ &&
           target_ == other.target_;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, const std::vector<long>& row_major)
    : IntMatrix(rows, cols) {
    if (row_major.size() != rows * cols) throw Error("matrix literal has wrong size");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = row_major[i];
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw Error("matrix product dimension mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
        }
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error("matrix difference dimension mismatch");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error("matrix sum dimension mismatch");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
    return out;
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

Integer IntMatrix::entry_sum() const {
    Integer s = 0;
    for (const auto& x : data_) s += x;
    return s;
}

Integer IntMatrix::max_entry() const {
    if (data_.empty()) return 0;
    return *std::max_element(data_.begin(), data_.end());
}

Integer IntMatrix::determinant() const {
    if (!is_square()) throw Error("determinant of a non-square matrix");
    const std::size_t n = rows_;
    if (n == 0) return 1;
    std::vector<Integer> m = data_;
    auto at = [&](std::size_t r, std::size_t c) -> Integer& { return m[r * n + c]; };
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
            if (swap_row == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(swap_row, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                at(i, j) = v;
            }
        }
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << "; ";
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) os << ' ';
            os << (*this)(r, c).get_str();
        }
    }
    os << ']';
    return os.str();
}

IntMatrix adjacency_matrix(const Graph& g) {
    IntMatrix a(g.vertex_count(), g.vertex_count());
    for (Index e = 0; e < g.edge_count(); ++e) a(g.target(e), g.source(e)) += 1;
    return a;
}

bool is_path(const Graph& g, const PathWord& word) {
    for (Index e : word)
        if (e >= g.edge_count()) return false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
        if (g.target(word[i]) != g.source(word[i + 1])) return false;
    return true;
}

namespace {

std::vector<char> reachable_from(const Graph& g, Index start) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Index> stack{start};
    while (!stack.empty()) {
        Index v = stack.back();
        stack.pop_back();
        for (Index e : g.out_edges(v)) {
            Index w = g.target(e);
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace

bool is_irreducible(const Graph& g) {
    if (g.vertex_count() == 0) throw Error("irreducibility of an empty graph");
    for (Index v = 0; v < g.vertex_count(); ++v) {
        auto seen = reachable_from(g, v);
        if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return false;
    }
    return true;
}

Primitivity is_primitive(const Graph& g) {
    const std::size_t d = g.vertex_count();
    if (d == 0) throw Error("primitivity of an empty graph");
    // Boolean matrix, row = target, column = source.
    std::vector<char> a(d * d, 0);
    for (Index e = 0; e < g.edge_count(); ++e) a[g.target(e) * d + g.source(e)] = 1;
    std::vector<char> p = a;
    const std::size_t bound = (d - 1) * (d - 1) + 1;
    for (std::size_t k = 1; k <= bound; ++k) {
        if (std::all_of(p.begin(), p.end(), [](char c) { return c != 0; })) return {true, k};
        std::vector<char> next(d * d, 0);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t m = 0; m < d; ++m) {
                if (!p[r * d + m]) continue;
                for (std::size_t c = 0; c < d; ++c)
                    if (a[m * d + c]) next[r * d + c] = 1;
            }
        p = std::move(next);
    }
    return {false, std::nullopt};
}

std::vector<PathWord> paths_of_length(const Graph& g, std::size_t n, std::optional<Index> from,
                                      std::optional<Index> to) {
    if (n == 0) throw Error("paths_of_length requires n >= 1");
    std::vector<PathWord> out;
    PathWord cur;
    cur.reserve(n);
    auto extend = [&](auto&& self) -> void {
        if (cur.size() == n) {
            if (!to || g.target(cur.back()) == *to) out.push_back(cur);
            return;
        }
        for (Index e : g.out_edges(g.target(cur.back()))) {
            cur.push_back(e);
            self(self);
            cur.pop_back();
        }
    };
    for (Index e = 0; e < g.edge_count(); ++e) {
        if (from && g.source(e) != *from) continue;
        cur.assign(1, e);
        extend(extend);
    }
    return out;
}

std::string word_id(const Graph& g, const PathWord& word) {
    std::string s;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) s += '.';
        s += g.edge_id(word[i]);
    }
    return s;
}

Graph higher_block_graph(const Graph& g, std::size_t K) {
    if (K < 2) throw Error("higher block graph requires K >= 2");
    auto vertex_words = paths_of_length(g, K - 1);
    auto edge_words = paths_of_length(g, K);
    std::map<PathWord, Index> lookup;
    std::vector<std::string> vertex_ids;
    for (Index i = 0; i < vertex_words.size(); ++i) {
        lookup.emplace(vertex_words[i], i);
        vertex_ids.push_back(word_id(g, vertex_words[i]));
    }
    std::vector<std::string> edge_ids;
    std::vector<Index> sources, targets;
    for (const auto& w : edge_words) {
        edge_ids.push_back(word_id(g, w));
        sources.push_back(lookup.at(PathWord(w.begin(), w.end() - 1)));
        targets.push_back(lookup.at(PathWord(w.begin() + 1, w.end())));
    }
    return Graph(std::move(vertex_ids), std::move(edge_ids), std::move(sources), std::move(targets));
}

bool has_cycle(const Graph& g) {
    // Repeatedly strip vertices without outgoing edges into the remaining set.
    std::vector<std::size_t> outdeg(g.vertex_count(), 0);
    std::vector<std::vector<Index>> in_edges(g.vertex_count());
    for (Index e = 0; e < g.edge_count(); ++e) {
        ++outdeg[g.source(e)];
        in_edges[g.target(e)].push_back(e);
    }
    std::vector<Index> queue;
    for (Index v = 0; v < g.vertex_count(); ++v)
        if (outdeg[v] == 0) queue.push_back(v);
    std::size_t removed = 0;
    while (!queue.empty()) {
        Index v = queue.back();
        queue.pop_back();
        ++removed;
        for (Index e : in_edges[v])
            if (--outdeg[g.source(e)] == 0) queue.push_back(g.source(e));
    }
    return removed < g.vertex_count();
}

}  // namespace qsft
