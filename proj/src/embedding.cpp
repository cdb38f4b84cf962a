#include "qsft/embedding.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace qsft {

namespace {

void check_map(const Graph& g, const Graph& h, const std::vector<Index>& vmap,
               const std::vector<Index>& emap, const char* name) {
    const std::string tag(name);
    if (vmap.size() != h.vertex_count()) throw Error(tag + ": vertex map is not total");
    if (emap.size() != h.edge_count()) throw Error(tag + ": edge map is not total");
    std::set<Index> seen_v, seen_e;
    for (Index v = 0; v < vmap.size(); ++v) {
        if (vmap[v] >= g.vertex_count()) throw Error(tag + ": vertex image out of range");
        if (!seen_v.insert(vmap[v]).second) throw Error(tag + ": vertex map is not injective");
    }
    for (Index y = 0; y < emap.size(); ++y) {
        const Index e = emap[y];
        if (e >= g.edge_count()) throw Error(tag + ": edge image out of range");
        if (!seen_e.insert(e).second) throw Error(tag + ": edge map is not injective");
        if (g.source(e) != vmap[h.source(y)] || g.target(e) != vmap[h.target(y)]) {
            throw Error(tag + ": edge '" + h.edge_id(y) + "' is not mapped homomorphically");
        }
    }
}

QuotientGraph build_quotient(const EmbeddingPair& p) {
    const Graph& g = p.g();
    std::vector<long> class_of_h(p.h().edge_count(), -1);
    std::vector<std::string> ids;
    std::vector<Index> src, dst;
    std::set<std::string> used;
    std::vector<Index> tau(g.edge_count());
    auto fresh = [&](std::string base) {
        base += '\'';
        while (used.count(base)) base += '\'';
        used.insert(base);
        return base;
    };
    for (Index e = 0; e < g.edge_count(); ++e) {
        if (p.in_xi(e)) {
            const Index y = p.h_edge_of(e);
            if (class_of_h[y] < 0) {
                class_of_h[y] = static_cast<long>(ids.size());
                ids.push_back(fresh(p.h().edge_id(y)));
                src.push_back(g.source(e));
                dst.push_back(g.target(e));
            }
            tau[e] = static_cast<Index>(class_of_h[y]);
        } else {
            tau[e] = ids.size();
            ids.push_back(fresh(g.edge_id(e)));
            src.push_back(g.source(e));
            dst.push_back(g.target(e));
        }
    }
    return {Graph(g.vertex_ids(), std::move(ids), std::move(src), std::move(dst)), std::move(tau)};
}

CompletionTables build_tables(const EmbeddingPair& p) {
    const Graph& g = p.g();
    const Graph& h = p.h();
    for (Index v = 0; v < g.vertex_count(); ++v)
        if (g.out_edges(v).empty()) throw Error("vertex '" + g.vertex_id(v) + "' has no outgoing edge");

    // H-vertices with an infinite forward path: strip sinks repeatedly.
    std::vector<char> alive(h.vertex_count(), 1);
    for (bool changed = true; changed;) {
        changed = false;
        for (Index v = 0; v < h.vertex_count(); ++v) {
            if (!alive[v]) continue;
            bool has_out = false;
            for (Index y : h.out_edges(v))
                if (alive[h.target(y)]) has_out = true;
            if (!has_out) {
                alive[v] = 0;
                changed = true;
            }
        }
    }

    CompletionTables t;
    t.tail.assign(g.vertex_count(), std::nullopt);
    t.nonxi_to_tail.assign(g.vertex_count(), std::nullopt);
    t.to_nonxi.assign(g.vertex_count(), std::nullopt);

    for (Index hv = 0; hv < h.vertex_count(); ++hv) {
        if (!alive[hv]) continue;
        std::vector<long> visited_at(h.vertex_count(), -1);
        PathWord walk;
        Index cur = hv;
        while (visited_at[cur] < 0) {
            visited_at[cur] = static_cast<long>(walk.size());
            for (Index y : h.out_edges(cur)) {
                if (alive[h.target(y)]) {
                    walk.push_back(y);
                    cur = h.target(y);
                    break;
                }
            }
        }
        TailWitness w;
        const auto split = static_cast<std::size_t>(visited_at[cur]);
        for (std::size_t i = 0; i < walk.size(); ++i)
            (i < split ? w.prefix : w.cycle).push_back(p.xi_edge(0, walk[i]));
        t.tail[p.xi_vertex(0, hv)] = std::move(w);
    }

    for (Index v = 0; v < g.vertex_count(); ++v) {
        // Non-ξ BFS to a tail vertex.
        std::vector<long> parent(g.vertex_count(), -2);
        std::deque<Index> queue{v};
        parent[v] = -1;
        std::optional<Index> hit;
        while (!queue.empty()) {
            Index u = queue.front();
            queue.pop_front();
            if (t.tail[u]) {
                hit = u;
                break;
            }
            for (Index e : g.out_edges(u)) {
                if (p.in_xi(e)) continue;
                Index w = g.target(e);
                if (parent[w] == -2) {
                    parent[w] = static_cast<long>(e);
                    queue.push_back(w);
                }
            }
        }
        if (hit) {
            PathWord path;
            for (Index u = *hit; parent[u] >= 0; u = g.source(static_cast<Index>(parent[u])))
                path.push_back(static_cast<Index>(parent[u]));
            std::reverse(path.begin(), path.end());
            t.nonxi_to_tail[v] = std::move(path);
        }

        // Shortest path whose last edge is non-ξ.
        std::fill(parent.begin(), parent.end(), -2);
        queue.assign(1, v);
        parent[v] = -1;
        while (!queue.empty()) {
            Index u = queue.front();
            queue.pop_front();
            auto nonxi = std::find_if(g.out_edges(u).begin(), g.out_edges(u).end(),
                                      [&](Index e) { return !p.in_xi(e); });
            if (nonxi != g.out_edges(u).end()) {
                PathWord path{*nonxi};
                for (Index x = u; parent[x] >= 0; x = g.source(static_cast<Index>(parent[x])))
                    path.push_back(static_cast<Index>(parent[x]));
                std::reverse(path.begin(), path.end());
                t.to_nonxi[v] = std::move(path);
                break;
            }
            for (Index e : g.out_edges(u)) {
                Index w = g.target(e);
                if (parent[w] == -2) {
                    parent[w] = static_cast<long>(e);
                    queue.push_back(w);
                }
            }
        }
    }
    return t;
}

}  // namespace

EmbeddingPair::EmbeddingPair(Graph g, Graph h, std::vector<Index> xi0_vertex, std::vector<Index> xi1_vertex,
                             std::vector<Index> xi0_edge, std::vector<Index> xi1_edge)
    : g_(std::move(g)),
      h_(std::move(h)),
      xi0_vertex_(std::move(xi0_vertex)),
      xi1_vertex_(std::move(xi1_vertex)),
      xi0_edge_(std::move(xi0_edge)),
      xi1_edge_(std::move(xi1_edge)) {
    check_map(g_, h_, xi0_vertex_, xi0_edge_, "xi0");
    check_map(g_, h_, xi1_vertex_, xi1_edge_, "xi1");

    owner_.assign(g_.edge_count(), -1);
    eps_.assign(g_.edge_count(), -1);
    for (Index y = 0; y < h_.edge_count(); ++y) {
        owner_[xi0_edge_[y]] = static_cast<long>(y);
        eps_[xi0_edge_[y]] = 0;
    }
    for (Index y = 0; y < h_.edge_count(); ++y) {
        const Index e = xi1_edge_[y];
        if (eps_[e] == 0) {
            eps_[e] = 2;
            if (report_.h1.passed) {
                report_.h1 = {false, "edge '" + g_.edge_id(e) + "' is xi0('" + h_.edge_id(static_cast<Index>(owner_[e])) +
                                         "') and xi1('" + h_.edge_id(y) + "')"};
            }
        } else {
            owner_[e] = static_cast<long>(y);
            eps_[e] = 1;
        }
    }

    for (Index v = 0; v < h_.vertex_count(); ++v) {
        if (xi0_vertex_[v] != xi1_vertex_[v]) {
            report_.h0 = {false, "vertex '" + h_.vertex_id(v) + "': xi0 -> '" + g_.vertex_id(xi0_vertex_[v]) +
                                     "', xi1 -> '" + g_.vertex_id(xi1_vertex_[v]) + "'"};
            break;
        }
    }

    for (Index y = 0; y < h_.edge_count(); ++y) {
        const Index e0 = xi0_edge_[y];
        bool spare = false;
        for (Index e : g_.out_edges(g_.source(e0)))
            if (g_.target(e) == g_.target(e0) && owner_[e] < 0) spare = true;
        if (!spare) {
            report_.h2 = {false, h_.edge_id(y)};
            break;
        }
    }

    if (g_.vertex_count() == 0) {
        report_.primitive = {false, "G has no vertices"};
    } else if (!is_primitive(g_).primitive) {
        report_.primitive = {false, is_irreducible(g_) ? "G is irreducible but periodic" : "G is not irreducible"};
    }
    report_.h_has_cycle = has_cycle(h_);

    if (report_.h0.passed && report_.h1.passed) quotient_ = build_quotient(*this);
    if (report_.h0.passed && report_.h1.passed) {
        try {
            tables_ = build_tables(*this);
        } catch (const Error& err) {
            tables_error_ = err.what();
        }
    } else {
        tables_error_ = "completion tables require (H0) and (H1)";
    }
}

Index EmbeddingPair::h_edge_of(Index e) const {
    if (owner_.at(e) < 0) throw Error("edge '" + g_.edge_id(e) + "' is outside xi(H^1)");
    return static_cast<Index>(owner_[e]);
}

Index EmbeddingPair::partner(Index e) const {
    return xi_edge(1 - epsilon(e), h_edge_of(e));
}

int EmbeddingPair::epsilon(Index e) const {
    const int s = eps_.at(e);
    if (s < 0) throw Error("edge '" + g_.edge_id(e) + "' is outside xi(H^1)");
    if (s > 1) throw Error("edge '" + g_.edge_id(e) + "' lies in both images");
    return s;
}

const QuotientGraph& EmbeddingPair::quotient() const {
    if (!quotient_) throw Error("quotient graph requires (H0) and (H1)");
    return *quotient_;
}

const CompletionTables& EmbeddingPair::tables() const {
    if (!tables_) throw Error(tables_error_);
    return *tables_;
}

HypothesisReport check_standing_hypotheses(const EmbeddingPair& p) { return p.report(); }

const QuotientGraph& quotient_graph(const EmbeddingPair& p) { return p.quotient(); }

int epsilon(const EmbeddingPair& p, Index e) { return p.epsilon(e); }

const CompletionTables& completion_tables(const EmbeddingPair& p) { return p.tables(); }

PathWord exact_completion(const EmbeddingPair& p, Index v, std::size_t r) {
    const Graph& g = p.g();
    const auto& tails = p.tables().tail;
    const std::size_t layers = r + 1;
    auto id = [&](Index u, std::size_t c) { return c * g.vertex_count() + u; };
    std::vector<long> parent(g.vertex_count() * layers, -2);
    std::deque<std::pair<Index, std::size_t>> queue{{v, 0}};
    parent[id(v, 0)] = -1;
    while (!queue.empty()) {
        auto [u, c] = queue.front();
        queue.pop_front();
        if (c == r && tails[u]) {
            PathWord path;
            Index x = u;
            std::size_t cx = c;
            while (parent[id(x, cx)] >= 0) {
                const auto e = static_cast<Index>(parent[id(x, cx)]);
                path.push_back(e);
                if (!p.in_xi(e)) --cx;
                x = g.source(e);
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (Index e : g.out_edges(u)) {
            const std::size_t nc = c + (p.in_xi(e) ? 0 : 1);
            if (nc > r) continue;
            const Index w = g.target(e);
            if (parent[id(w, nc)] == -2) {
                parent[id(w, nc)] = static_cast<long>(e);
                queue.emplace_back(w, nc);
            }
        }
    }
    throw Error("no xi-tail reachable from vertex '" + g.vertex_id(v) + "' with " + std::to_string(r) +
                " further non-xi edges");
}

}  // namespace qsft
