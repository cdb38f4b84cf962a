#pragma once

#include "qsft/bundle.hpp"
#include "qsft/smale.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qsft::testing {

inline std::string bundle_path(const std::string& name) { return std::string(QSFT_BUNDLE_DIR) + "/" + name; }

inline const EmbeddingPair& full2() {
    static const SeedBundle b = load_bundle(bundle_path("full2.bundle"));
    return b.pair;
}

inline const EmbeddingPair& full3() {
    static const SeedBundle b = load_bundle(bundle_path("full3.bundle"));
    return b.pair;
}

inline const EmbeddingPair& two_vertex() {
    static const SeedBundle b = load_bundle(bundle_path("two_vertex.bundle"));
    return b.pair;
}

inline Index edge(const EmbeddingPair& p, const std::string& id) { return *p.g().find_edge(id); }

inline LassoRay ray(const EmbeddingPair& p, const std::string& text) { return LassoRay::parse(p.g(), text); }

/// Random walk of the given length starting at v (or anywhere).
inline PathWord random_walk(const Graph& g, std::mt19937_64& rng, std::size_t len, std::optional<Index> from = {}) {
    PathWord w;
    Index v = from ? *from : std::uniform_int_distribution<Index>(0, g.vertex_count() - 1)(rng);
    for (std::size_t i = 0; i < len; ++i) {
        const auto& out = g.out_edges(v);
        const Index e = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
        w.push_back(e);
        v = g.target(e);
    }
    return w;
}

/// Random lasso with finite κ: random prefix, then a random ξ-tail from its end vertex.
inline LassoRay random_finite_lasso(const EmbeddingPair& p, std::mt19937_64& rng, std::size_t max_prefix = 6) {
    const Graph& g = p.g();
    const auto& tails = p.tables().tail;
    while (true) {
        const std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_prefix)(rng);
        PathWord prefix = random_walk(g, rng, len);
        Index v = prefix.empty() ? std::uniform_int_distribution<Index>(0, g.vertex_count() - 1)(rng)
                                 : g.target(prefix.back());
        if (!tails[v]) continue;
        // A ξ-cycle through v: either the tail witness or a random ξ-walk closing up at v.
        PathWord cycle;
        for (int attempt = 0; attempt < 8 && cycle.empty(); ++attempt) {
            const std::size_t clen = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
            PathWord c;
            Index u = v;
            bool ok = true;
            for (std::size_t i = 0; i < clen && ok; ++i) {
                std::vector<Index> xi_out;
                for (Index e : g.out_edges(u))
                    if (p.in_xi(e)) xi_out.push_back(e);
                if (xi_out.empty()) {
                    ok = false;
                    break;
                }
                const Index e = xi_out[std::uniform_int_distribution<std::size_t>(0, xi_out.size() - 1)(rng)];
                c.push_back(e);
                u = g.target(e);
            }
            if (ok && u == v) cycle = c;
        }
        if (cycle.empty()) {
            const TailWitness& t = *tails[v];
            prefix.insert(prefix.end(), t.prefix.begin(), t.prefix.end());
            cycle = t.cycle;
        }
        return LassoRay(std::move(prefix), std::move(cycle));
    }
}

inline PathWord word(std::mt19937_64& rng, std::size_t len, std::size_t alphabet) {
    PathWord w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(rng() % alphabet);
    return w;
}

// Bi-lassos in a one-vertex graph with edges 0..alphabet-1.
inline BiLasso random_bilasso(std::mt19937_64& rng, std::size_t alphabet) {
    PathWord past = word(rng, 1 + rng() % 2, alphabet);
    PathWord core = word(rng, rng() % 6, alphabet);
    PathWord future = word(rng, 1 + rng() % 2, alphabet);
    return BiLasso(past, core, future, static_cast<long>(rng() % 5) - 2);
}

// y agrees with x left of f and carries partners from f on (one-vertex graphs).
inline std::optional<BiLasso> swap_from(const EmbeddingPair& p, const BiLasso& x, long f) {
    const long lo = std::min(f, x.start());
    PathWord core;
    for (long n = lo; n < x.end(); ++n) {
        const Index e = x.at(n);
        if (n < f) {
            core.push_back(e);
        } else {
            if (!p.in_xi(e)) return std::nullopt;
            core.push_back(p.partner(e));
        }
    }
    PathWord future;
    for (Index e : x.future()) {
        if (!p.in_xi(e)) return std::nullopt;
        future.push_back(p.partner(e));
    }
    const PathWord& past = x.past();
    // Past positions left of lo are shifted copies of x's past cycle.
    PathWord shifted;
    for (long n = lo - static_cast<long>(past.size()); n < lo; ++n) shifted.push_back(x.at(n));
    return BiLasso(shifted, core, future, lo);
}

// Bi-lasso agreeing with x on positions -w..w, with random material on both sides.
inline BiLasso nearby(const BiLasso& x, std::mt19937_64& rng, std::size_t alphabet, long w) {
    const std::size_t k = rng() % 3;
    PathWord core = word(rng, k, alphabet);
    for (long n = -w; n <= w; ++n) core.push_back(x.at(n));
    const PathWord tail = word(rng, rng() % 3, alphabet);
    core.insert(core.end(), tail.begin(), tail.end());
    return BiLasso(word(rng, 1 + rng() % 2, alphabet), core, word(rng, 1 + rng() % 2, alphabet),
                   -w - static_cast<long>(k));
}

}  // namespace qsft::testing
