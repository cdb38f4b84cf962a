#include "qsft/embedding.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace qsft;
using namespace qsft::testing;

TEST_CASE("FULL2 fails only H2, with the H-edge as witness") {
    const HypothesisReport& r = full2().report();
    CHECK(r.h0.passed);
    CHECK(r.h1.passed);
    CHECK_FALSE(r.h2.passed);
    CHECK(r.h2.witness == "h");
    CHECK(r.primitive.passed);
    CHECK_FALSE(r.standing());
}

TEST_CASE("FULL3 and the two-vertex bundle satisfy the standing hypotheses") {
    CHECK(full3().report().standing());
    CHECK(full3().report().h_has_cycle);
    CHECK(two_vertex().report().standing());
}

TEST_CASE("constructor rejects non-homomorphic and non-injective maps") {
    Graph g({"u", "v"}, {{"a", "u", "v"}, {"b", "u", "u"}, {"c", "v", "u"}});
    Graph h({"w"}, {{"y", "w", "w"}});
    CHECK_THROWS_AS(EmbeddingPair(g, h, {0}, {0}, {0}, {1}), Error);  // a is not a loop
    CHECK_THROWS_AS(EmbeddingPair(g, h, {0}, {0}, {}, {1}), Error);   // not total
}

TEST_CASE("an edge in both images fails H1") {
    Graph g({"v"}, {{"a", "v", "v"}, {"b", "v", "v"}});
    Graph h({"w"}, {{"y", "w", "w"}});
    EmbeddingPair p(g, h, {0}, {0}, {0}, {0});
    CHECK_FALSE(p.report().h1.passed);
    CHECK_THROWS_AS(p.quotient(), Error);
}

TEST_CASE("primitive witness distinguishes periodic from reducible G") {
    Graph g({"u", "v"}, {{"a", "u", "v"}, {"b", "v", "u"}, {"c", "u", "v"}});
    Graph h({"w"}, {});
    EmbeddingPair p(g, h, {0}, {0}, {}, {});
    CHECK_FALSE(p.report().primitive.passed);
    CHECK(p.report().primitive.witness == "G is irreducible but periodic");
    CHECK_FALSE(p.report().h_has_cycle);
}

TEST_CASE("epsilon and partners") {
    const auto& p = full3();
    const Index a = edge(p, "a"), b = edge(p, "b"), c = edge(p, "c");
    CHECK(p.epsilon(a) == 0);
    CHECK(p.epsilon(b) == 1);
    CHECK(p.partner(a) == b);
    CHECK(p.partner(b) == a);
    CHECK_FALSE(p.in_xi(c));
    CHECK_THROWS_AS(p.epsilon(c), Error);
    CHECK(epsilon(p, b) == 1);
}

TEST_CASE("quotient graph names and identification") {
    const auto& p = full3();
    const QuotientGraph& q = quotient_graph(p);
    CHECK(q.graph.edge_count() == 2);
    CHECK(q.graph.edge_id(0) == "h'");
    CHECK(q.graph.edge_id(1) == "c'");
    CHECK(q.tau[edge(p, "a")] == q.tau[edge(p, "b")]);
    CHECK(q.tau[edge(p, "c")] != q.tau[edge(p, "a")]);

    // |G_ξ^1| = |G^1| - |H^1| in general.
    const auto& t = two_vertex();
    CHECK(t.quotient().graph.edge_count() == t.g().edge_count() - t.h().edge_count());
}

TEST_CASE("quotient edge names avoid collisions") {
    Graph g({"v"}, {{"h", "v", "v"}, {"x", "v", "v"}, {"h'", "v", "v"}});
    Graph h({"w"}, {{"h", "w", "w"}});
    EmbeddingPair p(g, h, {0}, {0}, {0}, {1});
    const Graph& q = p.quotient().graph;
    CHECK(q.edge_id(0) == "h'");
    CHECK(q.edge_id(1) == "h''");
}

TEST_CASE("completion tables") {
    const auto& p = two_vertex();
    const CompletionTables& t = completion_tables(p);
    for (Index v = 0; v < p.g().vertex_count(); ++v) {
        REQUIRE(t.tail[v]);
        const TailWitness& w = *t.tail[v];
        PathWord all = w.prefix;
        all.insert(all.end(), w.cycle.begin(), w.cycle.end());
        CHECK(is_path(p.g(), all));
        CHECK(p.g().source(all.front()) == v);
        for (Index e : all) CHECK(p.in_xi(e));
        CHECK(p.g().target(w.cycle.back()) == p.g().source(w.cycle.front()));
    }
    for (Index v = 0; v < p.g().vertex_count(); ++v) {
        REQUIRE(t.to_nonxi[v]);
        CHECK_FALSE(p.in_xi(t.to_nonxi[v]->back()));
    }
}

TEST_CASE("exact_completion has exactly r non-xi edges and ends at a tail vertex") {
    for (const EmbeddingPair* p : {&full3(), &two_vertex()}) {
        for (Index v = 0; v < p->g().vertex_count(); ++v) {
            for (std::size_t r = 0; r <= 4; ++r) {
                const PathWord w = exact_completion(*p, v, r);
                std::size_t count = 0;
                for (Index e : w) count += p->in_xi(e) ? 0 : 1;
                CHECK(count == r);
                const Index end = w.empty() ? v : p->g().target(w.back());
                CHECK(p->tables().tail[end].has_value());
                if (!w.empty()) {
                    CHECK(is_path(p->g(), w));
                    CHECK(p->g().source(w.front()) == v);
                }
            }
        }
    }
}
