#include "qsft/bundle.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace qsft {

namespace {

struct GraphDraft {
    std::vector<std::string> vertices;
    std::map<std::string, Index> vertex_index;
    std::vector<Graph::EdgeDecl> edges;
    std::map<std::string, Index> edge_index;
};

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

SeedBundle parse_bundle(std::string_view text) {
    GraphDraft drafts[2];  // G, H
    std::optional<int> current;
    std::string name;
    std::map<Index, Index> vmap;
    std::map<Index, Index> emap[2];
    bool any = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        any = true;
        const std::string& kw = tok[0];
        if (kw == "name") {
            if (tok.size() < 2) fail(lineno, "name needs a value");
            name = raw.substr(raw.find(tok[1]));
            while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
        } else if (kw == "graph") {
            if (tok.size() != 2 || (tok[1] != "G" && tok[1] != "H")) fail(lineno, "expected 'graph G' or 'graph H'");
            current = tok[1] == "G" ? 0 : 1;
        } else if (kw == "vertex") {
            if (!current) fail(lineno, "vertex before any graph declaration");
            if (tok.size() != 2) fail(lineno, "expected 'vertex <id>'");
            auto& d = drafts[*current];
            if (!d.vertex_index.emplace(tok[1], d.vertices.size()).second) fail(lineno, "duplicate vertex '" + tok[1] + "'");
            d.vertices.push_back(tok[1]);
        } else if (kw == "edge") {
            if (!current) fail(lineno, "edge before any graph declaration");
            if (tok.size() != 4) fail(lineno, "expected 'edge <id> <src> <dst>'");
            auto& d = drafts[*current];
            for (int k : {2, 3})
                if (!d.vertex_index.count(tok[k])) fail(lineno, "unknown vertex '" + tok[k] + "'");
            if (!d.edge_index.emplace(tok[1], d.edges.size()).second) fail(lineno, "duplicate edge '" + tok[1] + "'");
            d.edges.push_back({tok[1], tok[2], tok[3]});
        } else if (kw == "map") {
            if (tok.size() != 4) fail(lineno, "expected 'map vertex|xi0|xi1 <h-id> <g-id>'");
            auto& g = drafts[0];
            auto& h = drafts[1];
            if (tok[1] == "vertex") {
                auto hv = h.vertex_index.find(tok[2]);
                if (hv == h.vertex_index.end()) fail(lineno, "unknown H vertex '" + tok[2] + "'");
                auto gv = g.vertex_index.find(tok[3]);
                if (gv == g.vertex_index.end()) fail(lineno, "unknown G vertex '" + tok[3] + "'");
                if (!vmap.emplace(hv->second, gv->second).second) fail(lineno, "duplicate map for vertex '" + tok[2] + "'");
            } else if (tok[1] == "xi0" || tok[1] == "xi1") {
                const int i = tok[1] == "xi0" ? 0 : 1;
                auto he = h.edge_index.find(tok[2]);
                if (he == h.edge_index.end()) fail(lineno, "unknown H edge '" + tok[2] + "'");
                auto ge = g.edge_index.find(tok[3]);
                if (ge == g.edge_index.end()) fail(lineno, "unknown G edge '" + tok[3] + "'");
                if (!emap[i].emplace(he->second, ge->second).second) fail(lineno, "duplicate " + tok[1] + " map for '" + tok[2] + "'");
            } else {
                fail(lineno, "unknown map kind '" + tok[1] + "'");
            }
        } else {
            fail(lineno, "unknown declaration '" + kw + "'");
        }
    }
    if (!any) throw ParseError("line 0: empty bundle");

    auto& gd = drafts[0];
    auto& hd = drafts[1];
    std::vector<Index> vm(hd.vertices.size());
    for (Index v = 0; v < hd.vertices.size(); ++v) {
        auto it = vmap.find(v);
        if (it == vmap.end()) fail(lineno, "H vertex '" + hd.vertices[v] + "' has no map");
        vm[v] = it->second;
    }
    std::vector<Index> em[2];
    for (int i = 0; i < 2; ++i) {
        em[i].resize(hd.edges.size());
        for (Index e = 0; e < hd.edges.size(); ++e) {
            auto it = emap[i].find(e);
            if (it == emap[i].end()) fail(lineno, "H edge '" + hd.edges[e].id + "' has no xi" + std::to_string(i) + " map");
            em[i][e] = it->second;
        }
    }
    try {
        Graph g(gd.vertices, gd.edges);
        Graph h(hd.vertices, hd.edges);
        return {name, EmbeddingPair(std::move(g), std::move(h), vm, vm, std::move(em[0]), std::move(em[1]))};
    } catch (const ParseError&) {
        throw;
    } catch (const Error& err) {
        throw ParseError(std::string("line ") + std::to_string(lineno) + ": " + err.what());
    }
}

SeedBundle load_bundle(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open bundle '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_bundle(ss.str());
}

std::string format_bundle(const EmbeddingPair& p, const std::string& name) {
    std::ostringstream os;
    if (!name.empty()) os << "name " << name << "\n";
    for (const Graph* gr : {&p.g(), &p.h()}) {
        os << "graph " << (gr == &p.g() ? "G" : "H") << "\n";
        for (Index v = 0; v < gr->vertex_count(); ++v) os << "vertex " << gr->vertex_id(v) << "\n";
        for (Index e = 0; e < gr->edge_count(); ++e)
            os << "edge " << gr->edge_id(e) << " " << gr->vertex_id(gr->source(e)) << " " << gr->vertex_id(gr->target(e))
               << "\n";
    }
    const Graph& g = p.g();
    const Graph& h = p.h();
    for (Index v = 0; v < h.vertex_count(); ++v)
        os << "map vertex " << h.vertex_id(v) << " " << g.vertex_id(p.xi_vertex(0, v)) << "\n";
    for (int i = 0; i < 2; ++i)
        for (Index e = 0; e < h.edge_count(); ++e)
            os << "map xi" << i << " " << h.edge_id(e) << " " << g.edge_id(p.xi_edge(i, e)) << "\n";
    return os.str();
}

}  // namespace qsft
