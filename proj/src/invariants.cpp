#include "qsft/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qsft {

// ---------------------------------------------------------------- Smith form

namespace {

struct SmithWork {
    IntMatrix D, U, V;

    void row_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < D.cols(); ++c) std::swap(D(a, c), D(b, c));
        for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U(a, c), U(b, c));
    }
    void col_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t r = 0; r < D.rows(); ++r) std::swap(D(r, a), D(r, b));
        for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V(r, a), V(r, b));
    }
    // row dst += q * row src
    void row_add(std::size_t dst, std::size_t src, const Integer& q) {
        for (std::size_t c = 0; c < D.cols(); ++c) D(dst, c) += q * D(src, c);
        for (std::size_t c = 0; c < U.cols(); ++c) U(dst, c) += q * U(src, c);
    }
    // col dst += q * col src
    void col_add(std::size_t dst, std::size_t src, const Integer& q) {
        for (std::size_t r = 0; r < D.rows(); ++r) D(r, dst) += q * D(r, src);
        for (std::size_t r = 0; r < V.rows(); ++r) V(r, dst) += q * V(r, src);
    }
    void row_negate(std::size_t r) {
        for (std::size_t c = 0; c < D.cols(); ++c) D(r, c) = -D(r, c);
        for (std::size_t c = 0; c < U.cols(); ++c) U(r, c) = -U(r, c);
    }
};

}  // namespace

std::vector<Integer> SmithDecomposition::factors() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
        if (D(i, i) != 0) out.push_back(D(i, i));
    return out;
}

SmithDecomposition smith_normal_form(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    SmithWork w{A, IntMatrix::identity(m), IntMatrix::identity(n)};
    auto& D = w.D;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::optional<std::pair<std::size_t, std::size_t>> piv;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (D(i, j) != 0 && (!piv || abs(D(i, j)) < abs(D(piv->first, piv->second)))) piv = {i, j};
        if (!piv) break;
        w.row_swap(t, piv->first);
        w.col_swap(t, piv->second);

        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                w.row_add(i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                w.col_add(j, t, -q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) {
                for (std::size_t i = t + 1; i < m; ++i)
                    if (D(i, t) != 0 && abs(D(i, t)) < abs(D(t, t))) w.row_swap(t, i);
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(t, j) != 0 && abs(D(t, j)) < abs(D(t, t))) w.col_swap(t, j);
                continue;
            }
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n && !fixed; ++j) {
                    Integer r;
                    mpz_tdiv_r(r.get_mpz_t(), D(i, j).get_mpz_t(), D(t, t).get_mpz_t());
                    if (r != 0) {
                        w.row_add(t, i, 1);
                        fixed = true;
                    }
                }
            if (!fixed) break;
        }
        if (D(t, t) < 0) w.row_negate(t);
    }
    return {std::move(w.U), std::move(w.D), std::move(w.V)};
}

// ---------------------------------------------------------------- groups

FgAbelianGroup FgAbelianGroup::from_cyclic(std::size_t rank, const std::vector<Integer>& orders) {
    FgAbelianGroup g;
    g.rank_ = rank;
    std::vector<Integer> finite;
    for (const auto& o : orders) {
        if (o == 0) {
            ++g.rank_;
        } else if (abs(o) > 1) {
            finite.push_back(abs(o));
        }
    }
    if (!finite.empty()) {
        IntMatrix d(finite.size(), finite.size());
        for (std::size_t i = 0; i < finite.size(); ++i) d(i, i) = finite[i];
        for (const auto& f : smith_normal_form(d).factors())
            if (f > 1) g.torsion_.push_back(f);
    }
    return g;
}

FgAbelianGroup FgAbelianGroup::operator+(const FgAbelianGroup& other) const {
    std::vector<Integer> orders = torsion_;
    orders.insert(orders.end(), other.torsion_.begin(), other.torsion_.end());
    return from_cyclic(rank_ + other.rank_, orders);
}

std::string FgAbelianGroup::to_string() const {
    std::vector<std::string> terms;
    if (rank_ > 0) terms.push_back("Z^" + std::to_string(rank_));
    for (const auto& d : torsion_) terms.push_back("Z/" + d.get_str());
    if (terms.empty()) return "0";
    std::string s = terms[0];
    for (std::size_t i = 1; i < terms.size(); ++i) s += " (+) " + terms[i];
    return s;
}

FgAbelianGroup FgAbelianGroup::parse(std::string_view text) {
    std::string s;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text.substr(i, 3) == "(+)") {
            s += '+';
            i += 2;
        } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
            s += text[i];
        }
    }
    if (s.empty()) throw ParseError("empty group specification");
    std::size_t rank = 0;
    std::vector<Integer> orders;
    std::stringstream ss(s);
    std::string term;
    auto number = [&](const std::string& digits) {
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
            throw ParseError("malformed group term '" + term + "'");
        }
        return Integer(digits);
    };
    while (std::getline(ss, term, '+')) {
        if (term == "0") continue;
        if (term == "Z") {
            ++rank;
        } else if (term.rfind("Z^", 0) == 0) {
            rank += number(term.substr(2)).get_ui();
        } else if (term.rfind("Z/", 0) == 0) {
            const Integer d = number(term.substr(2));
            if (d == 0) throw ParseError("Z/0 is not allowed; write Z");
            orders.push_back(d);
        } else {
            throw ParseError("malformed group term '" + term + "'");
        }
    }
    return from_cyclic(rank, orders);
}

FgAbelianGroup cokernel(const IntMatrix& A) {
    const auto f = smith_normal_form(A).factors();
    return FgAbelianGroup::from_cyclic(A.rows() - f.size(), f);
}

std::size_t matrix_rank(const IntMatrix& A) { return smith_normal_form(A).factors().size(); }

std::size_t kernel_rank(const IntMatrix& A) { return A.cols() - matrix_rank(A); }

MarkedGroupPresentation dimension_group(const Graph& g, Variant v) {
    const IntMatrix a = adjacency_matrix(g);
    if (v == Variant::Stable) return {g.vertex_count(), a, "A"};
    return {g.vertex_count(), a.transpose(), "A^T"};
}

FgAbelianGroup bowen_franks(const Graph& g) {
    const IntMatrix a = adjacency_matrix(g);
    return cokernel(IntMatrix::identity(a.rows()) - a);
}

KTheoryTable ruelle_k_theory(const EmbeddingPair& p) {
    const IntMatrix ag = adjacency_matrix(p.g());
    const IntMatrix ah = adjacency_matrix(p.h());
    const IntMatrix ig = IntMatrix::identity(ag.rows());
    const IntMatrix ih = IntMatrix::identity(ah.rows());
    const std::size_t dg = p.g().vertex_count(), dh = p.h().vertex_count();
    KTheoryTable t;
    t.k0_S = {dg, ag.transpose(), "D^u(G), A_G^T"};
    t.k1_S = {dh, ah.transpose(), "D^u(H), A_H^T"};
    t.k0_U = {dg, ag, "D^s(G), A_G^-1"};
    t.k1_U = {dh, ah, "D^s(H), A_H^-1"};
    const IntMatrix mg = ig - ag.transpose(), mh = ih - ah.transpose();
    t.k0_Rs = cokernel(mg) + FgAbelianGroup::free(kernel_rank(mh));
    t.k1_Rs = cokernel(mh) + FgAbelianGroup::free(kernel_rank(mg));
    const IntMatrix ng = ig - ag, nh = ih - ah;
    t.k0_Ru = cokernel(ng) + FgAbelianGroup::free(kernel_rank(nh));
    t.k1_Ru = cokernel(nh) + FgAbelianGroup::free(kernel_rank(ng));
    t.valid = p.report().standing();
    return t;
}

std::optional<MarkedGroupPresentation> HomologyTable::at(Variant v, int degree) const {
    for (const auto& r : rows)
        if (r.variant == v && r.degree == degree) return r.group;
    return std::nullopt;
}

HomologyTable homology_table(const EmbeddingPair& p) {
    const IntMatrix ag = adjacency_matrix(p.g());
    const IntMatrix ah = adjacency_matrix(p.h());
    const std::size_t dg = p.g().vertex_count(), dh = p.h().vertex_count();
    HomologyTable t;
    t.rows.push_back({Variant::Stable, 0, {dg, ag, "D^s(G), A_G"}});
    t.rows.push_back({Variant::Stable, 1, {dh, ah, "D^s(H), A_H"}});
    t.rows.push_back({Variant::Unstable, 0, {dg, ag.transpose(), "D^u(G), A_G^T"}});
    t.rows.push_back({Variant::Unstable, 1, {dh, ah.transpose(), "D^u(H), A_H^T"}});
    return t;
}

// ---------------------------------------------------------------- pair complex

bool PairComplex::containments_hold() const {
    for (std::size_t j = 0; j < 8; ++j)
        if (initial_violations[j] || terminal_violations[j]) return false;
    return true;
}

namespace {

PathWord image(const EmbeddingPair& p, int i, const PathWord& y, std::size_t from, std::size_t to) {
    PathWord out;
    for (std::size_t k = from; k < to; ++k) out.push_back(p.xi_edge(i, y[k]));
    return out;
}

PathWord concat(const PathWord& a, const PathWord& b) {
    PathWord out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

/// Cell n·k listing of pair-words of length n: cell 0 diagonal, cell n fully
/// swapped, cells 1..n-1 a common prefix followed by a swapped tail, either
/// uniform (k swapped edges) or with an opposite carry edge first (k+1 edges).
std::vector<std::vector<PairWord>> pair_cells(const EmbeddingPair& p, std::size_t n) {
    const Graph& g = p.g();
    const Graph& h = p.h();
    std::vector<std::vector<PairWord>> cells(n + 1);
    for (auto& w : paths_of_length(g, n)) cells[0].emplace_back(w, w);
    for (auto& y : paths_of_length(h, n)) {
        PathWord a = image(p, 0, y, 0, n), b = image(p, 1, y, 0, n);
        cells[n].emplace_back(a, b);
        cells[n].emplace_back(b, a);
    }
    auto prefixes = [&](std::size_t len, Index to) {
        if (len == 0) return std::vector<PathWord>{PathWord{}};
        return paths_of_length(g, len, std::nullopt, to);
    };
    for (std::size_t k = 1; k < n; ++k) {
        for (auto& y : paths_of_length(h, k)) {
            const Index u = p.xi_vertex(0, h.source(y.front()));
            const PathWord t0 = image(p, 0, y, 0, k), t1 = image(p, 1, y, 0, k);
            for (auto& x : prefixes(n - k, u)) {
                cells[k].emplace_back(concat(x, t0), concat(x, t1));
                cells[k].emplace_back(concat(x, t1), concat(x, t0));
            }
        }
        for (auto& y : paths_of_length(h, k + 1)) {
            const Index u = p.xi_vertex(0, h.source(y.front()));
            const PathWord a = concat(image(p, 1, y, 0, 1), image(p, 0, y, 1, k + 1));
            const PathWord b = concat(image(p, 0, y, 0, 1), image(p, 1, y, 1, k + 1));
            for (auto& x : prefixes(n - k - 1, u)) {
                cells[k].emplace_back(concat(x, a), concat(x, b));
                cells[k].emplace_back(concat(x, b), concat(x, a));
            }
        }
    }
    for (auto& c : cells) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    return cells;
}

}  // namespace

PairComplex build_pair_complex(const EmbeddingPair& p, double word_cap) {
    const Graph& g = p.g();
    const double words = std::pow(static_cast<double>(g.edge_count()), 7.0);
    if (words > word_cap) {
        std::ostringstream os;
        os << "pair complex needs " << static_cast<unsigned long long>(words) << " words of length 7, above the cap of "
           << static_cast<unsigned long long>(word_cap);
        throw Error(os.str());
    }
    PairComplex pc;
    pc.block_graph = higher_block_graph(g, PairComplex::kBlock);

    auto vcells = pair_cells(p, 6);
    auto ecells = pair_cells(p, 7);
    std::map<PairWord, std::size_t> vertex_cell;
    for (std::size_t k = 0; k <= 6; ++k) {
        for (auto& w : vcells[k])
            if (!vertex_cell.emplace(w, k).second) ++pc.overlapping_vertices;
        pc.vertex_cells[k] = std::move(vcells[k]);
    }
    std::set<PairWord> edge_seen;
    for (std::size_t j = 0; j <= 7; ++j) {
        for (auto& w : ecells[j])
            if (!edge_seen.insert(w).second) ++pc.overlapping_edges;
        pc.edge_cells[j] = std::move(ecells[j]);
    }

    auto initial = [](const PairWord& w) {
        return PairWord(PathWord(w.first.begin(), w.first.end() - 1), PathWord(w.second.begin(), w.second.end() - 1));
    };
    auto terminal = [](const PairWord& w) {
        return PairWord(PathWord(w.first.begin() + 1, w.first.end()), PathWord(w.second.begin() + 1, w.second.end()));
    };
    auto cell_of = [&](const PairWord& w) -> long {
        auto it = vertex_cell.find(w);
        return it == vertex_cell.end() ? -1 : static_cast<long>(it->second);
    };
    for (std::size_t j = 0; j <= 7; ++j) {
        const long want_i = j == 0 ? 0 : static_cast<long>(j) - 1;
        const long want_t = j == 7 ? 6 : static_cast<long>(j);
        for (const auto& w : pc.edge_cells[j]) {
            if (cell_of(initial(w)) != want_i) ++pc.initial_violations[j];
            if (cell_of(terminal(w)) != want_t) ++pc.terminal_violations[j];
        }
    }

    // Boundary of each V6 generator, pushed to terminal vertices.
    const auto hwords = paths_of_length(p.h(), 6);
    pc.h_words = hwords.size();
    for (const auto& y : hwords) {
        std::map<Index, long> chain;
        chain[g.target(p.xi_edge(0, y.back()))] += 1;
        chain[g.target(p.xi_edge(1, y.back()))] -= 1;
        if (std::any_of(chain.begin(), chain.end(), [](const auto& kv) { return kv.second != 0; })) {
            ++pc.boundary_nonzero;
        }
    }

    std::set<PairWord> orbits;
    for (const auto& w : pc.vertex_cells[6]) orbits.insert(std::min(w, PairWord(w.second, w.first)));
    pc.quotient_rank = orbits.size();

    // Vertices outside V0 that end paths of length 7 within the complement of V0.
    std::set<PairWord> frontier;
    for (std::size_t k = 1; k <= 6; ++k) frontier.insert(pc.vertex_cells[k].begin(), pc.vertex_cells[k].end());
    for (int step = 0; step < 7; ++step) {
        std::set<PairWord> next;
        for (std::size_t j = 0; j <= 7; ++j)
            for (const auto& w : pc.edge_cells[j])
                if (frontier.count(initial(w))) {
                    const PairWord t = terminal(w);
                    const long c = cell_of(t);
                    if (c > 0) next.insert(t);
                }
        frontier = std::move(next);
    }
    pc.eventual_cells_are_v6 =
        frontier == std::set<PairWord>(pc.vertex_cells[6].begin(), pc.vertex_cells[6].end());

    // V6 modulo the swap, with E7, against the block graph of H.
    std::map<PathWord, std::size_t> h_index;
    for (std::size_t i = 0; i < hwords.size(); ++i) h_index[hwords[i]] = i;
    IntMatrix q(hwords.size(), hwords.size());
    auto h_word_of = [&](const PathWord& gw) {
        PathWord out;
        for (Index e : gw) out.push_back(p.h_edge_of(e));
        return out;
    };
    bool mapped = true;
    for (const auto& w : pc.edge_cells[7]) {
        if (w.first > w.second) continue;  // one representative per orbit
        const PathWord hw = h_word_of(w.first);
        auto src = h_index.find(PathWord(hw.begin(), hw.end() - 1));
        auto dst = h_index.find(PathWord(hw.begin() + 1, hw.end()));
        if (src == h_index.end() || dst == h_index.end()) {
            mapped = false;
            continue;
        }
        q(dst->second, src->second) += 1;
    }
    const Graph hb = higher_block_graph(p.h(), PairComplex::kBlock);
    pc.quotient_matches_h = mapped && hb.vertex_count() == hwords.size() && q == adjacency_matrix(hb);
    return pc;
}

// ---------------------------------------------------------------- synthesis

IntMatrix realize_group_matrix(const FgAbelianGroup& target, std::size_t d0, const Integer& M0) {
    const std::size_t r = target.rank();
    const std::size_t l = target.torsion().size();
    const std::size_t d = std::max({d0, r + l + 1, std::size_t{2}});
    IntMatrix B(d, d);
    for (std::size_t i = 0; i < l; ++i) B(r + i, r + i) = target.torsion()[i];
    for (std::size_t i = r + l; i < d; ++i) B(i, i) = 1;
    const std::size_t last = d - 1;
    // Column operations with the final unit make the last row positive.
    for (std::size_t j = 0; j < last; ++j)
        for (std::size_t i = 0; i < d; ++i) B(i, j) += B(i, last);
    // Row operations lift every other row to at least M0.
    for (std::size_t i = 0; i < last; ++i) {
        Integer m = 0;
        for (std::size_t j = 0; j < d; ++j) {
            const Integer need = M0 - B(i, j);  // last row entries are all 1
            if (need > m) m = need;
        }
        for (std::size_t j = 0; j < d; ++j) B(i, j) += m * B(last, j);
    }
    for (std::size_t j = 0; j < d; ++j) B(last, j) += B(0, j);
    return B + IntMatrix::identity(d);
}

EmbeddingPair synthesize_seed(const FgAbelianGroup& k0_torsion, const FgAbelianGroup& k1) {
    if (k0_torsion.rank() != 0) throw Error("synthesize_seed: k0 torsion target must have rank 0");
    const IntMatrix A = realize_group_matrix(k1, 1, 1);
    const std::size_t d = A.rows();
    Integer M0 = 1;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) M0 = std::max(M0, Integer(2 * A(i, j) + 1));
    const IntMatrix B = realize_group_matrix(k0_torsion, d, M0);
    const std::size_t dg = B.rows();

    auto vertex_names = [](std::size_t n) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back("v" + std::to_string(i + 1));
        return out;
    };
    std::vector<std::string> h_ids, g_ids;
    std::vector<Index> h_src, h_dst, g_src, g_dst;
    std::vector<Index> xi0, xi1;
    std::vector<std::vector<std::vector<Index>>> g_edges(dg, std::vector<std::vector<Index>>(dg));
    for (std::size_t i = 0; i < dg; ++i)
        for (std::size_t j = 0; j < dg; ++j) {
            const unsigned long count = B(i, j).get_ui();
            for (unsigned long m = 0; m < count; ++m) {
                g_edges[i][j].push_back(g_ids.size());
                g_ids.push_back("e" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" + std::to_string(m + 1));
                g_src.push_back(i);
                g_dst.push_back(j);
            }
        }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const unsigned long count = A(i, j).get_ui();
            for (unsigned long m = 0; m < count; ++m) {
                h_ids.push_back("y" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" + std::to_string(m + 1));
                h_src.push_back(i);
                h_dst.push_back(j);
                xi0.push_back(g_edges[i][j][m]);
                xi1.push_back(g_edges[i][j][count + m]);
            }
        }
    std::vector<Index> vmap(d);
    for (std::size_t i = 0; i < d; ++i) vmap[i] = i;
    Graph h(vertex_names(d), std::move(h_ids), std::move(h_src), std::move(h_dst));
    Graph g(vertex_names(dg), std::move(g_ids), std::move(g_src), std::move(g_dst));
    return EmbeddingPair(std::move(g), std::move(h), vmap, vmap, std::move(xi0), std::move(xi1));
}

}  // namespace qsft
