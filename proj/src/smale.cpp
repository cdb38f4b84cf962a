#include "qsft/smale.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace qsft {

namespace {

std::size_t pmod(long a, std::size_t m) {
    const long mm = static_cast<long>(m);
    return static_cast<std::size_t>(((a % mm) + mm) % mm);
}

PathWord primitive_root(PathWord c) {
    const std::size_t L = c.size();
    for (std::size_t p = 1; p < L; ++p) {
        if (L % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < L && ok; ++i) ok = c[i] == c[i - p];
        if (ok) {
            c.resize(p);
            return c;
        }
    }
    return c;
}

PathWord parse_edges(const Graph& g, const std::string& text) {
    PathWord out;
    std::size_t start = 0;
    auto trimmed = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        if (b == std::string::npos) return std::string();
        return s.substr(b, s.find_last_not_of(" \t") - b + 1);
    };
    if (trimmed(text).empty()) return out;
    while (true) {
        const auto comma = text.find(',', start);
        const std::string item = trimmed(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        auto e = g.find_edge(item);
        if (!e) throw ParseError("unknown edge '" + item + "'");
        out.push_back(*e);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

struct Window {
    long lo, hi;
};

Window joint_window(const BiLasso& x, const BiLasso& y) {
    const long left = static_cast<long>(std::lcm(x.past().size(), y.past().size()));
    const long right = static_cast<long>(std::lcm(x.future().size(), y.future().size()));
    return {std::min(x.start(), y.start()) - left, std::max(x.end(), y.end()) + right};
}

BiLasso map_to_h(const EmbeddingPair& p, const BiLasso& x) {
    auto conv = [&](const PathWord& w) {
        PathWord out;
        for (Index e : w) out.push_back(p.h_edge_of(e));
        return out;
    };
    return BiLasso(conv(x.past()), conv(x.core()), conv(x.future()), x.start());
}

LassoRay ray_to_h(const EmbeddingPair& p, const LassoRay& r) {
    PathWord prefix, cycle;
    for (Index e : r.prefix()) prefix.push_back(p.h_edge_of(e));
    for (Index e : r.cycle()) cycle.push_back(p.h_edge_of(e));
    return LassoRay(std::move(prefix), std::move(cycle));
}

}  // namespace

BiLasso::BiLasso(PathWord past, PathWord core, PathWord future, long start)
    : past_(std::move(past)), core_(std::move(core)), future_(std::move(future)), start_(start) {
    if (past_.empty() || future_.empty()) throw Error("bi-lasso cycles must be nonempty");
    past_ = primitive_root(std::move(past_));
    future_ = primitive_root(std::move(future_));
    while (!core_.empty() && core_.front() == past_.front()) {
        std::rotate(past_.begin(), past_.begin() + 1, past_.end());
        core_.erase(core_.begin());
        ++start_;
    }
    while (!core_.empty() && core_.back() == future_.back()) {
        std::rotate(future_.rbegin(), future_.rbegin() + 1, future_.rend());
        core_.pop_back();
    }
}

Index BiLasso::at(long n) const {
    if (n < start_) {
        const long k = start_ - n;
        return past_[pmod(-k, past_.size())];
    }
    if (n >= end()) return future_[pmod(n - end(), future_.size())];
    return core_[static_cast<std::size_t>(n - start_)];
}

LassoRay BiLasso::ray_from(long s) const {
    if (s >= end()) {
        PathWord cycle = future_;
        std::rotate(cycle.begin(), cycle.begin() + static_cast<long>(pmod(s - end(), cycle.size())), cycle.end());
        return LassoRay({}, std::move(cycle));
    }
    PathWord prefix;
    for (long n = s; n < end(); ++n) prefix.push_back(at(n));
    return LassoRay(std::move(prefix), future_);
}

bool BiLasso::valid_in(const Graph& g) const {
    const long lo = start_ - 2 * static_cast<long>(past_.size()) - 1;
    const long hi = end() + 2 * static_cast<long>(future_.size()) + 1;
    for (long n = lo; n <= hi; ++n) {
        if (at(n) >= g.edge_count()) return false;
        if (n < hi && g.target(at(n)) != g.source(at(n + 1))) return false;
    }
    return true;
}

bool BiLasso::operator==(const BiLasso& other) const {
    const Window w = joint_window(*this, other);
    for (long n = w.lo; n <= w.hi; ++n)
        if (at(n) != other.at(n)) return false;
    return true;
}

BiLasso BiLasso::parse(const Graph& g, std::string_view text) {
    const std::string t(text);
    const auto s1 = t.find(';');
    const auto s2 = s1 == std::string::npos ? std::string::npos : t.find(';', s1 + 1);
    if (s2 == std::string::npos || t.find(';', s2 + 1) != std::string::npos) {
        throw ParseError("bi-lasso literal needs the form past;core;future: '" + t + "'");
    }
    const std::string core = t.substr(s1 + 1, s2 - s1 - 1);
    PathWord past = parse_edges(g, t.substr(0, s1));
    PathWord future = parse_edges(g, t.substr(s2 + 1));
    if (past.empty() || future.empty()) throw ParseError("bi-lasso cycles must be nonempty: '" + t + "'");
    PathWord left, right;
    const auto bar = core.find('|');
    if (bar == std::string::npos) {
        right = parse_edges(g, core);
    } else {
        left = parse_edges(g, core.substr(0, bar));
        right = parse_edges(g, core.substr(bar + 1));
    }
    const long start = 1 - static_cast<long>(left.size());
    left.insert(left.end(), right.begin(), right.end());
    BiLasso x(std::move(past), std::move(left), std::move(future), start);
    if (!x.valid_in(g)) throw ParseError("bi-lasso literal is not a path: '" + t + "'");
    return x;
}

std::string BiLasso::to_string(const Graph& g) const {
    auto join = [&](long from, long to) {
        std::string s;
        for (long n = from; n < to; ++n) {
            if (n > from) s += ',';
            s += g.edge_id(at(n));
        }
        return s;
    };
    auto cyc = [&](const PathWord& w) {
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) s += ',';
            s += g.edge_id(w[i]);
        }
        return s;
    };
    const long lo = std::min(start_, 1L);
    const long hi = std::max(end(), 1L);
    // Re-express the past cycle as seen just left of position lo.
    PathWord past;
    for (long n = lo - static_cast<long>(past_.size()); n < lo; ++n) past.push_back(at(n));
    PathWord future;
    for (long n = hi; n < hi + static_cast<long>(future_.size()); ++n) future.push_back(at(n));
    return cyc(past) + ";" + join(lo, 1) + "|" + join(1, hi) + ";" + cyc(future);
}

BiLasso shift(const BiLasso& x) { return BiLasso(x.past(), x.core(), x.future(), x.start() - 1); }

BiLasso inverse_shift(const BiLasso& x) { return BiLasso(x.past(), x.core(), x.future(), x.start() + 1); }

Tower pi_xi_tower(const EmbeddingPair& p, const BiLasso& x, std::size_t M) {
    Tower t;
    for (std::size_t n = 0; n <= M; ++n) t.levels.push_back(canonical(p, x.ray_from(1 - static_cast<long>(n))));
    return t;
}

Tower shift_tower(const EmbeddingPair& p, const Tower& x) {
    Tower t;
    for (const auto& c : x.levels) t.levels.push_back(canonical(p, shift(c.rep)));
    return t;
}

bool tower_consistent(const EmbeddingPair& p, const Tower& x) {
    for (std::size_t n = 0; n + 1 < x.levels.size(); ++n)
        if (canonical(p, shift(x.levels[n + 1].rep)) != x.levels[n]) return false;
    return true;
}

MetricInterval tower_distance(const EmbeddingPair& p, const Tower& x, const Tower& y, std::size_t N) {
    if (x.levels.size() != y.levels.size()) throw Error("tower_distance requires equal depths");
    if (x.levels.empty()) throw Error("tower_distance of empty towers");
    const std::size_t M = x.depth();
    MetricInterval out{0, 3 * pow2_neg(M)};
    for (std::size_t n = 0; n <= M; ++n) {
        const MetricInterval d = d_class(p, x.levels[n], y.levels[n], N);
        const Rational s = pow2_neg(n);
        out.lo = rmax(out.lo, s * d.lo);
        out.hi = rmax(out.hi, s * d.hi);
    }
    return out;
}

Tower bracket(const EmbeddingPair& p, const Tower& x, const Tower& y) {
    const MetricInterval d = tower_distance(p, x, y);
    if (d.hi > Rational(1, 2)) throw Error("bracket requires tower distance at most 1/2, got " + to_string(d.hi));
    Tower z;
    z.levels.push_back(x.levels.front());
    for (std::size_t n = 0; n + 1 < x.levels.size(); ++n) {
        z.levels.push_back(canonical(p, lift_preimage(p, z.levels[n].rep, y.levels[n + 1].rep)));
    }
    return z;
}

std::optional<PairWitness> pair_related(const EmbeddingPair& p, const BiLasso& x, const BiLasso& y) {
    if (x == y) return PairWitness{};
    const Window w = joint_window(x, y);

    auto swapped_from = [&](long from, int i) {
        for (long n = from; n <= w.hi; ++n) {
            const Index a = x.at(n), b = y.at(n);
            if (!p.in_xi(a) || p.epsilon(a) != i || b != p.partner(a)) return false;
        }
        return true;
    };

    if (p.in_xi(x.at(w.lo))) {
        const int i = p.epsilon(x.at(w.lo));
        if (swapped_from(w.lo, i)) {
            PairWitness out;
            out.kind = PairWitness::Case::TotalSwap;
            out.superscript = i;
            out.h_path = map_to_h(p, x);
            return out;
        }
    }

    // Both paths are periodic left of the window; a difference there recurs forever.
    const long left_end = std::min(x.start(), y.start());
    for (long n = w.lo; n < left_end; ++n)
        if (x.at(n) != y.at(n)) return std::nullopt;
    long f = left_end;
    while (x.at(f) == y.at(f)) ++f;

    const Index xf = x.at(f), yf = y.at(f);
    if (p.in_xi(xf) && p.in_xi(yf) && yf == p.partner(xf)) {
        // Pivot inside ξ(H¹): x_f = ξ^{1-i}(z_f), y_f = ξ^i(z_f).
        const int i = p.epsilon(yf);
        if (swapped_from(f + 1, i)) {
            PairWitness out;
            out.kind = PairWitness::Case::Pivot;
            out.superscript = i;
            out.m = f;
            out.h_tail = ray_to_h(p, x.ray_from(f));
            return out;
        }
    }
    const Index pivot = x.at(f - 1);
    if (!p.in_xi(pivot) && p.in_xi(xf)) {
        const int i = p.epsilon(xf);
        if (swapped_from(f, i)) {
            PairWitness out;
            out.kind = PairWitness::Case::Pivot;
            out.superscript = i;
            out.m = f - 1;
            out.pivot_nonxi = true;
            out.h_tail = ray_to_h(p, x.ray_from(f));
            return out;
        }
    }
    return std::nullopt;
}

TransversalSpec transversal_spec(const EmbeddingPair& p) {
    const Graph& g = p.g();
    std::optional<PathWord> best;
    for (Index v = 0; v < g.vertex_count(); ++v) {
        std::vector<long> parent(g.vertex_count(), -2);
        std::deque<Index> queue{v};
        parent[v] = -1;
        std::optional<PathWord> found;
        while (!queue.empty() && !found) {
            const Index u = queue.front();
            queue.pop_front();
            for (Index e : g.out_edges(u)) {
                if (p.in_xi(e)) continue;
                const Index t = g.target(e);
                if (t == v) {
                    PathWord cycle{e};
                    for (Index x = u; parent[x] >= 0; x = g.source(static_cast<Index>(parent[x])))
                        cycle.push_back(static_cast<Index>(parent[x]));
                    std::reverse(cycle.begin(), cycle.end());
                    found = std::move(cycle);
                    break;
                }
                if (parent[t] == -2) {
                    parent[t] = static_cast<long>(e);
                    queue.push_back(t);
                }
            }
        }
        if (found && (!best || found->size() < best->size())) best = std::move(found);
    }
    if (!best) throw Error("G has no cycle avoiding xi(H^1)");
    return {*best};
}

namespace {

bool matches_periodic(const BiLasso& x, const PathWord& c, long lo, long hi) {
    const std::size_t L = c.size();
    for (std::size_t r = 0; r < L; ++r) {
        bool ok = true;
        for (long n = lo; n <= hi && ok; ++n) ok = x.at(n) == c[pmod(n - 1 + static_cast<long>(r), L)];
        if (ok) return true;
    }
    return false;
}

}  // namespace

bool membership_Yu(const EmbeddingPair&, const TransversalSpec& spec, const BiLasso& x) {
    const long span = static_cast<long>(std::lcm(x.past().size(), spec.cycle.size()));
    return matches_periodic(x, spec.cycle, std::min(x.start(), 1L) - span, 0);
}

bool membership_Ys(const EmbeddingPair&, const TransversalSpec& spec, const BiLasso& x) {
    const long span = static_cast<long>(std::lcm(x.future().size(), spec.cycle.size()));
    return matches_periodic(x, spec.cycle, -1, std::max(x.end(), -1L) + span);
}

}  // namespace qsft
