#include "qsft/realization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>

namespace qsft {

namespace {

std::complex<double> unit(const Angle& a) {
    return std::polar(1.0, 2.0 * std::numbers::pi * a.turns.get_d());
}

bool level_less(const std::vector<Level>& a, const std::vector<Level>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].n != b[i].n) return a[i].n < b[i].n;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].theta.turns != b[i].theta.turns) return a[i].theta.turns < b[i].theta.turns;
    return false;
}

struct LevelsLess {
    bool operator()(const std::vector<Level>& a, const std::vector<Level>& b) const { return level_less(a, b); }
};

}  // namespace

LevelChain level_chain(const EmbeddingPair& p, const LassoRay& x) {
    const Kappa k = kappa(p, x);
    if (k.infinite) throw Error("level_chain requires finite kappa");
    LevelChain out;
    LassoRay cur = x;
    for (std::size_t i = 0; i < k.count; ++i) {
        const std::size_t n = first_nonxi(p, cur);
        out.levels.push_back({n, theta(p, cur)});
        cur = shift(cur, n);
    }
    out.tail = theta(p, cur);
    return out;
}

std::complex<double> zeta_from_levels(const std::vector<Level>& levels, const Angle& tail) {
    std::complex<double> sum = 0;
    double scale = 1;
    for (const auto& l : levels) {
        sum += scale * (1.0 - std::ldexp(1.0, 1 - static_cast<int>(l.n))) * unit(l.theta);
        scale *= std::ldexp(1.0, -3 - static_cast<int>(l.n));
    }
    return sum + scale * unit(tail);
}

ZetaValue zeta_approx(const EmbeddingPair& p, const LassoRay& x, std::size_t N) {
    const Kappa k = kappa(p, x);
    if (!k.infinite) {
        const LevelChain c = level_chain(p, x);
        return {zeta_from_levels(c.levels, c.tail), Rational(k.count + 1) * pow2_neg(48)};
    }
    const std::size_t K = nonxi_count(p, x, N);
    const LassoRay a = stratum_approximant(p, x, N, K);
    const LevelChain c = level_chain(p, a);
    return {zeta_from_levels(c.levels, c.tail), 24 * pow2_neg(N) + Rational(K + 1) * pow2_neg(48)};
}

std::complex<double> CircleSpec::center() const {
    std::complex<double> sum = 0;
    double scale = 1;
    for (const auto& l : levels) {
        sum += scale * (1.0 - std::ldexp(1.0, 1 - static_cast<int>(l.n))) * unit(l.theta);
        scale *= std::ldexp(1.0, -3 - static_cast<int>(l.n));
    }
    return sum;
}

CircleEnumeration circle_specs(const EmbeddingPair& p, std::size_t max_k, std::size_t max_depth,
                               const Rational& min_radius) {
    const Graph& g = p.g();
    const auto& tails = p.tables().tail;
    std::set<std::vector<Level>, LevelsLess> found;
    if (std::any_of(tails.begin(), tails.end(), [](const auto& t) { return t.has_value(); })) found.insert(std::vector<Level>{});

    // Frontier state: vertex, completed levels, length and angle of the open ξ-run.
    using State = std::tuple<Index, std::vector<Level>, std::size_t, Rational>;
    auto state_less = [](const State& a, const State& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        if (std::get<2>(a) != std::get<2>(b)) return std::get<2>(a) < std::get<2>(b);
        if (std::get<3>(a) != std::get<3>(b)) return std::get<3>(a) < std::get<3>(b);
        return level_less(std::get<1>(a), std::get<1>(b));
    };
    std::set<State, decltype(state_less)> frontier(state_less);
    if (max_k > 0)
        for (Index v = 0; v < g.vertex_count(); ++v) frontier.insert({v, {}, 0, Rational(0)});
    for (std::size_t depth = 0; depth < max_depth && !frontier.empty(); ++depth) {
        std::set<State, decltype(state_less)> next(state_less);
        for (const auto& [v, levels, run, th] : frontier) {
            for (Index e : g.out_edges(v)) {
                const Index w = g.target(e);
                if (p.in_xi(e)) {
                    Rational t = th;
                    if (p.epsilon(e)) t += pow2_neg(run + 1);
                    next.insert({w, levels, run + 1, t});
                    continue;
                }
                std::vector<Level> done = levels;
                done.push_back({run + 1, Angle(th)});
                if (tails[w]) found.insert(done);
                if (done.size() < max_k) next.insert({w, std::move(done), 0, Rational(0)});
            }
        }
        if (next.size() > kCircleStateCap) throw Error("circle_specs: state count exceeds cap");
        frontier = std::move(next);
    }

    CircleEnumeration out;
    for (const auto& levels : found) {
        std::size_t total = 0;
        for (const auto& l : levels) total += l.n;
        CircleSpec s{levels, pow2_neg(3 * levels.size() + total)};
        if (s.radius < min_radius) {
            ++out.pruned;
            out.pruned_radius_sum += s.radius;
        } else {
            out.specs.push_back(std::move(s));
        }
    }
    return out;
}

std::string FiberClass::to_string() const {
    switch (kind) {
        case Kind::Circles: return "Circles(" + std::to_string(count) + ")";
        case Kind::Points: return "Points(" + std::to_string(count) + ")";
        case Kind::TotallyDisconnected: return "TotallyDisconnected";
    }
    return "";
}

FiberClass fiber_classify(const EmbeddingPair& p, const LassoRay& base) {
    const Graph& g = p.g();
    const QuotientGraph& q = p.quotient();
    std::vector<std::vector<Index>> pre(q.graph.edge_count());
    for (Index e = 0; e < g.edge_count(); ++e) pre[q.tau[e]].push_back(e);
    auto xi_class = [&](Index qe) { return !pre[qe].empty() && p.in_xi(pre[qe].front()); };

    const auto& P = base.prefix();
    const auto& C = base.cycle();
    const bool all_xi = std::all_of(C.begin(), C.end(), xi_class);
    const bool none_xi = std::none_of(C.begin(), C.end(), xi_class);
    if (!all_xi && !none_xi) return {FiberClass::Kind::TotallyDisconnected, 0};

    // viable[m]: vertices where an infinite preimage of positions m+1, m+2, ... can start.
    using VSet = std::vector<char>;
    auto step_back = [&](Index qe, const VSet& after) {
        VSet out(g.vertex_count(), 0);
        for (Index e : pre[qe])
            if (after[g.target(e)]) out[g.source(e)] = 1;
        return out;
    };
    std::vector<VSet> cyc(C.size(), VSet(g.vertex_count(), 1));
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t j = C.size(); j-- > 0;) {
            VSet nv = step_back(C[j], cyc[(j + 1) % C.size()]);
            if (nv != cyc[j]) {
                cyc[j] = std::move(nv);
                changed = true;
            }
        }
    }
    std::vector<VSet> pref(P.size() + 1);
    pref[P.size()] = cyc[0];
    for (std::size_t i = P.size(); i-- > 0;) pref[i] = step_back(P[i], pref[i + 1]);
    auto viable = [&](std::size_t m) -> const VSet& {
        return m < P.size() ? pref[m] : cyc[(m - P.size()) % C.size()];
    };

    // Preimage paths of positions 1..L that extend to infinite preimages.
    auto count_paths = [&](std::size_t L) {
        std::vector<Integer> ways(g.vertex_count(), 0);
        for (Index v = 0; v < g.vertex_count(); ++v)
            if (viable(0)[v]) ways[v] = 1;
        for (std::size_t m = 0; m < L; ++m) {
            std::vector<Integer> next(g.vertex_count(), 0);
            for (Index e : pre[base.at(m + 1)])
                if (viable(m + 1)[g.target(e)]) next[g.target(e)] += ways[g.source(e)];
            ways = std::move(next);
        }
        Integer total = 0;
        for (const auto& w : ways) total += w;
        if (total == 0) throw Error("base ray has no preimage in G");
        return static_cast<std::size_t>(total.get_ui());
    };

    if (all_xi) {
        std::size_t last = 0;
        for (std::size_t i = 0; i < P.size(); ++i)
            if (!xi_class(P[i])) last = i + 1;
        if (last == 0) {
            count_paths(1);
            return {FiberClass::Kind::Circles, 1};
        }
        return {FiberClass::Kind::Circles, count_paths(last)};
    }
    std::size_t last = 0;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (xi_class(P[i])) last = i + 1;
    return {FiberClass::Kind::Points, count_paths(std::max<std::size_t>(last, 1))};
}

namespace {

std::string fixed9(double v) {
    if (std::abs(v) < 5e-10) v = 0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return buf;
}

}  // namespace

std::string render_svg(const EmbeddingPair& p, std::size_t max_k, std::size_t max_depth,
                       const Rational& min_radius, double scale) {
    const CircleEnumeration circles = circle_specs(p, max_k, max_depth, min_radius);
    const double pad = scale / 16;
    const double side = 2 * scale + 2 * pad;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed9(side) << "\" height=\""
       << fixed9(side) << "\" viewBox=\"0 0 " << fixed9(side) << " " << fixed9(side) << "\">\n"
       << "<g fill=\"none\" stroke=\"black\" stroke-width=\"" << fixed9(scale / 256) << "\">\n";
    for (const auto& s : circles.specs) {
        const auto c = s.center();
        os << "<circle cx=\"" << fixed9(pad + scale * (1 + c.real())) << "\" cy=\"" << fixed9(pad + scale * (1 - c.imag()))
           << "\" r=\"" << fixed9(scale * s.radius.get_d()) << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

namespace {

std::string invariant_key(const EmbeddingPair& p, const LassoRay& x, std::size_t horizon) {
    std::ostringstream os;
    const LassoRay t = tau_image(p, x);
    for (Index e : t.prefix()) os << e << ',';
    os << ';';
    for (Index e : t.cycle()) os << e << ',';
    os << '|';
    const Kappa k = kappa(p, x);
    if (!k.infinite) {
        const LevelChain c = level_chain(p, x);
        for (const auto& l : c.levels) os << l.n << ':' << l.theta.turns.get_str() << ' ';
        os << '|' << c.tail.turns.get_str();
        return os.str();
    }
    LassoRay cur = x;
    for (std::size_t pos = 0; pos <= horizon;) {
        const std::size_t n = first_nonxi(p, cur);
        os << n << ':' << theta(p, cur).turns.get_str() << ' ';
        pos += n;
        cur = shift(cur, n);
    }
    return os.str();
}

}  // namespace

InjectivityReport embedding_injectivity_check(const EmbeddingPair& p, std::size_t depth, std::size_t max_cycle) {
    const Graph& g = p.g();
    std::vector<PathWord> words;
    if (depth == 0) {
        words.push_back({});
    } else {
        words = paths_of_length(g, depth);
    }
    const std::size_t estimate = words.size() * std::max<std::size_t>(1, max_cycle) * g.edge_count();
    if (estimate > kInjectivityLassoCap) throw Error("embedding_injectivity_check: lasso count exceeds cap");

    std::set<std::pair<PathWord, PathWord>> lassos;
    for (const auto& w : words) {
        for (std::size_t c = 1; c <= max_cycle; ++c) {
            std::vector<PathWord> cycles;
            if (w.empty()) {
                for (Index v = 0; v < g.vertex_count(); ++v) {
                    auto cs = paths_of_length(g, c, v, v);
                    cycles.insert(cycles.end(), cs.begin(), cs.end());
                }
            } else {
                const Index u = g.target(w.back());
                cycles = paths_of_length(g, c, u, u);
            }
            for (auto& cy : cycles) {
                LassoRay x(w, cy);
                lassos.emplace(x.prefix(), x.cycle());
            }
        }
    }
    std::size_t horizon = depth + 1;
    std::size_t period = 1;
    for (std::size_t c = 1; c <= max_cycle; ++c) period = std::lcm(period, c);
    horizon += 2 * period;

    InjectivityReport r;
    r.lassos = lassos.size();
    std::map<std::string, std::set<std::pair<PathWord, PathWord>>> by_key;
    std::set<std::pair<PathWord, PathWord>> classes;
    for (const auto& [pre, cyc] : lassos) {
        const LassoRay x(pre, cyc);
        const LassoRay rep = canonical(p, x).rep;
        std::pair<PathWord, PathWord> cls(rep.prefix(), rep.cycle());
        classes.insert(cls);
        by_key[invariant_key(p, x, horizon)].insert(cls);
    }
    r.classes = classes.size();
    for (const auto& [key, members] : by_key) r.collisions += members.size() * (members.size() - 1) / 2;
    return r;
}

}  // namespace qsft
