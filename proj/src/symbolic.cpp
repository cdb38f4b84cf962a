#include "qsft/symbolic.hpp"

#include "qsft/metric.hpp"

#include <algorithm>
#include <numeric>

namespace qsft {

namespace {

std::size_t primitive_period(const PathWord& c) {
    const std::size_t L = c.size();
    for (std::size_t p = 1; p < L; ++p) {
        if (L % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < L && ok; ++i) ok = c[i] == c[i - p];
        if (ok) return p;
    }
    return L;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

PathWord parse_word(const Graph& g, std::string_view text) {
    PathWord out;
    const std::string t = trim(text);
    if (t.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = t.find(',', start);
        const std::string item = trim(std::string_view(t).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (item.empty()) throw ParseError("empty edge name in '" + t + "'");
        auto e = g.find_edge(item);
        if (!e) throw ParseError("unknown edge '" + item + "'");
        out.push_back(*e);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

LassoRay::LassoRay(PathWord prefix, PathWord cycle) : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
    if (cycle_.empty()) throw Error("lasso cycle must be nonempty");
    cycle_.resize(primitive_period(cycle_));
    while (!prefix_.empty() && prefix_.back() == cycle_.back()) {
        prefix_.pop_back();
        std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
    }
}

Index LassoRay::at(std::size_t n) const {
    if (n == 0) throw Error("positions are 1-indexed");
    if (n <= prefix_.size()) return prefix_[n - 1];
    return cycle_[(n - 1 - prefix_.size()) % cycle_.size()];
}

bool LassoRay::valid_in(const Graph& g) const {
    PathWord all = prefix_;
    all.insert(all.end(), cycle_.begin(), cycle_.end());
    all.push_back(cycle_.front());
    return is_path(g, all);
}

std::string LassoRay::to_string(const Graph& g) const {
    std::string s;
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (i) s += ',';
        s += g.edge_id(prefix_[i]);
    }
    s += ';';
    for (std::size_t i = 0; i < cycle_.size(); ++i) {
        if (i) s += ',';
        s += g.edge_id(cycle_[i]);
    }
    return s;
}

LassoRay LassoRay::parse(const Graph& g, std::string_view text) {
    std::string t;
    for (char c : text)
        if (c != '(' && c != ')' && c != '[' && c != ']') t += c;
    const auto semi = t.find(';');
    if (semi == std::string::npos || t.find(';', semi + 1) != std::string::npos) {
        throw ParseError("ray literal needs exactly one ';': '" + std::string(text) + "'");
    }
    PathWord prefix = parse_word(g, std::string_view(t).substr(0, semi));
    PathWord cycle = parse_word(g, std::string_view(t).substr(semi + 1));
    if (cycle.empty()) throw ParseError("ray literal has an empty cycle: '" + std::string(text) + "'");
    LassoRay ray(std::move(prefix), std::move(cycle));
    if (!ray.valid_in(g)) throw ParseError("ray literal is not a path: '" + std::string(text) + "'");
    return ray;
}

std::optional<std::size_t> common_prefix(const LassoRay& a, const LassoRay& b) {
    const std::size_t bound = std::max(a.prefix().size(), b.prefix().size()) +
                              std::lcm(a.cycle().size(), b.cycle().size());
    for (std::size_t n = 1; n <= bound; ++n)
        if (a.at(n) != b.at(n)) return n - 1;
    return std::nullopt;
}

std::strong_ordering compare_rays(const LassoRay& a, const LassoRay& b) {
    auto m = common_prefix(a, b);
    if (!m) return std::strong_ordering::equal;
    return a.at(*m + 1) <=> b.at(*m + 1);
}

Kappa kappa(const EmbeddingPair& p, const LassoRay& x) {
    for (Index e : x.cycle())
        if (!p.in_xi(e)) return Kappa::inf();
    std::size_t n = 0;
    for (Index e : x.prefix())
        if (!p.in_xi(e)) ++n;
    return Kappa::finite(n);
}

std::size_t nonxi_count(const EmbeddingPair& p, const LassoRay& x, std::size_t N) {
    std::size_t n = 0;
    for (std::size_t i = 1; i <= N; ++i)
        if (!p.in_xi(x.at(i))) ++n;
    return n;
}

std::size_t first_nonxi(const EmbeddingPair& p, const LassoRay& x) {
    const std::size_t bound = x.prefix().size() + x.cycle().size();
    for (std::size_t n = 1; n <= bound; ++n)
        if (!p.in_xi(x.at(n))) return n;
    throw Error("first_nonxi: the ray lies entirely in xi(H^1)");
}

Angle theta(const EmbeddingPair& p, const LassoRay& x) {
    const Kappa k = kappa(p, x);
    Rational sum = 0;
    if (k.infinite || k.count > 0) {
        const std::size_t n = first_nonxi(p, x);
        for (std::size_t j = 1; j < n; ++j)
            if (p.epsilon(x.at(j))) sum += pow2_neg(j);
        return Angle(sum);
    }
    const std::size_t P = x.prefix().size();
    for (std::size_t j = 1; j <= P; ++j)
        if (p.epsilon(x.at(j))) sum += pow2_neg(j);
    const std::size_t L = x.cycle().size();
    Integer c = 0;
    for (std::size_t j = 0; j < L; ++j) c = 2 * c + p.epsilon(x.cycle()[j]);
    sum += pow2_neg(P) * Rational(c, pow2(L) - 1);
    return Angle(sum);
}

std::optional<LassoRay> flip(const EmbeddingPair& p, const LassoRay& x) {
    // The cycle must carry a constant superscript i.
    int i = -1;
    for (Index e : x.cycle()) {
        if (!p.in_xi(e)) return std::nullopt;
        const int s = p.epsilon(e);
        if (i >= 0 && s != i) return std::nullopt;
        i = s;
    }
    // s0: first position of the maximal constant-i tail.
    const auto& pre = x.prefix();
    std::size_t s0 = pre.size() + 1;
    while (s0 > 1 && p.in_xi(pre[s0 - 2]) && p.epsilon(pre[s0 - 2]) == i) --s0;
    std::size_t start = 1;
    if (s0 > 1) start = p.in_xi(pre[s0 - 2]) ? s0 - 1 : s0;
    PathWord np = pre;
    for (std::size_t n = start; n <= np.size(); ++n) np[n - 1] = p.partner(np[n - 1]);
    PathWord nc = x.cycle();
    for (auto& e : nc) e = p.partner(e);
    return LassoRay(std::move(np), std::move(nc));
}

ClassPoint canonical(const EmbeddingPair& p, const LassoRay& x) {
    auto other = flip(p, x);
    if (other && compare_rays(*other, x) == std::strong_ordering::less) return {*other};
    return {x};
}

LassoRay shift(const LassoRay& x, std::size_t n) {
    const std::size_t drop = std::min(n, x.prefix().size());
    PathWord prefix(x.prefix().begin() + static_cast<long>(drop), x.prefix().end());
    PathWord cycle = x.cycle();
    const std::size_t rot = (n - drop) % cycle.size();
    std::rotate(cycle.begin(), cycle.begin() + static_cast<long>(rot), cycle.end());
    return LassoRay(std::move(prefix), std::move(cycle));
}

LassoRay tau_image(const EmbeddingPair& p, const LassoRay& x) {
    const auto& tau = p.quotient().tau;
    PathWord prefix, cycle;
    for (Index e : x.prefix()) prefix.push_back(tau[e]);
    for (Index e : x.cycle()) cycle.push_back(tau[e]);
    return LassoRay(std::move(prefix), std::move(cycle));
}

LassoRay stratum_approximant(const EmbeddingPair& p, const LassoRay& x, std::size_t N, std::size_t k) {
    if (N == 0) throw Error("stratum_approximant requires depth N >= 1");
    const std::size_t j = nonxi_count(p, x, N);
    if (k < j) {
        throw Error("target stratum " + std::to_string(k) + " is below the " + std::to_string(j) +
                    " non-xi edges already within depth " + std::to_string(N));
    }
    const Kappa kx = kappa(p, x);
    if (!kx.infinite && kx.count == k) return x;
    PathWord prefix;
    for (std::size_t i = 1; i <= N; ++i) prefix.push_back(x.at(i));
    const Index v = p.g().target(prefix.back());
    PathWord bridge = exact_completion(p, v, k - j);
    prefix.insert(prefix.end(), bridge.begin(), bridge.end());
    const Index w = bridge.empty() ? v : p.g().target(bridge.back());
    const TailWitness& tail = *p.tables().tail[w];
    prefix.insert(prefix.end(), tail.prefix.begin(), tail.prefix.end());
    return LassoRay(std::move(prefix), tail.cycle);
}

LassoRay lift_preimage(const EmbeddingPair& p, const LassoRay& x, const LassoRay& y) {
    const Graph& g = p.g();
    std::vector<Index> firsts{y.at(1)};
    if (p.in_xi(y.at(1))) firsts.push_back(p.partner(y.at(1)));
    if (auto fy = flip(p, y)) {
        firsts.push_back(fy->at(1));
        if (p.in_xi(fy->at(1))) firsts.push_back(p.partner(fy->at(1)));
    }
    std::vector<LassoRay> reps{x};
    if (auto fx = flip(p, x)) reps.push_back(*fx);

    std::optional<LassoRay> best;
    std::optional<MetricInterval> best_d;
    std::vector<LassoRay> seen;
    for (Index e : firsts) {
        for (const auto& r : reps) {
            if (g.target(e) != g.source(r.at(1))) continue;
            PathWord prefix{e};
            prefix.insert(prefix.end(), r.prefix().begin(), r.prefix().end());
            LassoRay z(std::move(prefix), r.cycle());
            if (std::find(seen.begin(), seen.end(), z) != seen.end()) continue;
            seen.push_back(z);
            MetricInterval d = d_extended(p, z, y, kLiftDepth);
            if (!best || d.hi < best_d->hi) {
                best = z;
                best_d = d;
            }
        }
    }
    if (!best) {
        throw Error("lift_preimage: '" + x.to_string(g) + "' cannot follow the first edge of '" + y.to_string(g) + "'");
    }
    return *best;
}

}  // namespace qsft
