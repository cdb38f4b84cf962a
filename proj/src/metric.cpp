#include "qsft/metric.hpp"

namespace qsft {

Rational d_shift(const LassoRay& x, const LassoRay& y) {
    auto m = common_prefix(x, y);
    if (!m) return 0;
    return pow2_neg(*m);
}

Rational circle_distance(const Angle& s, const Angle& t) {
    const Rational diff = frac(s.turns - t.turns);
    const Rational other = 1 - diff;
    return rmin(diff, other);
}

Rational d_quotient(const EmbeddingPair& p, const LassoRay& x, const LassoRay& y) {
    return d_shift(tau_image(p, x), tau_image(p, y));
}

Rational lambda(const EmbeddingPair& p, const LassoRay& x, const LassoRay& y) {
    const Kappa kx = kappa(p, x);
    if (kx.infinite || kx != kappa(p, y)) throw Error("lambda requires equal finite kappa");
    std::size_t k = kx.count;
    LassoRay a = x, b = y;
    Rational scale = 1;
    while (true) {
        const Angle ta = theta(p, a), tb = theta(p, b);
        if (k == 0) return scale * circle_distance(ta, tb);
        const std::size_t na = first_nonxi(p, a), nb = first_nonxi(p, b);
        if (na == nb && ta == tb) {
            scale *= pow2_neg(2 + na);
            a = shift(a, na);
            b = shift(b, na);
            --k;
            continue;
        }
        return scale * (rabs(pow2_neg(na) - pow2_neg(nb)) + circle_distance(ta, tb));
    }
}

Rational d_stratum(const EmbeddingPair& p, const LassoRay& x, const LassoRay& y) {
    const Kappa kx = kappa(p, x), ky = kappa(p, y);
    if (kx.infinite || ky.infinite) throw Error("d_stratum requires finite kappa");
    if (kx.count != ky.count) throw Error("d_stratum requires equal kappa");
    return d_quotient(p, x, y) + lambda(p, x, y);
}

MetricInterval d_extended(const EmbeddingPair& p, const LassoRay& x, const LassoRay& y, std::size_t N) {
    const Kappa kx = kappa(p, x), ky = kappa(p, y);
    if (!kx.infinite && kx == ky) {
        const Rational d = d_stratum(p, x, y);
        return {d, d};
    }
    // Approximants agree with the inputs to depth N+1, so each moves by at
    // most 3·2^{-(N+1)} and the enclosure has width at most 6·2^{-N}.
    const std::size_t depth = N + 1;
    const std::size_t K = std::max(nonxi_count(p, x, depth), nonxi_count(p, y, depth));
    const LassoRay xa = stratum_approximant(p, x, depth, K);
    const LassoRay ya = stratum_approximant(p, y, depth, K);
    const Rational d = d_stratum(p, xa, ya);
    const Rational r = 6 * pow2_neg(depth);
    MetricInterval out{rmax(Rational(0), d - r), d + r};
    out.lo = rmax(out.lo, d_quotient(p, x, y));
    out.hi = rmin(out.hi, 3 * d_shift(x, y));
    return out;
}

MetricInterval d_class(const EmbeddingPair& p, const ClassPoint& x, const ClassPoint& y, std::size_t N) {
    if (x == y) return {0, 0};
    return d_extended(p, x.rep, y.rep, N);
}

}  // namespace qsft
