#include "bfp/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bfp {

namespace {

// orbit index coverage required by the verifiers: x_0 ... x_{horizon*n~ + n~}
std::uint64_t required_top_index(std::uint64_t n_tilde, std::uint64_t horizon) {
    return horizon * n_tilde + n_tilde;
}

void require_orbit_coverage(const Orbit& orbit, std::uint64_t n_tilde,
                            std::uint64_t horizon) {
    if (orbit.length() < required_top_index(n_tilde, horizon) + 1)
        throw std::invalid_argument("orbit too short for the requested horizon");
}

}  // namespace

std::uint64_t find_m_tilde(const Orbit& orbit, std::uint64_t n_tilde,
                           double epsilon, double s, std::uint64_t horizon,
                           const MarginPolicy& margin) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (n_tilde == 0) throw std::invalid_argument("n_tilde must be >= 1");
    require_orbit_coverage(orbit, n_tilde, horizon);
    const double threshold = epsilon / (2.0 * s);
    // smallest m~ with the bound holding on the whole tail [m~, horizon]
    std::uint64_t m_tilde = 0;
    for (std::uint64_t m = 0; m <= horizon; ++m) {
        double d = orbit.space.distance(orbit.points[m * n_tilde + n_tilde],
                                        orbit.points[m * n_tilde]);
        if (!margin.lt_strict(d, threshold)) m_tilde = m + 1;
    }
    if (m_tilde > horizon)
        throw std::runtime_error(
            "find_m_tilde: d(T^n~ x_{mn~}, x_{mn~}) >= eps/(2s) at the last "
            "window index m = " + std::to_string(horizon));
    return m_tilde;
}

K0M0 find_m0(const Orbit& orbit, std::uint64_t n_tilde, double epsilon,
             double s, std::uint64_t horizon, const MarginPolicy& margin) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (n_tilde == 0) throw std::invalid_argument("n_tilde must be >= 1");
    require_orbit_coverage(orbit, n_tilde, horizon);
    const double threshold =
        epsilon / (double(n_tilde) * std::pow(s, double(n_tilde)));
    const std::uint64_t top = horizon * n_tilde;
    std::uint64_t k0 = 0;
    for (std::uint64_t k = 0; k <= top; ++k)
        if (!margin.lt_strict(orbit.succ_dists[k], threshold)) k0 = k + 1;
    if (k0 > top)
        throw std::runtime_error(
            "find_m0: d(x_{k+1}, x_k) >= eps/(n~ s^n~) at the last window "
            "index k = " + std::to_string(top));
    return {k0, k0 / n_tilde + 1};
}

BallCheck verify_invariant_ball(const SelfMap& map, const BMetricSpace& space,
                                const ComparisonFunction& phi,
                                const Orbit& orbit, const WitnessSet& w,
                                std::uint64_t n_samples, std::uint64_t seed,
                                const MarginPolicy& margin) {
    if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
    const std::uint64_t center_idx = w.m_tilde * w.n_tilde;
    if (orbit.length() <= center_idx + w.n_tilde)
        throw std::invalid_argument("orbit does not cover the ball center");
    const Point& center = orbit.points[center_idx];
    const double eps = w.epsilon;
    const double s = w.s;

    // proposal half-width covering the ball: snowflake balls of radius
    // eps are euclidean balls of radius eps^{1/q}
    double half_width = eps;
    if (space.kind() == SpaceKind::snowflake)
        half_width = std::pow(eps, 1.0 / space.param());

    const double half_center = space.distance(map.apply_n(center, w.n_tilde),
                                              center);

    BallCheck out;
    Rng rng(derive_seed(seed, 0x6261)); // 'ba'
    const std::uint64_t max_proposals = std::max<std::uint64_t>(
        100000, n_samples * 1000);
    while (out.checked < n_samples) {
        if (++out.proposals > max_proposals)
            throw std::runtime_error(
                "verify_invariant_ball: rejection acceptance rate below "
                "0.1%; tighten the proposal scale");
        Point u = center;
        for (std::size_t i = 0; i < space.dim(); ++i)
            u.coords[i] += rng.uniform(-half_width, half_width);
        double du = space.distance(u, center);
        if (!(du < eps)) continue;
        ++out.checked;

        Point tu = map.apply_n(u, w.n_tilde);
        bool ok = margin.lt_strict(space.distance(tu, center), eps);
        // half-bound 1: contraction iterated n~ times
        ok = ok && margin.leq(space.distance(tu, map.apply_n(center, w.n_tilde)),
                              phi.iterate(du, w.n_tilde));
        // half-bound 2: the center moves less than eps/(2s) under T^n~
        ok = ok && margin.leq(half_center, eps / (2.0 * s));
        if (!ok) ++out.violations;
    }
    return out;
}

SegmentCheck verify_segment_bound(const Orbit& orbit, const WitnessSet& w,
                                  const MarginPolicy& margin) {
    require_orbit_coverage(orbit, w.n_tilde, w.horizon);
    SegmentCheck out;
    const double s = w.s;
    for (std::uint64_t m = w.m0; m <= w.horizon; ++m) {
        for (std::uint64_t p = 0; p < w.n_tilde; ++p) {
            ++out.checked;
            const std::uint64_t base = m * w.n_tilde;
            double lhs = orbit.space.distance(orbit.points[base],
                                              orbit.points[base + p]);
            double chain = 0.0;
            double s_pow = s;
            for (std::uint64_t i = 0; i <= p; ++i, s_pow *= s)
                chain += s_pow * orbit.succ_dists[base + i];
            if (!margin.leq(lhs, chain)) ++out.telescope_violations;
            if (!margin.leq(lhs, w.epsilon)) ++out.violations;
        }
    }
    return out;
}

CauchyCheck verify_cauchy_bound(const Orbit& orbit, const WitnessSet& w,
                                std::uint64_t n_pairs, std::uint64_t seed,
                                const MarginPolicy& margin) {
    require_orbit_coverage(orbit, w.n_tilde, w.horizon);
    const std::uint64_t lo = w.m_bar * w.n_tilde;
    const std::uint64_t hi = w.horizon * w.n_tilde + w.n_tilde - 1;
    if (lo > hi)
        throw std::invalid_argument("empty index window in verify_cauchy_bound");
    const double s = w.s;
    const double bound = 4.0 * s * s * s * w.epsilon;
    const std::uint64_t m_tilde_idx = w.m_tilde * w.n_tilde;

    CauchyCheck out;
    auto check_pair = [&](std::uint64_t k1, std::uint64_t k2) {
        ++out.checked;
        const std::uint64_t m1 = k1 / w.n_tilde;
        const std::uint64_t m2 = k2 / w.n_tilde;
        double d = orbit.space.distance(orbit.points[k1], orbit.points[k2]);
        double ratio = d / bound;
        if (ratio > out.worst_ratio) out.worst_ratio = ratio;

        // four hops through x_{m1 n~}, x_{m~ n~}, x_{m2 n~}
        double h1 = orbit.space.distance(orbit.points[k1],
                                         orbit.points[m1 * w.n_tilde]);
        double h2 = orbit.space.distance(orbit.points[m1 * w.n_tilde],
                                         orbit.points[m_tilde_idx]);
        double h3 = orbit.space.distance(orbit.points[m_tilde_idx],
                                         orbit.points[m2 * w.n_tilde]);
        double h4 = orbit.space.distance(orbit.points[m2 * w.n_tilde],
                                         orbit.points[k2]);
        double chain = s * h1 + s * s * h2 + s * s * s * h3 + s * s * s * h4;
        bool ok = margin.leq(d, bound) && margin.leq(h1, w.epsilon) &&
                  margin.leq(h2, w.epsilon) && margin.leq(h3, w.epsilon) &&
                  margin.leq(h4, w.epsilon) && margin.leq(d, chain);
        if (!ok) ++out.violations;
    };

    const std::uint64_t window = hi - lo + 1;
    const std::uint64_t total_pairs = window * (window + 1) / 2;
    if (total_pairs <= n_pairs) {
        out.exhaustive = true;
        for (std::uint64_t k1 = lo; k1 <= hi; ++k1)
            for (std::uint64_t k2 = k1; k2 <= hi; ++k2) check_pair(k1, k2);
    } else {
        Rng rng(derive_seed(seed, 0x6370)); // 'cp'
        for (std::uint64_t i = 0; i < n_pairs; ++i) {
            std::uint64_t k1 = lo + rng.next_u64() % window;
            std::uint64_t k2 = lo + rng.next_u64() % window;
            check_pair(std::min(k1, k2), std::max(k1, k2));
        }
    }
    return out;
}

LimitUniquenessCheck verify_limit_and_uniqueness(
    const SelfMap& map, const BMetricSpace& space,
    const ComparisonFunction& phi, const FixedPointResult& result,
    const Orbit& orbit, double tol, std::uint64_t max_iter,
    std::uint64_t n_max, const MarginPolicy& margin) {
    if (!result.converged)
        throw std::invalid_argument(
            "verify_limit_and_uniqueness needs a converged result");
    LimitUniquenessCheck out;
    const double s = space.s_declared();
    const Point tx_star = map.apply(result.x_star);
    const double r_star = space.distance(result.x_star, tx_star);

    // finite-k links of the liminf/limsup chain, over the orbit tail
    const std::uint64_t K = orbit.length() - 1;
    const std::uint64_t first = K >= 10 ? K - 10 : 0;
    bool limit_ok = true;
    for (std::uint64_t k = first; k < K; ++k) {
        double link1 = space.distance(orbit.points[k + 1], tx_star);
        limit_ok = limit_ok && margin.leq(r_star / s, link1);
        double dkx = space.distance(orbit.points[k], result.x_star);
        double link2 = space.distance(map.apply(orbit.points[k]), tx_star);
        limit_ok = limit_ok && margin.leq(link2, phi.eval(dkx));
    }
    out.limit_ok = limit_ok;

    // second fixed point from an independent start
    Point y0 = orbit.x0;
    for (double& c : y0.coords) c += 1.0 + space.sampler().half_width / 4.0;
    FixedPointResult other = solve_fixed_point(map, space, y0, tol, max_iter);
    out.fixed_point_gap = other.converged
                              ? space.distance(result.x_star, other.x_star)
                              : std::numeric_limits<double>::infinity();
    const double agreement_tol = 2.0 * s * s * tol;
    bool decay_consistent = false;
    if (other.converged) {
        double v = out.fixed_point_gap;
        for (std::uint64_t n = 0; n <= n_max && !decay_consistent; ++n) {
            if (v <= agreement_tol) decay_consistent = true;
            v = phi.eval(v);
        }
    }
    out.uniqueness_ok = other.converged &&
                        out.fixed_point_gap <= agreement_tol &&
                        decay_consistent;
    return out;
}

PipelineResult run_pipeline(const SelfMap& map, const BMetricSpace& space,
                            const ComparisonFunction& phi, const Point& x0,
                            const std::vector<double>& epsilons,
                            const PipelineBudgets& budgets,
                            const MarginPolicy& margin) {
    PipelineResult out;
    if (epsilons.empty()) return out;

    const double s = space.s_declared();
    std::vector<std::uint64_t> n_tildes;
    std::uint64_t top_index = 0;
    for (double eps : epsilons) {
        std::uint64_t nt =
            find_n_tilde(phi, eps, s, budgets.n_tilde_max, margin);
        n_tildes.push_back(nt);
        top_index = std::max(top_index, required_top_index(nt, budgets.horizon));
    }

    // one orbit for every epsilon; the witness indices depend on eps,
    // the sequence (x_k) does not
    auto orbit = std::make_shared<Orbit>(
        compute_orbit(map, space, x0, top_index));
    out.orbit = orbit;
    out.fixed_point =
        solve_fixed_point(map, space, x0, budgets.tol, budgets.max_iter);

    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        const double eps = epsilons[i];
        WitnessSet w;
        w.epsilon = eps;
        w.s = s;
        w.n_tilde = n_tildes[i];
        w.horizon = budgets.horizon;
        w.m_tilde =
            find_m_tilde(*orbit, w.n_tilde, eps, s, budgets.horizon, margin);
        K0M0 km = find_m0(*orbit, w.n_tilde, eps, s, budgets.horizon, margin);
        w.k0 = km.k0;
        w.m0 = km.m0;
        w.m_bar = std::max(w.m_tilde, w.m0);

        WitnessReport rep;
        rep.witness = w;
        BallCheck ball = verify_invariant_ball(
            map, space, phi, *orbit, w, budgets.ball_samples,
            derive_seed(budgets.seed, i), margin);
        rep.ball_samples_checked = ball.checked;
        rep.ball_violations = ball.violations;
        SegmentCheck seg = verify_segment_bound(*orbit, w, margin);
        rep.segment_checks = seg.checked;
        rep.segment_violations = seg.violations;
        rep.telescope_violations = seg.telescope_violations;
        CauchyCheck cau = verify_cauchy_bound(
            *orbit, w, budgets.cauchy_pairs, derive_seed(budgets.seed, i),
            margin);
        rep.cauchy_pairs_checked = cau.checked;
        rep.cauchy_violations = cau.violations;
        rep.worst_cauchy_ratio = cau.worst_ratio;
        if (out.fixed_point.converged) {
            LimitUniquenessCheck lu = verify_limit_and_uniqueness(
                map, space, phi, out.fixed_point, *orbit, budgets.tol,
                budgets.max_iter, budgets.n_tilde_max * 16, margin);
            rep.limit_check_passed = lu.limit_ok;
            rep.uniqueness_decay_passed = lu.uniqueness_ok;
        }
        out.reports.push_back(rep);
    }
    return out;
}

}  // namespace bfp
