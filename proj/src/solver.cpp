#include "bfp/solver.hpp"

#include <stdexcept>
#include <string>

namespace bfp {

Orbit compute_orbit(const SelfMap& map, const BMetricSpace& space,
                    const Point& x0, std::uint64_t K) {
    require_point(x0, space.dim());
    if (map.dim() != space.dim())
        throw std::invalid_argument("map and space dimensions differ");
    Orbit orbit{space, map, x0, {x0}, {}};
    extend_orbit(orbit, K);
    return orbit;
}

void extend_orbit(Orbit& orbit, std::uint64_t K) {
    orbit.points.reserve(K + 1);
    while (orbit.points.size() < K + 1) {
        Point next = orbit.map.apply(orbit.points.back());
        if (!next.finite())
            throw std::runtime_error(
                "orbit overflow: non-finite iterate at index " +
                std::to_string(orbit.points.size()));
        orbit.succ_dists.push_back(
            orbit.space.distance(orbit.points.back(), next));
        orbit.points.push_back(std::move(next));
    }
}

FixedPointResult solve_fixed_point(const SelfMap& map,
                                   const BMetricSpace& space, const Point& x0,
                                   double tol, std::uint64_t max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    if (max_iter == 0) throw std::invalid_argument("max_iter must be >= 1");
    require_point(x0, space.dim());
    Point x = x0;
    FixedPointResult res;
    for (std::uint64_t k = 0; k <= max_iter; ++k) {
        Point tx = map.apply(x);
        if (!tx.finite())
            throw std::runtime_error(
                "solver overflow: non-finite iterate at iteration " +
                std::to_string(k));
        double r = space.distance(x, tx);
        if (r <= tol) {
            // return the advanced iterate: d(Tx, T^2 x) <= phi(d(x, Tx))
            // keeps the residual under tol and halves the distance to
            // the true fixed point, which the 2 s^2 tol agreement bound
            // relies on
            res.x_star = tx;
            res.residual = space.distance(tx, map.apply(tx));
            res.iterations = k + 1;
            res.converged = true;
            return res;
        }
        if (k == max_iter) break;
        x = std::move(tx);
    }
    res.x_star = x;
    res.residual = space.distance(x, map.apply(x));
    res.iterations = max_iter;
    res.converged = false;
    return res;
}

namespace {
void record(OrbitBoundsReport& rep, std::uint64_t n, std::uint64_t m,
            double lhs, double rhs) {
    ++rep.violations;
    if (rep.first_violations.size() < 16)
        rep.first_violations.push_back({n, m, lhs, rhs});
}
}  // namespace

OrbitBoundsReport check_orbit_bounds(const Orbit& orbit,
                                     const ComparisonFunction& phi,
                                     const MarginPolicy& margin) {
    if (orbit.length() < 2)
        throw std::invalid_argument("orbit too short for bound checks");
    OrbitBoundsReport rep;
    const std::uint64_t K = orbit.length() - 1;
    const double d01 = orbit.succ_dists[0];

    // d(x_k, x_{k+1}) <= phi^k(d(x_0, x_1))
    double env = d01;
    for (std::uint64_t k = 0; k < K; ++k) {
        ++rep.checks;
        if (!margin.leq(orbit.succ_dists[k], env)) record(rep, 0, k,
                                                         orbit.succ_dists[k],
                                                         env);
        env = phi.eval(env);
    }

    // d(x_{mn+n}, x_{mn}) <= phi^{mn}(d(x_n, x_0))
    for (std::uint64_t n = 1; n <= K; ++n) {
        double dn0 = orbit.space.distance(orbit.points[n], orbit.points[0]);
        for (std::uint64_t m = 1; m * n + n <= K; ++m) {
            ++rep.checks;
            double lhs = orbit.space.distance(orbit.points[m * n + n],
                                              orbit.points[m * n]);
            double rhs = phi.iterate(dn0, m * n);
            if (!margin.leq(lhs, rhs)) record(rep, n, m, lhs, rhs);
        }
    }
    return rep;
}

UniquenessReport check_uniqueness(const SelfMap& map,
                                  const BMetricSpace& space,
                                  const std::vector<Point>& starts, double tol,
                                  std::uint64_t max_iter) {
    if (starts.size() < 2)
        throw std::invalid_argument("uniqueness check needs >= 2 starts");
    UniquenessReport rep;
    rep.agreement_tol = 2.0 * space.s_declared() * space.s_declared() * tol;
    for (const Point& x0 : starts) {
        rep.results.push_back(solve_fixed_point(map, space, x0, tol, max_iter));
        if (!rep.results.back().converged) rep.inconclusive = true;
    }
    for (std::size_t i = 0; i < rep.results.size(); ++i)
        for (std::size_t j = i + 1; j < rep.results.size(); ++j) {
            double d = space.distance(rep.results[i].x_star,
                                      rep.results[j].x_star);
            if (d > rep.max_pairwise_distance) rep.max_pairwise_distance = d;
        }
    return rep;
}

}  // namespace bfp
