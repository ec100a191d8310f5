#pragma once

#include <cstdint>
#include <vector>

#include "bfp/comparison.hpp"
#include "bfp/selfmap.hpp"
#include "bfp/space.hpp"

namespace bfp {

/// The Picard orbit x_k = T^k x0 with cached successive distances.
struct Orbit {
    BMetricSpace space;
    SelfMap map;
    Point x0;
    std::vector<Point> points;      // x_0 ... x_K
    std::vector<double> succ_dists; // d(x_k, x_{k+1}), k < K

    std::size_t length() const { return points.size(); }  // K + 1
};

/// Computes the orbit of length K+1.  Throws if an iterate leaves the
/// finite range, naming the failing index.
Orbit compute_orbit(const SelfMap& map, const BMetricSpace& space,
                    const Point& x0, std::uint64_t K);

/// Extends an existing orbit in place to length at least K+1.
void extend_orbit(Orbit& orbit, std::uint64_t K);

struct FixedPointResult {
    Point x_star;
    double residual = 0.0;  // d(x*, T x*), recomputed at x_star
    std::uint64_t iterations = 0;
    bool converged = false;
};

/// Iterates x_{k+1} = T x_k until the b-metric residual d(x_k, T x_k)
/// drops to tol or max_iter is reached.  Non-convergence is a result,
/// not an error.
FixedPointResult solve_fixed_point(const SelfMap& map,
                                   const BMetricSpace& space, const Point& x0,
                                   double tol, std::uint64_t max_iter);

struct OrbitBoundViolation {
    std::uint64_t n = 0;  // 0 for the successive-distance family
    std::uint64_t m = 0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct OrbitBoundsReport {
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
    std::vector<OrbitBoundViolation> first_violations;  // capped at 16

    bool passed() const { return violations == 0; }
};

/// Checks the two orbit-level consequences of the contraction
/// inequality: d(x_k, x_{k+1}) <= phi^k(d(x_0, x_1)) and, for every
/// (n, m) with mn + n <= K, d(x_{mn+n}, x_{mn}) <= phi^{mn}(d(x_n, x_0)).
OrbitBoundsReport check_orbit_bounds(const Orbit& orbit,
                                     const ComparisonFunction& phi,
                                     const MarginPolicy& margin = {});

struct UniquenessReport {
    std::vector<FixedPointResult> results;
    double max_pairwise_distance = 0.0;
    double agreement_tol = 0.0;  // 2 s^2 tol
    bool inconclusive = false;   // some solve did not converge

    bool passed() const {
        return !inconclusive && max_pairwise_distance <= agreement_tol;
    }
};

/// Solves from each start and checks that all returned fixed points
/// agree pairwise within 2 s^2 tol.
UniquenessReport check_uniqueness(const SelfMap& map,
                                  const BMetricSpace& space,
                                  const std::vector<Point>& starts, double tol,
                                  std::uint64_t max_iter);

}  // namespace bfp
