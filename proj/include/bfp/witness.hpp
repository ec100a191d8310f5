#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "bfp/comparison.hpp"
#include "bfp/solver.hpp"

namespace bfp {

/// The proof's witness indices for one epsilon.  All of them depend on
/// epsilon; the orbit they are verified against never does.
struct WitnessSet {
    double epsilon = 0.0;
    std::uint64_t n_tilde = 0;
    std::uint64_t m_tilde = 0;
    std::uint64_t k0 = 0;
    std::uint64_t m0 = 0;
    std::uint64_t m_bar = 0;   // max(m_tilde, m0)
    std::uint64_t horizon = 0; // largest multiple-of-n_tilde index examined
    double s = 1.0;
};

struct WitnessReport {
    WitnessSet witness;
    std::uint64_t ball_samples_checked = 0;
    std::uint64_t ball_violations = 0;
    std::uint64_t segment_checks = 0;
    std::uint64_t segment_violations = 0;
    std::uint64_t telescope_violations = 0;
    std::uint64_t cauchy_pairs_checked = 0;
    std::uint64_t cauchy_violations = 0;
    double worst_cauchy_ratio = 0.0;  // max d(x_k1,x_k2) / (4 s^3 eps)
    bool limit_check_passed = false;
    bool uniqueness_decay_passed = false;

    bool passed(const MarginPolicy& margin = {}) const {
        return ball_violations == 0 && segment_violations == 0 &&
               telescope_violations == 0 && cauchy_violations == 0 &&
               margin.leq(worst_cauchy_ratio, 1.0) && limit_check_passed &&
               uniqueness_decay_passed;
    }
};

/// Smallest m_tilde with d(x_{m n~ + n~}, x_{m n~}) < eps/(2s) for every
/// m in [m_tilde, horizon].  Throws with the blocking index if none.
std::uint64_t find_m_tilde(const Orbit& orbit, std::uint64_t n_tilde,
                           double epsilon, double s, std::uint64_t horizon,
                           const MarginPolicy& margin = {});

/// k0 = smallest index with d(x_{k+1}, x_k) < eps/(n~ s^n~) for all
/// k in [k0, horizon * n~]; m0 = smallest integer with m0 n~ > k0.
struct K0M0 {
    std::uint64_t k0 = 0;
    std::uint64_t m0 = 0;
};
K0M0 find_m0(const Orbit& orbit, std::uint64_t n_tilde, double epsilon,
             double s, std::uint64_t horizon, const MarginPolicy& margin = {});

struct BallCheck {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::uint64_t proposals = 0;
};

/// Samples points of B(x_{m~ n~}, eps) by rejection and checks that
/// T^n~ maps each back into the ball, together with the two half-bounds
/// d(T^n~ u, T^n~ c) <= phi^n~(d(u,c)) and d(T^n~ c, c) <= eps/(2s).
BallCheck verify_invariant_ball(const SelfMap& map, const BMetricSpace& space,
                                const ComparisonFunction& phi,
                                const Orbit& orbit, const WitnessSet& w,
                                std::uint64_t n_samples, std::uint64_t seed,
                                const MarginPolicy& margin = {});

struct SegmentCheck {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;           // d(x_{mn~}, x_{mn~+p}) < eps
    std::uint64_t telescope_violations = 0; // the s^{i+1} chain
};

/// For every m in [m0, horizon] and p in {0,...,n~-1}: checks the
/// telescope chain d(x_{mn~}, x_{mn~+p}) <= sum_{i=0}^{p} s^{i+1}
/// d(x_{mn~+i}, x_{mn~+i+1}) and the conclusion d(x_{mn~}, x_{mn~+p}) < eps.
SegmentCheck verify_segment_bound(const Orbit& orbit, const WitnessSet& w,
                                  const MarginPolicy& margin = {});

struct CauchyCheck {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    double worst_ratio = 0.0;
    bool exhaustive = false;
};

/// For pairs k1, k2 >= m_bar n~ within the horizon window: decomposes
/// k_i = m_i n~ + p_i, asserts d(x_k1, x_k2) <= 4 s^3 eps, replays the
/// proof's four-hop chain through x_{m1 n~}, x_{m~ n~}, x_{m2 n~}, and
/// checks the composed chain dominates the direct distance.  Exhaustive
/// when the window holds at most n_pairs pairs, else seeded sampling.
CauchyCheck verify_cauchy_bound(const Orbit& orbit, const WitnessSet& w,
                                std::uint64_t n_pairs, std::uint64_t seed,
                                const MarginPolicy& margin = {});

struct LimitUniquenessCheck {
    bool limit_ok = false;
    bool uniqueness_ok = false;
    double fixed_point_gap = 0.0;  // d(x*, y*) across independent starts
};

/// Finite-k links of the paper's liminf/limsup chain at the returned
/// fixed point, plus the phi^n-decay consistency of uniqueness against
/// a second solve from an independent start.
LimitUniquenessCheck verify_limit_and_uniqueness(
    const SelfMap& map, const BMetricSpace& space,
    const ComparisonFunction& phi, const FixedPointResult& result,
    const Orbit& orbit, double tol, std::uint64_t max_iter,
    std::uint64_t n_max, const MarginPolicy& margin = {});

struct PipelineBudgets {
    std::uint64_t n_tilde_max = 64;
    std::uint64_t horizon = 64;  // multiples of n_tilde examined
    std::uint64_t ball_samples = 10000;
    std::uint64_t cauchy_pairs = 10000;
    double tol = 1e-10;
    std::uint64_t max_iter = 10000;
    std::uint64_t seed = 42;
};

struct PipelineResult {
    std::shared_ptr<const Orbit> orbit;  // one orbit shared by every epsilon
    FixedPointResult fixed_point;
    std::vector<WitnessReport> reports;
};

/// Runs the full witness construction for each epsilon against a single
/// shared orbit.  Hypothesis checks (axioms, phi, contraction) are the
/// caller's responsibility.
PipelineResult run_pipeline(const SelfMap& map, const BMetricSpace& space,
                            const ComparisonFunction& phi, const Point& x0,
                            const std::vector<double>& epsilons,
                            const PipelineBudgets& budgets,
                            const MarginPolicy& margin = {});

}  // namespace bfp
