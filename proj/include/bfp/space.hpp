#pragma once

#include <cstdint>
#include <string>

#include "bfp/margin.hpp"
#include "bfp/point.hpp"
#include "bfp/rng.hpp"

namespace bfp {

enum class SpaceKind { euclidean, snowflake, lp_quasi };

std::string to_string(SpaceKind k);

/// Coordinate sampler specification: uniform box [-half_width, half_width]^dim.
struct SamplerSpec {
    double half_width = 10.0;
};

/// A b-metric space (X, d) with relaxation constant s >= 1.
///
/// Built-in kinds:
///   euclidean          d(x,y) = ||x-y||_2,               s = 1
///   snowflake(q >= 1)  d(x,y) = ||x-y||_2^q,             s = 2^(q-1)
///   lp_quasi(0<p<1)    d(x,y) = (sum |xi-yi|^p)^(1/p),   s = 2^(1/p-1)
class BMetricSpace {
  public:
    static BMetricSpace euclidean(std::size_t dim, SamplerSpec sampler = {});
    static BMetricSpace snowflake(double q, std::size_t dim,
                                  SamplerSpec sampler = {});
    static BMetricSpace lp_quasi(double p, std::size_t dim,
                                 SamplerSpec sampler = {});

    SpaceKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    double param() const { return param_; }  // q or p; 0 for euclidean
    double s_declared() const { return s_declared_; }
    const SamplerSpec& sampler() const { return sampler_; }

    // Forces a (possibly wrong) constant; used by negative tests and the
    // CLI's s override.
    void override_s(double s);

    double distance(const Point& x, const Point& y) const;

    Point sample_point(Rng& rng) const;

    bool operator==(const BMetricSpace&) const = default;

  private:
    BMetricSpace(SpaceKind kind, double param, std::size_t dim,
                 SamplerSpec sampler);

    SpaceKind kind_;
    double param_;
    std::size_t dim_;
    double s_declared_;
    SamplerSpec sampler_;
};

/// Sampling evidence for the three axioms of Definition of a b-metric.
struct AxiomReport {
    std::uint64_t samples_checked = 0;
    std::uint64_t identity_violations = 0;
    std::uint64_t symmetry_violations = 0;
    std::uint64_t triangle_violations = 0;
    std::uint64_t near_boundary_events = 0;
    double worst_triangle_ratio = 0.0;
    double margin_used = 0.0;

    bool passed() const {
        return identity_violations == 0 && symmetry_violations == 0 &&
               triangle_violations == 0;
    }
};

/// Samples n_samples triples (x, z, y) and counts violations of
/// identity, symmetry and the relaxed triangle inequality
/// d(x,y) <= s [d(x,z) + d(z,y)].  Deterministic given seed.
AxiomReport check_axioms(const BMetricSpace& space, std::uint64_t n_samples,
                         std::uint64_t seed, const MarginPolicy& margin = {});

/// Empirical lower bound on the least admissible s: max over sampled
/// triples of d(x,y) / (d(x,z) + d(z,y)), clamped below by 1.  Zero
/// denominators are skipped; all-zero denominators is an error.
/// Sampling is a deterministic stream per seed, so sample sets are
/// nested in n_samples and the estimate is monotone non-decreasing.
double estimate_min_s(const BMetricSpace& space, std::uint64_t n_samples,
                      std::uint64_t seed);

/// Exhaustive variant over all triples of a uniform 1-D grid
/// of n_grid points across the sampler box.  dim-1 spaces only.
double estimate_min_s_grid(const BMetricSpace& space, std::size_t n_grid);

}  // namespace bfp
