#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bfp/margin.hpp"

namespace bfp {

enum class PhiKind { linear, rational, power_linear };

std::string to_string(PhiKind k);

/// A comparison function phi: [0,inf) -> [0,inf), increasing, with
/// phi^n(t) -> 0 for each t.  Built-in kinds:
///   linear(c)          phi(t) = c t, c in [0,1)
///   rational           phi(t) = t / (1 + t)
///   power_linear(c,q)  phi(t) = c t; the label marks phis paired with
///                      snowflaked contractions where c absorbs |a|^q
///
/// Out-of-range parameters (e.g. c = 1) are constructible only with
/// unchecked = true, for exercising the failure paths.
class ComparisonFunction {
  public:
    static ComparisonFunction linear(double c, bool unchecked = false);
    static ComparisonFunction rational();
    static ComparisonFunction power_linear(double c, double q,
                                           bool unchecked = false);

    PhiKind kind() const { return kind_; }
    double c() const { return c_; }
    double q() const { return q_; }
    bool unchecked() const { return unchecked_; }

    double eval(double t) const;
    double iterate(double t, std::uint64_t n) const;

    bool operator==(const ComparisonFunction&) const = default;

  private:
    ComparisonFunction(PhiKind kind, double c, double q, bool unchecked);

    PhiKind kind_;
    double c_ = 0.0;
    double q_ = 1.0;
    bool unchecked_ = false;
};

struct PhiReport {
    std::uint64_t grid_size = 0;
    std::uint64_t monotone_violations = 0;
    std::uint64_t below_identity_violations = 0;
    std::uint64_t decay_failures = 0;
    std::uint64_t n_max = 0;
    double tol = 0.0;

    bool passed() const {
        return monotone_violations == 0 && below_identity_violations == 0 &&
               decay_failures == 0;
    }
};

/// Default verification grid: 0 plus 200 log-spaced points in [1e-6, 1e3].
std::vector<double> default_phi_grid();

/// Checks monotonicity, phi(t) < t for t > 0, and iterate decay below
/// tol within n_max steps, over the given ascending grid.
PhiReport check_phi_properties(const ComparisonFunction& phi,
                               const std::vector<double>& grid, double tol,
                               std::uint64_t n_max,
                               const MarginPolicy& margin = {});

/// Smallest n_tilde in [1, n_max] with phi^n_tilde(eps) < eps / (2s),
/// strictness enforced through the margin policy.  Throws if no such
/// index exists within n_max; the message carries phi^{n_max}(eps).
std::uint64_t find_n_tilde(const ComparisonFunction& phi, double epsilon,
                           double s, std::uint64_t n_max,
                           const MarginPolicy& margin = {});

}  // namespace bfp
