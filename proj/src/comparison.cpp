#include "bfp/comparison.hpp"

#include <cmath>
#include <stdexcept>

namespace bfp {

std::string to_string(PhiKind k) {
    switch (k) {
        case PhiKind::linear: return "linear";
        case PhiKind::rational: return "rational";
        case PhiKind::power_linear: return "power_linear";
    }
    return "?";
}

ComparisonFunction::ComparisonFunction(PhiKind kind, double c, double q,
                                       bool unchecked)
    : kind_(kind), c_(c), q_(q), unchecked_(unchecked) {
    if (kind != PhiKind::rational && !unchecked) {
        if (!(c >= 0.0 && c < 1.0))
            throw std::invalid_argument("phi.c must lie in [0,1)");
    }
    if (kind == PhiKind::power_linear && !(q >= 1.0))
        throw std::invalid_argument("phi.q must be >= 1");
}

ComparisonFunction ComparisonFunction::linear(double c, bool unchecked) {
    return ComparisonFunction(PhiKind::linear, c, 1.0, unchecked);
}

ComparisonFunction ComparisonFunction::rational() {
    return ComparisonFunction(PhiKind::rational, 0.0, 1.0, false);
}

ComparisonFunction ComparisonFunction::power_linear(double c, double q,
                                                    bool unchecked) {
    return ComparisonFunction(PhiKind::power_linear, c, q, unchecked);
}

double ComparisonFunction::eval(double t) const {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("phi argument must be finite and >= 0");
    switch (kind_) {
        case PhiKind::linear:
        case PhiKind::power_linear:
            return c_ * t;
        case PhiKind::rational:
            return t / (1.0 + t);
    }
    throw std::logic_error("unreachable");
}

double ComparisonFunction::iterate(double t, std::uint64_t n) const {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("phi argument must be finite and >= 0");
    double v = t;
    for (std::uint64_t i = 0; i < n; ++i) v = eval(v);
    return v;
}

std::vector<double> default_phi_grid() {
    std::vector<double> grid;
    grid.push_back(0.0);
    const int n = 200;
    const double lo = std::log(1e-6), hi = std::log(1e3);
    for (int i = 0; i < n; ++i)
        grid.push_back(std::exp(lo + (hi - lo) * double(i) / double(n - 1)));
    return grid;
}

PhiReport check_phi_properties(const ComparisonFunction& phi,
                               const std::vector<double>& grid, double tol,
                               std::uint64_t n_max,
                               const MarginPolicy& margin) {
    if (grid.empty()) throw std::invalid_argument("phi grid must be non-empty");
    PhiReport rep;
    rep.grid_size = grid.size();
    rep.n_max = n_max;
    rep.tol = tol;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double a = phi.eval(grid[i]);
        double b = phi.eval(grid[i + 1]);
        if (!margin.leq(a, b)) ++rep.monotone_violations;
    }
    for (double t : grid) {
        if (t > 0.0 && !margin.lt_strict(phi.eval(t), t))
            ++rep.below_identity_violations;
        double v = t;
        bool decayed = v <= tol;
        for (std::uint64_t n = 0; n < n_max && !decayed; ++n) {
            v = phi.eval(v);
            decayed = v <= tol;
        }
        if (!decayed) ++rep.decay_failures;
    }
    return rep;
}

std::uint64_t find_n_tilde(const ComparisonFunction& phi, double epsilon,
                           double s, std::uint64_t n_max,
                           const MarginPolicy& margin) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (!(s >= 1.0)) throw std::invalid_argument("s must be >= 1");
    if (n_max == 0) throw std::invalid_argument("n_max must be >= 1");
    const double threshold = epsilon / (2.0 * s);
    double v = epsilon;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        v = phi.eval(v);
        if (margin.lt_strict(v, threshold)) return n;
    }
    throw std::runtime_error(
        "find_n_tilde: phi^" + std::to_string(n_max) + "(eps) = " +
        std::to_string(v) + " never fell below eps/(2s) = " +
        std::to_string(threshold) + "; decay hypothesis fails or n_max too small");
}

}  // namespace bfp
