#include "bfp/space.hpp"

#include <cmath>
#include <stdexcept>

namespace bfp {

std::string to_string(SpaceKind k) {
    switch (k) {
        case SpaceKind::euclidean: return "euclidean";
        case SpaceKind::snowflake: return "snowflake";
        case SpaceKind::lp_quasi: return "lp_quasi";
    }
    return "?";
}

BMetricSpace::BMetricSpace(SpaceKind kind, double param, std::size_t dim,
                           SamplerSpec sampler)
    : kind_(kind), param_(param), dim_(dim), sampler_(sampler) {
    if (dim == 0) throw std::invalid_argument("space dim must be positive");
    switch (kind) {
        case SpaceKind::euclidean:
            s_declared_ = 1.0;
            break;
        case SpaceKind::snowflake:
            if (!(param > 0.0))
                throw std::invalid_argument("snowflake q must be > 0");
            s_declared_ = param >= 1.0 ? std::exp2(param - 1.0) : 1.0;
            break;
        case SpaceKind::lp_quasi:
            if (!(param > 0.0 && param < 1.0))
                throw std::invalid_argument("lp_quasi p must lie in (0,1)");
            s_declared_ = std::exp2(1.0 / param - 1.0);
            break;
    }
}

BMetricSpace BMetricSpace::euclidean(std::size_t dim, SamplerSpec sampler) {
    return BMetricSpace(SpaceKind::euclidean, 0.0, dim, sampler);
}

BMetricSpace BMetricSpace::snowflake(double q, std::size_t dim,
                                     SamplerSpec sampler) {
    return BMetricSpace(SpaceKind::snowflake, q, dim, sampler);
}

BMetricSpace BMetricSpace::lp_quasi(double p, std::size_t dim,
                                    SamplerSpec sampler) {
    return BMetricSpace(SpaceKind::lp_quasi, p, dim, sampler);
}

void BMetricSpace::override_s(double s) {
    if (!(s >= 1.0)) throw std::invalid_argument("s must be >= 1");
    s_declared_ = s;
}

double BMetricSpace::distance(const Point& x, const Point& y) const {
    require_point(x, dim_);
    require_point(y, dim_);
    switch (kind_) {
        case SpaceKind::euclidean: {
            double acc = 0.0;
            for (std::size_t i = 0; i < dim_; ++i) {
                double d = x.coords[i] - y.coords[i];
                acc += d * d;
            }
            return std::sqrt(acc);
        }
        case SpaceKind::snowflake: {
            double acc = 0.0;
            for (std::size_t i = 0; i < dim_; ++i) {
                double d = x.coords[i] - y.coords[i];
                acc += d * d;
            }
            return std::pow(std::sqrt(acc), param_);
        }
        case SpaceKind::lp_quasi: {
            double acc = 0.0;
            for (std::size_t i = 0; i < dim_; ++i)
                acc += std::pow(std::abs(x.coords[i] - y.coords[i]), param_);
            return std::pow(acc, 1.0 / param_);
        }
    }
    throw std::logic_error("unreachable");
}

Point BMetricSpace::sample_point(Rng& rng) const {
    Point p;
    p.coords.resize(dim_);
    double L = sampler_.half_width;
    for (std::size_t i = 0; i < dim_; ++i) p.coords[i] = rng.uniform(-L, L);
    return p;
}

namespace {
constexpr std::uint64_t kBatchSize = 1024;
}

AxiomReport check_axioms(const BMetricSpace& space, std::uint64_t n_samples,
                         std::uint64_t seed, const MarginPolicy& margin) {
    if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
    AxiomReport rep;
    rep.margin_used = margin.scale;
    double s = space.s_declared();
    for (std::uint64_t b = 0; b * kBatchSize < n_samples; ++b) {
        Rng rng(derive_seed(seed, b));
        std::uint64_t hi = std::min(n_samples - b * kBatchSize, kBatchSize);
        for (std::uint64_t j = 0; j < hi; ++j) {
            Point x = space.sample_point(rng);
            Point z = space.sample_point(rng);
            Point y = space.sample_point(rng);

            // (i) identity
            if (space.distance(x, x) != 0.0) ++rep.identity_violations;
            if (!(x == y) && !(space.distance(x, y) > 0.0))
                ++rep.identity_violations;

            // (ii) symmetry
            double dxy = space.distance(x, y);
            double dyx = space.distance(y, x);
            if (std::abs(dxy - dyx) > margin.margin_for(dxy))
                ++rep.symmetry_violations;

            // (iii) relaxed triangle
            double den = space.distance(x, z) + space.distance(z, y);
            if (den > 0.0) {
                double bound = s * den;
                if (!margin.leq(dxy, bound)) ++rep.triangle_violations;
                if (margin.near_boundary(dxy, bound))
                    ++rep.near_boundary_events;
                double ratio = dxy / den;
                if (ratio > rep.worst_triangle_ratio)
                    rep.worst_triangle_ratio = ratio;
            }
        }
    }
    rep.samples_checked = n_samples;
    return rep;
}

double estimate_min_s(const BMetricSpace& space, std::uint64_t n_samples,
                      std::uint64_t seed) {
    if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
    double worst = 0.0;
    bool any = false;
    for (std::uint64_t b = 0; b * kBatchSize < n_samples; ++b) {
        Rng rng(derive_seed(seed, b));
        std::uint64_t hi = std::min(n_samples - b * kBatchSize, kBatchSize);
        for (std::uint64_t j = 0; j < hi; ++j) {
            Point x = space.sample_point(rng);
            Point z = space.sample_point(rng);
            Point y = space.sample_point(rng);
            double den = space.distance(x, z) + space.distance(z, y);
            if (den == 0.0) continue;
            any = true;
            worst = std::max(worst, space.distance(x, y) / den);
        }
    }
    if (!any)
        throw std::runtime_error("estimate_min_s: all sampled denominators zero");
    return std::max(1.0, worst);
}

double estimate_min_s_grid(const BMetricSpace& space, std::size_t n_grid) {
    if (space.dim() != 1)
        throw std::invalid_argument("estimate_min_s_grid: dim-1 spaces only");
    if (n_grid < 3) throw std::invalid_argument("grid too small");
    double L = space.sampler().half_width;
    std::vector<Point> grid;
    grid.reserve(n_grid);
    for (std::size_t i = 0; i < n_grid; ++i)
        grid.push_back(Point{-L + 2.0 * L * double(i) / double(n_grid - 1)});
    double worst = 0.0;
    for (const Point& x : grid)
        for (const Point& z : grid)
            for (const Point& y : grid) {
                double den = space.distance(x, z) + space.distance(z, y);
                if (den == 0.0) continue;
                worst = std::max(worst, space.distance(x, y) / den);
            }
    return std::max(1.0, worst);
}

}  // namespace bfp
