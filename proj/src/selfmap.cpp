#include "bfp/selfmap.hpp"

#include <algorithm>
#include <stdexcept>

namespace bfp {

std::string to_string(MapKind k) {
    switch (k) {
        case MapKind::affine: return "affine";
        case MapKind::scalar_affine: return "scalar_affine";
        case MapKind::constant: return "constant";
    }
    return "?";
}

SelfMap SelfMap::scalar_affine(double a, double b, std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("map dim must be positive");
    SelfMap m(MapKind::scalar_affine, dim);
    m.scalar_a_ = a;
    m.scalar_b_ = b;
    return m;
}

SelfMap SelfMap::affine(std::vector<double> a_row_major, std::vector<double> b,
                        std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("map dim must be positive");
    if (a_row_major.size() != dim * dim)
        throw std::invalid_argument("affine matrix must be dim x dim");
    if (b.size() != dim)
        throw std::invalid_argument("affine offset must have dim entries");
    SelfMap m(MapKind::affine, dim);
    m.matrix_ = std::move(a_row_major);
    m.offset_ = std::move(b);
    return m;
}

SelfMap SelfMap::constant(Point c) {
    if (c.dim() == 0) throw std::invalid_argument("map dim must be positive");
    if (!c.finite())
        throw std::invalid_argument("constant point must be finite");
    SelfMap m(MapKind::constant, c.dim());
    m.c_ = std::move(c);
    return m;
}

Point SelfMap::apply(const Point& x) const {
    require_point(x, dim_);
    switch (kind_) {
        case MapKind::scalar_affine: {
            Point y;
            y.coords.resize(dim_);
            for (std::size_t i = 0; i < dim_; ++i)
                y.coords[i] = scalar_a_ * x.coords[i] + scalar_b_;
            return y;
        }
        case MapKind::affine: {
            Point y;
            y.coords.resize(dim_);
            for (std::size_t i = 0; i < dim_; ++i) {
                double acc = offset_[i];
                for (std::size_t j = 0; j < dim_; ++j)
                    acc += matrix_[i * dim_ + j] * x.coords[j];
                y.coords[i] = acc;
            }
            return y;
        }
        case MapKind::constant:
            return c_;
    }
    throw std::logic_error("unreachable");
}

Point SelfMap::apply_n(const Point& x, std::uint64_t n) const {
    Point y = x;
    for (std::uint64_t i = 0; i < n; ++i) y = apply(y);
    return y;
}

ContractionReport check_contraction(const SelfMap& map,
                                    const ComparisonFunction& phi,
                                    const BMetricSpace& space,
                                    std::uint64_t n_pairs, std::uint64_t seed,
                                    const MarginPolicy& margin) {
    if (n_pairs == 0) throw std::invalid_argument("n_pairs must be >= 1");
    if (map.dim() != space.dim())
        throw std::invalid_argument("map and space dimensions differ");
    constexpr std::uint64_t kBatchSize = 1024;
    ContractionReport rep;
    bool first = true;
    for (std::uint64_t b = 0; b * kBatchSize < n_pairs; ++b) {
        Rng rng(derive_seed(seed, b));
        std::uint64_t hi = std::min(n_pairs - b * kBatchSize, kBatchSize);
        for (std::uint64_t j = 0; j < hi; ++j) {
            Point x = space.sample_point(rng);
            Point y = space.sample_point(rng);
            double d = space.distance(x, y);
            double lhs = space.distance(map.apply(x), map.apply(y));
            double rhs = phi.eval(d);
            if (!margin.leq(lhs, rhs)) ++rep.violations;
            double slack = rhs - lhs;
            if (first || slack < rep.worst_slack) {
                rep.worst_slack = slack;
                rep.witness_x = x;
                rep.witness_y = y;
                first = false;
            }
        }
    }
    rep.pairs_checked = n_pairs;
    return rep;
}

}  // namespace bfp
