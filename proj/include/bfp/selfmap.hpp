#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bfp/comparison.hpp"
#include "bfp/point.hpp"
#include "bfp/space.hpp"

namespace bfp {

enum class MapKind { affine, scalar_affine, constant };

std::string to_string(MapKind k);

/// A self-map T: X -> X.  Built-in kinds:
///   scalar_affine(a,b)  T(x)_i = a x_i + b
///   affine(A,b)         T(x) = A x + b, A row-major dim x dim
///   constant(c)         T(x) = c
class SelfMap {
  public:
    static SelfMap scalar_affine(double a, double b, std::size_t dim);
    static SelfMap affine(std::vector<double> a_row_major,
                          std::vector<double> b, std::size_t dim);
    static SelfMap constant(Point c);

    MapKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    double scalar_a() const { return scalar_a_; }
    double scalar_b() const { return scalar_b_; }
    const Point& constant_point() const { return c_; }

    Point apply(const Point& x) const;
    Point apply_n(const Point& x, std::uint64_t n) const;

    bool operator==(const SelfMap&) const = default;

  private:
    SelfMap(MapKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

    MapKind kind_;
    std::size_t dim_;
    double scalar_a_ = 0.0;
    double scalar_b_ = 0.0;
    std::vector<double> matrix_;  // row-major, affine only
    std::vector<double> offset_;  // affine only
    Point c_;                     // constant only
};

/// Sampling evidence for the contraction hypothesis
/// d(Tx, Ty) <= phi(d(x, y)).
struct ContractionReport {
    std::uint64_t pairs_checked = 0;
    std::uint64_t violations = 0;
    double worst_slack = 0.0;  // min over pairs of phi(d(x,y)) - d(Tx,Ty)
    Point witness_x;
    Point witness_y;

    bool passed() const { return violations == 0; }
};

/// Samples n_pairs pairs from the space sampler and checks the
/// contraction inequality at each.  The worst-slack pair is recorded
/// pass or fail.  Deterministic given seed; the report means "no
/// violation found in N samples", not "verified".
ContractionReport check_contraction(const SelfMap& map,
                                    const ComparisonFunction& phi,
                                    const BMetricSpace& space,
                                    std::uint64_t n_pairs, std::uint64_t seed,
                                    const MarginPolicy& margin = {});

}  // namespace bfp
