#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace bfp {

/// A point of the ambient set X: a finite ordered list of coordinates.
struct Point {
    std::vector<double> coords;

    Point() = default;
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}
    Point(std::initializer_list<double> c) : coords(c) {}

    std::size_t dim() const { return coords.size(); }

    bool finite() const {
        for (double v : coords)
            if (!std::isfinite(v)) return false;
        return true;
    }

    bool operator==(const Point&) const = default;
};

inline void require_point(const Point& p, std::size_t dim) {
    if (p.dim() != dim)
        throw std::invalid_argument("point dimension mismatch");
    if (!p.finite())
        throw std::invalid_argument("point has non-finite coordinate");
}

}  // namespace bfp
