#pragma once

#include <algorithm>
#include <cmath>

namespace bfp {

// Global tolerance policy: every inequality a <= b from the theory is
// checked as a <= b + margin_for(b), strict inequalities a < b as
// a <= b - margin_for(b).  Near-boundary events (|a - b| <= margin) are
// reportable separately where a report type has a slot for them.
struct MarginPolicy {
    double scale = 1e-12;

    double margin_for(double b) const {
        return scale * std::max(1.0, std::abs(b));
    }

    bool leq(double a, double b) const { return a <= b + margin_for(b); }
    bool lt_strict(double a, double b) const { return a <= b - margin_for(b); }
    bool near_boundary(double a, double b) const {
        return std::abs(a - b) <= margin_for(b);
    }
};

}  // namespace bfp
