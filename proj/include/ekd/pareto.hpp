#pragma once

#include <string>
#include <vector>

#include "ekd/grid.hpp"

namespace ekd {

/// One design's coordinates in the (log|M_beta|, log|M_nu|) plane.
struct ParetoPoint {
    double c_beta = 0.0;
    double c_nu = 0.0;
    Design design;
    bool on_hull = false;
};

/// Non-dominated set for joint maximization of both coordinates, kept
/// sorted by c_beta ascending (c_nu then strictly decreasing). Weak
/// domination discards: a candidate equal in one coordinate and worse in
/// the other is rejected. Near-duplicates (within 1e-9 in both
/// coordinates) keep the first design seen.
class ParetoFront {
public:
    static constexpr double kDupTol = 1e-9;

    /// Returns true when the candidate entered the front. Non-finite
    /// coordinates are rejected outright.
    bool insert(ParetoPoint candidate);

    /// Flags the points on the upper-right convex hull (endpoints always
    /// included, interior collinear points excluded) and returns how many
    /// there are.
    int mark_hull();

    bool empty() const { return points_.empty(); }
    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<ParetoPoint>& points() const { return points_; }

    /// Tabular text form: c_beta, c_nu, on_hull, design indices.
    std::string to_table() const;

private:
    std::vector<ParetoPoint> points_;
};

}  // namespace ekd
