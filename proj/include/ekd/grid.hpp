#pragma once

#include <cstdint>
#include <vector>

namespace ekd {

using Point = std::vector<double>;

double euclid(const Point& a, const Point& b);

/// Finite candidate set X_M and evaluation set X_M' of d-dimensional points.
/// Regular grids additionally carry the NSWE neighbor cliques used by the
/// local search inside the annealing optimizer.
struct GridSpace {
    int dim = 0;
    std::vector<Point> candidates;
    std::vector<Point> eval_points;           // defaults to candidates
    std::vector<std::vector<int>> cliques;    // empty when not a regular grid

    int size() const { return static_cast<int>(candidates.size()); }
    int eval_size() const { return static_cast<int>(eval_points.size()); }
    bool has_cliques() const { return !cliques.empty(); }

    /// Regular axis-aligned grid with `res[k]` points spanning [lo[k], hi[k]]
    /// in each coordinate; builds boundary-clipped NSWE cliques.
    static GridSpace regular(const std::vector<double>& lo, const std::vector<double>& hi,
                             const std::vector<int>& res);

    /// Arbitrary point list (no clique structure).
    static GridSpace from_points(std::vector<Point> pts);

    /// Index of the candidate nearest to x (lowest index on ties).
    int nearest_candidate(const Point& x) const;

    /// FNV-1a hash over dim and candidate coordinate bits; identifies the
    /// grid a stored design document belongs to.
    std::uint64_t hash() const;

    /// Largest pairwise extent of the candidate set (diagonal of the
    /// bounding box).
    double diameter() const;
};

/// Ordered set of distinct candidate indices.
struct Design {
    std::vector<int> indices;

    int size() const { return static_cast<int>(indices.size()); }
    bool contains(int idx) const;
    std::vector<Point> points(const GridSpace& grid) const;
    void validate(const GridSpace& grid) const;  // throws on duplicates/range
};

}  // namespace ekd
