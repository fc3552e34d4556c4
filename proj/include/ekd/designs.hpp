#pragma once

#include <cstdint>
#include <vector>

#include "ekd/grid.hpp"

namespace ekd {

struct LhSpec {
    int n = 2;
    int dim = 2;
    double perturb_sd = 0.0;
    std::uint64_t seed = 0;
};

/// The fixed 7-point Latin hypercube that is simultaneously maximin and
/// minimax optimal in its class on [0,1]^2.
std::vector<Point> lh_star_7();

/// Random Latin hypercube: each coordinate is a permutation of n equispaced
/// levels on [0,1], independently perturbed by N(0, perturb_sd) noise and
/// clamped back to [0,1]. Deterministic per seed.
std::vector<Point> random_lh(const LhSpec& spec);

/// Map each point to its nearest candidate (lowest index on ties); later
/// points colliding with an occupied candidate move to their nearest free
/// one. Throws when n exceeds the grid size.
Design snap_to_grid(const std::vector<Point>& pts, const GridSpace& grid);

/// Greedy maximin ("coffeehouse") design: the globally farthest candidate
/// pair first, then each next point maximizes its minimum distance to the
/// current design. n = 1 degenerates to candidate 0. An optional start
/// design is extended instead of the farthest pair.
Design coffeehouse(const GridSpace& grid, int n, const Design* start = nullptr);

}  // namespace ekd
