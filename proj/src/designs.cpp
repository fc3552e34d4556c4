#include "ekd/designs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ekd/rng.hpp"

namespace ekd {

std::vector<Point> lh_star_7() {
    return {{0.0, 1.0 / 3}, {1.0 / 6, 5.0 / 6}, {1.0 / 3, 0.0}, {0.5, 0.5},
            {2.0 / 3, 1.0}, {5.0 / 6, 1.0 / 6}, {1.0, 2.0 / 3}};
}

std::vector<Point> random_lh(const LhSpec& spec) {
    if (spec.n < 2 || spec.dim < 1 || spec.perturb_sd < 0.0)
        throw std::invalid_argument("random_lh: bad LhSpec");
    Rng rng(spec.seed);
    std::vector<Point> pts(spec.n, Point(spec.dim, 0.0));
    std::vector<int> perm(spec.n);
    for (int k = 0; k < spec.dim; ++k) {
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = spec.n - 1; i > 0; --i)  // Fisher-Yates
            std::swap(perm[i], perm[rng.uniform_int(i + 1)]);
        for (int i = 0; i < spec.n; ++i)
            pts[i][k] = static_cast<double>(perm[i]) / (spec.n - 1);
    }
    if (spec.perturb_sd > 0.0)
        for (auto& p : pts)
            for (double& v : p)
                v = std::clamp(v + spec.perturb_sd * rng.normal(), 0.0, 1.0);
    return pts;
}

Design snap_to_grid(const std::vector<Point>& pts, const GridSpace& grid) {
    if (static_cast<int>(pts.size()) > grid.size())
        throw std::invalid_argument("snap_to_grid: more points than grid candidates");
    std::vector<bool> taken(grid.size(), false);
    Design d;
    for (const auto& x : pts) {
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (int i = 0; i < grid.size(); ++i) {
            if (taken[i]) continue;
            const double dist = euclid(grid.candidates[i], x);
            if (dist < best_dist) {
                best_dist = dist;
                best = i;
            }
        }
        taken[best] = true;
        d.indices.push_back(best);
    }
    return d;
}

Design coffeehouse(const GridSpace& grid, int n, const Design* start) {
    if (n < 1 || n > grid.size()) throw std::invalid_argument("coffeehouse: bad design size");
    Design d;
    if (start && !start->indices.empty()) {
        start->validate(grid);
        d = *start;
    } else if (n == 1) {
        d.indices = {0};
    } else {
        // Globally farthest pair, lowest indices on ties.
        int bi = 0, bj = 1;
        double best = -1.0;
        for (int i = 0; i < grid.size(); ++i)
            for (int j = i + 1; j < grid.size(); ++j) {
                const double dist = euclid(grid.candidates[i], grid.candidates[j]);
                if (dist > best) {
                    best = dist;
                    bi = i;
                    bj = j;
                }
            }
        d.indices = {bi, bj};
    }

    std::vector<double> min_dist(grid.size(), std::numeric_limits<double>::infinity());
    for (int i = 0; i < grid.size(); ++i)
        for (int idx : d.indices)
            min_dist[i] = std::min(min_dist[i], euclid(grid.candidates[i], grid.candidates[idx]));

    while (d.size() < n) {
        int best = -1;
        double best_val = -1.0;
        for (int i = 0; i < grid.size(); ++i) {
            if (d.contains(i)) continue;
            if (min_dist[i] > best_val) {
                best_val = min_dist[i];
                best = i;
            }
        }
        d.indices.push_back(best);
        for (int i = 0; i < grid.size(); ++i)
            min_dist[i] = std::min(min_dist[i], euclid(grid.candidates[i], grid.candidates[best]));
    }
    return d;
}

}  // namespace ekd
