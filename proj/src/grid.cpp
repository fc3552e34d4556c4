#include "ekd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>

namespace ekd {

double euclid(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

GridSpace GridSpace::regular(const std::vector<double>& lo, const std::vector<double>& hi,
                             const std::vector<int>& res) {
    const int d = static_cast<int>(res.size());
    if (d == 0 || lo.size() != res.size() || hi.size() != res.size())
        throw std::invalid_argument("GridSpace::regular: inconsistent dimensions");
    long total = 1;
    for (int k = 0; k < d; ++k) {
        if (res[k] < 1) throw std::invalid_argument("GridSpace::regular: resolution < 1");
        total *= res[k];
    }

    GridSpace g;
    g.dim = d;
    g.candidates.reserve(total);
    std::vector<int> ix(d, 0);
    for (long c = 0; c < total; ++c) {
        Point p(d);
        for (int k = 0; k < d; ++k)
            p[k] = (res[k] == 1) ? lo[k] : lo[k] + (hi[k] - lo[k]) * ix[k] / (res[k] - 1);
        g.candidates.push_back(std::move(p));
        for (int k = 0; k < d; ++k) {  // first coordinate varies fastest
            if (++ix[k] < res[k]) break;
            ix[k] = 0;
        }
    }
    g.eval_points = g.candidates;

    // NSWE cliques: one step along each axis, clipped at the boundary.
    g.cliques.assign(total, {});
    std::vector<long> stride(d, 1);
    for (int k = 1; k < d; ++k) stride[k] = stride[k - 1] * res[k - 1];
    for (long c = 0; c < total; ++c) {
        long rem = c;
        for (int k = 0; k < d; ++k) {
            const int pos = static_cast<int>(rem % res[k]);
            rem /= res[k];
            if (pos > 0) g.cliques[c].push_back(static_cast<int>(c - stride[k]));
            if (pos + 1 < res[k]) g.cliques[c].push_back(static_cast<int>(c + stride[k]));
        }
    }
    return g;
}

GridSpace GridSpace::from_points(std::vector<Point> pts) {
    if (pts.empty()) throw std::invalid_argument("GridSpace::from_points: empty point set");
    GridSpace g;
    g.dim = static_cast<int>(pts.front().size());
    for (const auto& p : pts)
        if (static_cast<int>(p.size()) != g.dim)
            throw std::invalid_argument("GridSpace::from_points: mixed dimensions");
    g.candidates = std::move(pts);
    g.eval_points = g.candidates;
    return g;
}

int GridSpace::nearest_candidate(const Point& x) const {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < size(); ++i) {
        const double d = euclid(candidates[i], x);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

std::uint64_t GridSpace::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* b = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    };
    const std::int64_t d = dim, m = size();
    mix(&d, sizeof d);
    mix(&m, sizeof m);
    for (const auto& p : candidates)
        for (double v : p) mix(&v, sizeof v);
    return h;
}

double GridSpace::diameter() const {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) {
        double lo = candidates[0][k], hi = candidates[0][k];
        for (const auto& p : candidates) {
            lo = std::min(lo, p[k]);
            hi = std::max(hi, p[k]);
        }
        s += (hi - lo) * (hi - lo);
    }
    return std::sqrt(s);
}

bool Design::contains(int idx) const {
    return std::find(indices.begin(), indices.end(), idx) != indices.end();
}

std::vector<Point> Design::points(const GridSpace& grid) const {
    std::vector<Point> out;
    out.reserve(indices.size());
    for (int i : indices) out.push_back(grid.candidates[i]);
    return out;
}

void Design::validate(const GridSpace& grid) const {
    if (indices.empty()) throw std::invalid_argument("Design: empty");
    for (std::size_t a = 0; a < indices.size(); ++a) {
        if (indices[a] < 0 || indices[a] >= grid.size())
            throw std::invalid_argument("Design: index " + std::to_string(indices[a]) +
                                        " outside grid of size " + std::to_string(grid.size()));
        for (std::size_t b = a + 1; b < indices.size(); ++b)
            if (indices[a] == indices[b])
                throw std::invalid_argument("Design: replicated index " +
                                            std::to_string(indices[a]));
    }
}

}  // namespace ekd
