#include "ekd/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ekd {

namespace {

// Fixed five-stop blue-to-red ramp.
struct Stop {
    double t;
    int r, g, b;
};
constexpr Stop kRamp[] = {{0.00, 38, 70, 160},
                          {0.25, 80, 160, 200},
                          {0.50, 235, 235, 210},
                          {0.75, 230, 140, 70},
                          {1.00, 170, 30, 40}};

std::string color_at(double t) {
    t = std::clamp(t, 0.0, 1.0);
    int lo = 0;
    while (lo + 2 < static_cast<int>(std::size(kRamp)) && kRamp[lo + 1].t <= t) ++lo;
    const Stop& a = kRamp[lo];
    const Stop& b = kRamp[lo + 1];
    const double u = (t - a.t) / (b.t - a.t);
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(a.r + u * (b.r - a.r))),
                  static_cast<int>(std::lround(a.g + u * (b.g - a.g))),
                  static_cast<int>(std::lround(a.b + u * (b.b - a.b))));
    return buf;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string render_heatmap_svg(const std::vector<Point>& pts, const std::vector<double>& values,
                               const std::vector<Point>* markers) {
    if (pts.empty() || pts.size() != values.size())
        throw std::invalid_argument("render: point/value size mismatch");
    if (pts.front().size() != 2) throw std::invalid_argument("render: only 2-D grids are drawn");

    std::map<double, int> xs, ys;
    for (const auto& p : pts) {
        xs.emplace(p[0], 0);
        ys.emplace(p[1], 0);
    }
    int c = 0;
    for (auto& kv : xs) kv.second = c++;
    c = 0;
    for (auto& kv : ys) kv.second = c++;
    const int nx = static_cast<int>(xs.size());
    const int ny = static_cast<int>(ys.size());
    if (static_cast<std::size_t>(nx) * ny != pts.size())
        throw std::invalid_argument("render: input is not a full rectangular grid");
    std::vector<int> seen(static_cast<std::size_t>(nx) * ny, 0);
    std::vector<double> cell(static_cast<std::size_t>(nx) * ny, 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const int ix = xs[pts[i][0]], iy = ys[pts[i][1]];
        if (seen[iy * nx + ix]++)
            throw std::invalid_argument("render: duplicate grid node");
        cell[iy * nx + ix] = values[i];
    }

    double vmin = values[0], vmax = values[0];
    for (double v : values) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    const double span = (vmax > vmin) ? vmax - vmin : 1.0;

    const int cs = 16;  // cell size in px
    const int legend_w = 70;
    const int w = nx * cs + legend_w + 20;
    const int h = std::max(ny * cs, 120) + 20;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\">\n";
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            const double t = (cell[iy * nx + ix] - vmin) / span;
            // y axis points up: last row drawn at the top
            svg << "<rect x=\"" << 10 + ix * cs << "\" y=\"" << 10 + (ny - 1 - iy) * cs
                << "\" width=\"" << cs << "\" height=\"" << cs << "\" fill=\"" << color_at(t)
                << "\"/>\n";
        }

    // Legend: vertical ramp with min/max labels.
    const int lx = 10 + nx * cs + 14;
    const int lh = std::max(ny * cs, 100);
    for (int i = 0; i < lh; ++i) {
        const double t = 1.0 - static_cast<double>(i) / (lh - 1);
        svg << "<rect x=\"" << lx << "\" y=\"" << 10 + i << "\" width=\"14\" height=\"1\" fill=\""
            << color_at(t) << "\"/>\n";
    }
    svg << "<text x=\"" << lx + 18 << "\" y=\"" << 18 << "\" font-size=\"10\">" << fmt(vmax)
        << "</text>\n";
    svg << "<text x=\"" << lx + 18 << "\" y=\"" << 10 + lh << "\" font-size=\"10\">" << fmt(vmin)
        << "</text>\n";

    if (markers) {
        const double x0 = xs.begin()->first, x1 = xs.rbegin()->first;
        const double y0 = ys.begin()->first, y1 = ys.rbegin()->first;
        const double sx = (nx - 1) * cs / ((x1 > x0) ? x1 - x0 : 1.0);
        const double sy = (ny - 1) * cs / ((y1 > y0) ? y1 - y0 : 1.0);
        for (const auto& m : *markers) {
            const double px = 10 + cs / 2.0 + (m[0] - x0) * sx;
            const double py = 10 + cs / 2.0 + (y1 - m[1]) * sy;
            svg << "<circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py)
                << "\" r=\"3.5\" fill=\"black\" stroke=\"white\"/>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace ekd
