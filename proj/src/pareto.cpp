#include "ekd/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ekd {

bool ParetoFront::insert(ParetoPoint cand) {
    if (!std::isfinite(cand.c_beta) || !std::isfinite(cand.c_nu)) return false;
    cand.on_hull = false;

    // First point at or right of the candidate in c_beta.
    auto ge = std::lower_bound(points_.begin(), points_.end(), cand.c_beta,
                               [](const ParetoPoint& p, double v) { return p.c_beta < v; });

    // Near-duplicate pair: first design kept.
    for (auto it = ge; it != points_.end() && it->c_beta - cand.c_beta < kDupTol; ++it)
        if (std::abs(it->c_nu - cand.c_nu) < kDupTol) return false;
    for (auto it = ge; it != points_.begin();) {
        --it;
        if (cand.c_beta - it->c_beta >= kDupTol) break;
        if (std::abs(it->c_nu - cand.c_nu) < kDupTol) return false;
    }

    // Weak domination: any point with c_beta >= ours and c_nu >= ours kills
    // the candidate; with the sorted-front invariant, checking the first
    // such point suffices.
    if (ge != points_.end() && ge->c_nu >= cand.c_nu) return false;

    // Remove everything the candidate weakly dominates: the run left of the
    // insertion position with c_nu <= cand's, plus any exact c_beta ties to
    // the right (those have strictly smaller c_nu once the check above
    // passed).
    auto end_removed = ge;
    while (end_removed != points_.end() && end_removed->c_beta == cand.c_beta &&
           end_removed->c_nu <= cand.c_nu)
        ++end_removed;
    auto first_removed = ge;
    while (first_removed != points_.begin() && std::prev(first_removed)->c_nu <= cand.c_nu)
        --first_removed;
    auto pos = points_.erase(first_removed, end_removed);
    points_.insert(pos, std::move(cand));
    return true;
}

int ParetoFront::mark_hull() {
    for (auto& p : points_) p.on_hull = false;
    const int n = size();
    if (n == 0) return 0;
    if (n <= 2) {
        for (auto& p : points_) p.on_hull = true;
        return n;
    }
    // Upper envelope over points sorted by c_beta ascending; pop when the
    // previous vertex lies on or below the chord (collinear points go).
    std::vector<int> hull;
    for (int i = 0; i < n; ++i) {
        while (hull.size() >= 2) {
            const ParetoPoint& a = points_[hull[hull.size() - 2]];
            const ParetoPoint& b = points_[hull.back()];
            const ParetoPoint& c = points_[i];
            const double cross = (b.c_beta - a.c_beta) * (c.c_nu - a.c_nu) -
                                 (c.c_beta - a.c_beta) * (b.c_nu - a.c_nu);
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    for (int i : hull) points_[i].on_hull = true;
    return static_cast<int>(hull.size());
}

std::string ParetoFront::to_table() const {
    std::ostringstream os;
    os.precision(12);
    os << "c_beta\tc_nu\ton_hull\tindices\n";
    for (const auto& p : points_) {
        os << p.c_beta << '\t' << p.c_nu << '\t' << (p.on_hull ? 1 : 0) << '\t';
        for (std::size_t i = 0; i < p.design.indices.size(); ++i) {
            if (i) os << ',';
            os << p.design.indices[i];
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace ekd
