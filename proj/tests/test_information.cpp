#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "ekd/designs.hpp"
#include "ekd/information.hpp"
#include "ekd/kriging.hpp"
#include "ekd/rng.hpp"

using namespace ekd;

namespace {

GpModel expo_model(double rate, double sigma2 = 1.0,
                   TrendBasis trend = TrendBasis::Constant) {
    GpModel m;
    m.trend = trend;
    m.sigma2 = sigma2;
    m.family = {KernelVariant::Exponential, ArgScaling::Plain};
    m.params.rho = rate;
    return m;
}

GridSpace unit_grid(int res) { return GridSpace::regular({0, 0}, {1, 1}, {res, res}); }

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<int> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int i, int j) { return v[i] < v[j]; });
        std::vector<double> r(v.size());
        for (std::size_t k = 0; k < idx.size(); ++k) r[idx[k]] = static_cast<double>(k);
        return r;
    };
    const auto ra = ranks(a), rb = ranks(b);
    const double n = static_cast<double>(a.size());
    const double mean = (n - 1) / 2.0;
    double num = 0, da = 0, db = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (ra[i] - mean) * (rb[i] - mean);
        da += (ra[i] - mean) * (ra[i] - mean);
        db += (rb[i] - mean) * (rb[i] - mean);
    }
    return num / std::sqrt(da * db);
}

}  // namespace

TEST_CASE("m_beta: trivial cases and dense-algebra oracle") {
    // n = 1, constant trend, sigma2 = 1
    GridSpace one = GridSpace::from_points({{0.2, 0.4}});
    CHECK(m_beta(expo_model(7.0), one, Design{{0}})(0, 0) == doctest::Approx(1.0));

    // two essentially uncorrelated points: M_beta ~ [2]/sigma2
    GridSpace wide = GridSpace::regular({0, 0}, {50, 50}, {2, 2});
    const Eigen::MatrixXd mb2 = m_beta(expo_model(7.0, 2.0), wide, Design{{0, 3}});
    CHECK(mb2(0, 0) == doctest::Approx(2.0 / 2.0).epsilon(1e-6));

    // the fixed Lh design under the exponential model: explicit-inverse oracle
    const GridSpace grid = unit_grid(25);
    const GpModel model = expo_model(7.0, 1.0, TrendBasis::Linear);
    const Design d = snap_to_grid(lh_star_7(), grid);
    const auto pts = d.points(grid);
    const Eigen::MatrixXd C = cov_matrix(model.family, model.params, pts);
    Eigen::MatrixXd X(7, 3);
    for (int i = 0; i < 7; ++i) X.row(i) = trend_vector(model.trend, pts[i]).transpose();
    const Eigen::MatrixXd oracle = X.transpose() * C.inverse() * X;
    const Eigen::MatrixXd got = m_beta(model, grid, d);
    CHECK((got - oracle).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::log(got.determinant()) ==
          doctest::Approx(std::log(oracle.determinant())).epsilon(1e-8));
}

TEST_CASE("m_theta: single point gives zero blocks") {
    GridSpace one = GridSpace::from_points({{0.2, 0.4}});
    const InfoBlocks b = m_theta(expo_model(7.0), one, Design{{0}});
    CHECK(b.z_nu(0) == 0.0);
    CHECK(b.m_nu(0, 0) == 0.0);
    CHECK(b.n == 1);
}

TEST_CASE("m_theta: two-point closed form") {
    // z = -2 c c' / (1 - c^2),  M_nu = c'^2 (1 + c^2) / (1 - c^2)^2
    const double rate = 3.0, dist = 0.4;
    GridSpace g = GridSpace::from_points({{0.0, 0.0}, {dist, 0.0}});
    const InfoBlocks b = m_theta(expo_model(rate), g, Design{{0, 1}});
    const double c = std::exp(-rate * dist);
    const double cp = -dist * c;
    CHECK(b.z_nu(0) == doctest::Approx(-2.0 * c * cp / (1.0 - c * c)).epsilon(1e-10));
    CHECK(b.m_nu(0, 0) ==
          doctest::Approx(cp * cp * (1.0 + c * c) / ((1.0 - c * c) * (1.0 - c * c)))
              .epsilon(1e-10));
}

TEST_CASE("m_nu matches finite-difference covariance derivatives") {
    const GridSpace grid = unit_grid(5);
    const Design d{{2, 11, 17, 23, 5}};
    GpModel m;
    m.trend = TrendBasis::Constant;
    m.family = {KernelVariant::MaternGeneral, ArgScaling::Plain};
    m.params = {0.9, 1.4, true, true};
    const InfoBlocks blocks = m_theta(m, grid, d);

    const auto pts = d.points(grid);
    const Eigen::MatrixXd C = cov_matrix(m.family, m.params, pts);
    const Eigen::MatrixXd Ci = C.inverse();
    const double h = 1e-6;
    std::vector<Eigen::MatrixXd> fd;
    for (int k = 0; k < 2; ++k) {
        CovParams up = m.params, dn = m.params;
        (k == 0 ? up.rho : up.gamma) += h;
        (k == 0 ? dn.rho : dn.gamma) -= h;
        fd.push_back((cov_matrix(m.family, up, pts) - cov_matrix(m.family, dn, pts)) /
                     (2.0 * h));
    }
    for (int k = 0; k < 2; ++k) {
        CHECK(std::abs(blocks.z_nu(k) - (Ci * fd[k]).trace()) /
                  std::max(1.0, std::abs(blocks.z_nu(k))) < 1e-5);
        for (int l = 0; l < 2; ++l) {
            const double want = 0.5 * (Ci * fd[k] * Ci * fd[l]).trace();
            CHECK(std::abs(blocks.m_nu(k, l) - want) / std::max(1.0, std::abs(want)) < 1e-5);
        }
    }
}

TEST_CASE("v_nu: sigma2 invariance, known-sigma2 mode, scalar oracle") {
    const GridSpace grid = unit_grid(5);
    const Design d{{2, 11, 17}};
    const InfoBlocks b1 = m_theta(expo_model(5.0, 1.0), grid, d);
    const InfoBlocks b5 = m_theta(expo_model(5.0, 5.0), grid, d);
    CHECK((v_nu(b1) - v_nu(b5)).cwiseAbs().maxCoeff() < 1e-10);

    // known-sigma2 mode is the plain inverse
    CHECK(v_nu(b1, VnuMode::KnownSigma2)(0, 0) ==
          doctest::Approx(1.0 / b1.m_nu(0, 0)).epsilon(1e-12));
    // profiled mode subtracts the z-correction
    CHECK(v_nu(b1)(0, 0) ==
          doctest::Approx(1.0 / (b1.m_nu(0, 0) - b1.z_nu(0) * b1.z_nu(0) / (2.0 * b1.n)))
              .epsilon(1e-12));
    // profiled dispersion is never smaller
    CHECK(v_nu(b1)(0, 0) >= v_nu(b1, VnuMode::KnownSigma2)(0, 0));

    // singular information: a single point cannot estimate nu
    GridSpace one = GridSpace::from_points({{0.2, 0.4}});
    CHECK_THROWS_AS(v_nu(m_theta(expo_model(7.0), one, Design{{0}})), NonEstimableError);
}

TEST_CASE("j_alpha: endpoint reductions and the -inf sentinel") {
    const GridSpace grid = unit_grid(5);
    const Design d{{2, 11, 17, 23}};
    const GpModel m = expo_model(6.0, 1.0, TrendBasis::Linear);
    const KrigingSystem sys = KrigingSystem::build(m, grid, d);
    const auto [cb, cn] = criteria_pair(sys);
    CHECK(j_alpha(sys, 1.0) == cb);
    CHECK(j_alpha(sys, 0.0) == cn);
    CHECK(j_alpha(sys, 0.75) == doctest::Approx(0.75 * cb + 0.25 * cn).epsilon(1e-12));
    CHECK_THROWS_AS(j_alpha(sys, 1.5), std::invalid_argument);

    // collinear design under a linear trend: M_beta singular, sentinel not a crash
    const Design collinear{{0, 1, 2, 3}};  // bottom row of the grid
    const double j = j_alpha(m, grid, collinear, 0.75);
    CHECK(std::isinf(j));
    CHECK(j < 0);
}

TEST_CASE("logdet path matches direct determinants on small matrices") {
    const GridSpace grid = unit_grid(4);
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        Design d;
        while (d.size() < 4) {
            const int idx = rng.uniform_int(grid.size());
            if (!d.contains(idx)) d.indices.push_back(idx);
        }
        const GpModel m = expo_model(4.0, 1.0, TrendBasis::Linear);
        const KrigingSystem sys = KrigingSystem::build(m, grid, d);
        const auto [cb, cn] = criteria_pair(sys);
        const Eigen::MatrixXd mb = m_beta(sys);
        CHECK(std::exp(cb) == doctest::Approx(mb.determinant()).epsilon(1e-8));
        const InfoBlocks blocks = m_theta(sys);
        CHECK(std::exp(cn) == doctest::Approx(blocks.m_nu.determinant()).epsilon(1e-8));
    }
}

TEST_CASE("nested designs: adding a point never lowers log|M_beta|") {
    const GridSpace grid = unit_grid(5);
    const GpModel m = expo_model(5.0, 1.0, TrendBasis::Linear);
    Rng rng(11);
    for (int trial = 0; trial < 15; ++trial) {
        Design d;
        while (d.size() < 4) {
            const int idx = rng.uniform_int(grid.size());
            if (!d.contains(idx)) d.indices.push_back(idx);
        }
        Design bigger = d;
        while (true) {
            const int idx = rng.uniform_int(grid.size());
            if (!bigger.contains(idx)) {
                bigger.indices.push_back(idx);
                break;
            }
        }
        const auto [cb_small, cn_small] = criteria_pair(KrigingSystem::build(m, grid, d));
        const auto [cb_big, cn_big] = criteria_pair(KrigingSystem::build(m, grid, bigger));
        (void)cn_small;
        (void)cn_big;
        CHECK(cb_big >= cb_small - 1e-9);
    }
}

TEST_CASE("minus-J correlates with MEK over perturbed Lh designs") {
    // unit-square exponential benchmark, 300 perturbed random Lh designs.
    const GridSpace grid = unit_grid(25);
    const GpModel m = expo_model(7.0);
    std::vector<double> minus_j, mek_vals;
    for (int s = 0; s < 300; ++s) {
        LhSpec spec;
        spec.n = 7;
        spec.dim = 2;
        spec.perturb_sd = 0.1;
        spec.seed = 1000 + s;
        const Design d = snap_to_grid(random_lh(spec), grid);
        const double j = j_alpha(m, grid, d, 0.75);
        if (!std::isfinite(j)) continue;
        minus_j.push_back(-j);
        mek_vals.push_back(mek(m, grid, d).value);
    }
    REQUIRE(minus_j.size() > 250);
    CHECK(spearman(minus_j, mek_vals) > 0.5);
}
