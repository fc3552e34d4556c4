#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
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
    m.params.gamma = 1.0;
    m.params.free_rho = true;
    return m;
}

GridSpace unit_grid(int res) { return GridSpace::regular({0, 0}, {1, 1}, {res, res}); }

// Oracle: universal-kriging weights via the bordered system
// [C X; X^T 0] [w; m] = [c; f].
struct Bordered {
    Eigen::VectorXd w, m;
};
Bordered bordered_weights(const GpModel& model, const GridSpace& grid, const Design& d,
                          const Point& x) {
    const auto pts = d.points(grid);
    const int n = d.size(), p = trend_size(model.trend, grid.dim);
    const Eigen::MatrixXd C = cov_matrix(model.family, model.params, pts);
    Eigen::MatrixXd X(n, p);
    for (int i = 0; i < n; ++i) X.row(i) = trend_vector(model.trend, pts[i]).transpose();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + p, n + p);
    A.topLeftCorner(n, n) = C;
    A.topRightCorner(n, p) = X;
    A.bottomLeftCorner(p, n) = X.transpose();
    Eigen::VectorXd rhs(n + p);
    rhs.head(n) = cross_cov(model.family, model.params, pts, x);
    rhs.tail(p) = trend_vector(model.trend, x);
    const Eigen::VectorXd sol = A.fullPivLu().solve(rhs);
    return {sol.head(n), sol.tail(p)};
}

}  // namespace

TEST_CASE("weights interpolate and sum to one under a constant trend") {
    const GridSpace grid = unit_grid(5);
    const GpModel model = expo_model(7.0);
    const Design d{{0, 7, 13, 21, 24}};
    for (int slot = 0; slot < d.size(); ++slot) {
        const Eigen::VectorXd v = kriging_weights(model, grid, d, grid.candidates[d.indices[slot]]);
        for (int i = 0; i < d.size(); ++i)
            CHECK(std::abs(v(i) - (i == slot ? 1.0 : 0.0)) < 1e-8);
    }
    const Eigen::VectorXd v = kriging_weights(model, grid, d, {0.37, 0.81});
    CHECK(v.sum() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("single-point design with constant trend has unit weight everywhere") {
    const GridSpace grid = unit_grid(4);
    const GpModel model = expo_model(3.0);
    const Design d{{5}};
    for (const auto& x : grid.candidates) {
        const Eigen::VectorXd v = kriging_weights(model, grid, d, x);
        CHECK(v.size() == 1);
        CHECK(v(0) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("weights match the bordered universal-kriging system") {
    const GridSpace grid = unit_grid(5);
    for (auto trend : {TrendBasis::Constant, TrendBasis::Linear}) {
        const GpModel model = expo_model(7.0, 1.0, trend);
        const Design d{{2, 11, 17, 23}};
        for (const Point& x : {Point{0.3, 0.55}, Point{0.9, 0.1}}) {
            const Eigen::VectorXd v = kriging_weights(model, grid, d, x);
            const Bordered b = bordered_weights(model, grid, d, x);
            CHECK((v - b.w).cwiseAbs().maxCoeff() < 1e-9);
            // variance via the bordered multipliers
            const double var_oracle =
                1.0 - b.w.dot(cross_cov(model.family, model.params, d.points(grid), x)) -
                b.m.dot(trend_vector(model.trend, x));
            CHECK(kriging_variance(model, grid, d, x) ==
                  doctest::Approx(var_oracle).epsilon(1e-9));
        }
    }
}

TEST_CASE("prediction reproduces observations and constants") {
    const GridSpace grid = unit_grid(5);
    const GpModel model = expo_model(7.0);
    const Design d{{3, 10, 18}};
    Eigen::VectorXd y(3);
    y << 1.4, -0.3, 2.2;
    for (int i = 0; i < 3; ++i)
        CHECK(predict(model, grid, d, grid.candidates[d.indices[i]], y) ==
              doctest::Approx(y(i)).epsilon(1e-8));
    // constant field: weights sum to one under the constant trend
    const Eigen::VectorXd c = Eigen::VectorXd::Constant(3, 5.5);
    CHECK(predict(model, grid, d, {0.61, 0.13}, c) == doctest::Approx(5.5).epsilon(1e-9));
}

TEST_CASE("classic variance: zero at design points, sigma2*2 far-field limit") {
    const GridSpace grid = unit_grid(5);
    const GpModel model = expo_model(7.0, 1.7);
    const Design d{{0, 12, 24, 7}};
    for (int idx : d.indices)
        CHECK(kriging_variance(model, grid, d, grid.candidates[idx]) < 1e-8);

    // n = 1, essentially uncorrelated remote point: 1 + v C v - 2 v c -> 2
    GridSpace wide = GridSpace::regular({0, 0}, {100, 100}, {2, 2});
    const Design one{{0}};
    CHECK(kriging_variance(expo_model(7.0, 1.7), wide, one, {100.0, 100.0}) ==
          doctest::Approx(2.0 * 1.7).epsilon(1e-8));
}

TEST_CASE("variance agrees with the conditional-Gaussian oracle") {
    const GridSpace grid = unit_grid(5);
    for (auto trend : {TrendBasis::Constant, TrendBasis::Linear}) {
        const GpModel model = expo_model(6.0, 2.3, trend);
        const Design d{{1, 12, 22, 8}};
        const auto pts = d.points(grid);
        const Eigen::MatrixXd C = cov_matrix(model.family, model.params, pts);
        const Eigen::MatrixXd Ci = C.inverse();
        const int p = trend_size(trend, grid.dim);
        Eigen::MatrixXd X(d.size(), p);
        for (int i = 0; i < d.size(); ++i)
            X.row(i) = trend_vector(trend, pts[i]).transpose();
        for (const Point& x : {Point{0.3, 0.55}, Point{0.05, 0.95}}) {
            const Eigen::VectorXd c = cross_cov(model.family, model.params, pts, x);
            const Eigen::VectorXd f = trend_vector(trend, x);
            const Eigen::VectorXd r = f - X.transpose() * Ci * c;
            const double oracle =
                model.sigma2 *
                (1.0 - c.dot(Ci * c) + r.dot((X.transpose() * Ci * X).inverse() * r));
            CHECK(kriging_variance(model, grid, d, x) == doctest::Approx(oracle).epsilon(1e-9));
        }
    }
}

TEST_CASE("weight jacobian matches finite differences") {
    const GridSpace grid = unit_grid(5);
    const Design d{{2, 11, 17, 23, 5}};
    const double h = 1e-6;

    // exponential, rate parameter
    for (const Point& x : {Point{0.3, 0.55}, Point{0.77, 0.21}}) {
        const GpModel model = expo_model(7.0);
        GpModel up = model, dn = model;
        up.params.rho += h;
        dn.params.rho -= h;
        const Eigen::MatrixXd J = weight_jacobian(model, grid, d, x);
        const Eigen::VectorXd fd = (kriging_weights(up, grid, d, x) -
                                    kriging_weights(dn, grid, d, x)) /
                                   (2.0 * h);
        CHECK((J.row(0).transpose() - fd).cwiseAbs().maxCoeff() < 1e-5);
    }

    // general Matern, both parameters free
    GpModel gm;
    gm.trend = TrendBasis::Linear;
    gm.family = {KernelVariant::MaternGeneral, ArgScaling::Plain};
    gm.params = {0.8, 1.6, true, true};
    const Point x{0.45, 0.66};
    const Eigen::MatrixXd J = weight_jacobian(gm, grid, d, x);
    for (int k = 0; k < 2; ++k) {
        GpModel up = gm, dn = gm;
        (k == 0 ? up.params.rho : up.params.gamma) += h;
        (k == 0 ? dn.params.rho : dn.params.gamma) -= h;
        const Eigen::VectorXd fd = (kriging_weights(up, grid, d, x) -
                                    kriging_weights(dn, grid, d, x)) /
                                   (2.0 * h);
        CHECK((J.row(k).transpose() - fd).cwiseAbs().maxCoeff() < 1e-5);
    }
}

TEST_CASE("corrected variance: V = 0 collapses to classic, zero at design points") {
    const GridSpace grid = unit_grid(5);
    const GpModel model = expo_model(7.0);
    const Design d{{2, 11, 17, 23}};
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(1, 1);
    const Point x{0.3, 0.7};
    const KrigingResult r = corrected_kriging_variance(model, grid, d, x, zero);
    CHECK(r.corrected_variance == doctest::Approx(r.variance).epsilon(1e-12));
    CHECK(r.variance == doctest::Approx(kriging_variance(model, grid, d, x)).epsilon(1e-12));

    Eigen::MatrixXd v1(1, 1);
    v1 << 3.7;
    for (int idx : d.indices) {
        const KrigingResult at = corrected_kriging_variance(model, grid, d,
                                                            grid.candidates[idx], v1);
        CHECK(at.variance < 1e-8);
        CHECK(at.corrected_variance < 1e-8);
        CHECK(at.corrected_variance >= at.variance);
    }
    CHECK_THROWS_AS(corrected_kriging_variance(model, grid, d, x, Eigen::MatrixXd::Zero(2, 2)),
                    std::invalid_argument);
}

TEST_CASE("corrected variance matches a hand-expanded two-point case") {
    // Two points on a segment, constant trend, exponential kernel.
    const GridSpace grid = GridSpace::from_points({{0.0}, {1.0}, {0.25}, {0.6}});
    const double rate = 2.0;
    const GpModel model = expo_model(rate);
    const Design d{{0, 1}};
    const Point x{0.25};

    const double c12 = std::exp(-rate);
    const double c1 = std::exp(-rate * 0.25), c2 = std::exp(-rate * 0.75);
    Eigen::Matrix2d C;
    C << 1.0, c12, c12, 1.0;
    const Eigen::Matrix2d Ci = C.inverse();
    Eigen::Vector2d c(c1, c2);
    Eigen::Vector2d ones(1.0, 1.0);
    // weights: C^-1 c + C^-1 1 (1 - 1' C^-1 c)/(1' C^-1 1)
    const double denom = ones.dot(Ci * ones);
    const Eigen::Vector2d v =
        Ci * c + Ci * ones * ((1.0 - ones.dot(Ci * c)) / denom);
    const double var = 1.0 + v.dot(C * v) - 2.0 * v.dot(c);

    Eigen::Matrix2d dC;
    dC << 0.0, -c12, -c12, 0.0;  // d/d rate of exp(-rate d), d12 = 1
    Eigen::Vector2d dc(-0.25 * c1, -0.75 * c2);
    // J^T = (I - C^-1 1 1^T / denom) C^-1 (dc - dC v)
    const Eigen::Vector2d cit = Ci * (dc - dC * v);
    const Eigen::Vector2d J = cit - Ci * ones * (ones.dot(cit) / denom);
    Eigen::MatrixXd V(1, 1);
    V << 0.9;
    const double corr = V(0, 0) * J.dot(C * J);

    const KrigingResult r = corrected_kriging_variance(model, grid, d, x, V);
    CHECK(r.variance == doctest::Approx(var).epsilon(1e-10));
    CHECK(r.corrected_variance == doctest::Approx(var + corr).epsilon(1e-10));
}

TEST_CASE("mek: full-grid design gives zero, direct scan is its own oracle") {
    const GridSpace grid = unit_grid(3);
    const GpModel model = expo_model(4.0);
    Design all;
    for (int i = 0; i < grid.size(); ++i) all.indices.push_back(i);
    CHECK(mek(model, grid, all).value < 1e-8);

    // independent re-evaluation of the corrected-variance scan on a 4x4 grid
    const GridSpace g4 = unit_grid(4);
    const Design d{{0, 9, 14}};
    const MekResult got = mek(model, g4, d);
    const KrigingSystem sys = KrigingSystem::build(model, g4, d);
    const Eigen::MatrixXd V = v_nu(m_theta(sys));
    double expect = -1.0;
    for (const auto& x : g4.eval_points)
        expect = std::max(expect, sys.corrected(x, V).corrected_variance);
    CHECK(got.value == doctest::Approx(expect).epsilon(1e-12));
    CHECK(got.argmax_eval_index >= 0);
}

TEST_CASE("mek is invariant to design ordering") {
    const GridSpace grid = unit_grid(5);
    const GpModel model = expo_model(7.0);
    const double a = mek(model, grid, Design{{2, 11, 17, 23, 5}}).value;
    const double b = mek(model, grid, Design{{23, 5, 2, 17, 11}}).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("sigma2 scaling law: variances scale, V_nu unchanged") {
    const GridSpace grid = unit_grid(5);
    const Design d{{2, 11, 17, 23, 5}};
    const GpModel base = expo_model(7.0, 1.0);
    GpModel scaled = base;
    scaled.sigma2 = 4.0;
    const Point x{0.3, 0.7};

    const Eigen::MatrixXd v_base = v_nu(m_theta(base, grid, d));
    const Eigen::MatrixXd v_scaled = v_nu(m_theta(scaled, grid, d));
    CHECK((v_base - v_scaled).cwiseAbs().maxCoeff() < 1e-10);

    const KrigingResult r1 = corrected_kriging_variance(base, grid, d, x, v_base);
    const KrigingResult r4 = corrected_kriging_variance(scaled, grid, d, x, v_scaled);
    CHECK(r4.variance == doctest::Approx(4.0 * r1.variance).epsilon(1e-10));
    CHECK(r4.corrected_variance ==
          doctest::Approx(4.0 * r1.corrected_variance).epsilon(1e-10));
    CHECK(mek(scaled, grid, d).value ==
          doctest::Approx(4.0 * mek(base, grid, d).value).epsilon(1e-10));
}

TEST_CASE("adding a point never increases the classic variance") {
    const GridSpace grid = unit_grid(5);
    const GpModel model = expo_model(5.0);
    Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        Design d3;
        while (d3.size() < 3) {
            const int idx = rng.uniform_int(grid.size());
            if (!d3.contains(idx)) d3.indices.push_back(idx);
        }
        Design d4 = d3;
        while (true) {
            const int idx = rng.uniform_int(grid.size());
            if (!d4.contains(idx)) {
                d4.indices.push_back(idx);
                break;
            }
        }
        const Point x{rng.uniform(), rng.uniform()};
        CHECK(kriging_variance(model, grid, d4, x) <=
              kriging_variance(model, grid, d3, x) + 1e-9);
    }
}

TEST_CASE("simulate_field: trend limit, determinism, empirical covariance") {
    GridSpace grid = unit_grid(4);
    GpModel model;
    model.trend = TrendBasis::Linear;
    Eigen::VectorXd beta(3);
    beta << 0.5, -1.0, 2.0;
    model.beta = beta;
    model.sigma2 = 0.0;
    model.family = {KernelVariant::Matern32, ArgScaling::Plain};
    model.params.rho = 0.7;

    const auto trend_only = simulate_field(model, grid, 9);
    for (int i = 0; i < grid.size(); ++i)
        CHECK(trend_only[i] ==
              doctest::Approx(beta.dot(trend_vector(model.trend, grid.candidates[i]))));

    model.sigma2 = 1.3;
    const auto a = simulate_field(model, grid, 123);
    const auto b = simulate_field(model, grid, 123);
    CHECK(a == b);
    CHECK(a != simulate_field(model, grid, 124));

    // empirical covariance at three pairs over 2000 seeds, within 3 SE
    const int reps = 2000;
    const std::pair<int, int> pairs[] = {{0, 1}, {0, 5}, {2, 7}};
    std::vector<std::vector<double>> draws(reps);
    for (int r = 0; r < reps; ++r) draws[r] = simulate_field(model, grid, 1000 + r);
    for (auto [i, j] : pairs) {
        double mi = 0, mj = 0;
        for (int r = 0; r < reps; ++r) {
            mi += draws[r][i];
            mj += draws[r][j];
        }
        mi /= reps;
        mj /= reps;
        double cov = 0;
        for (int r = 0; r < reps; ++r) cov += (draws[r][i] - mi) * (draws[r][j] - mj);
        cov /= reps - 1;
        const double dij = euclid(grid.candidates[i], grid.candidates[j]);
        const double truth = model.sigma2 * kernel_value(model.family, model.params, dij);
        const double se = std::sqrt((model.sigma2 * model.sigma2 + truth * truth) /
                                    static_cast<double>(reps));
        CHECK(std::abs(cov - truth) < 3.0 * se);
    }
}
