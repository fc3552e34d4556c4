// Kriging prediction, classic and corrected variance, and the MEK design
// criterion.

#include "ekd/kriging.hpp"

#include <cmath>
#include <stdexcept>

#include "ekd/information.hpp"
#include "ekd/rng.hpp"

namespace ekd {

namespace {

// Round-off guard shared by the variance and the correction term: small
// negatives clamp to zero, larger ones signal broken PD handling.
double clamp_nonneg(double x, const char* what) {
    if (x >= 0.0) return x;
    if (x > -1e-10) return 0.0;
    throw std::runtime_error(std::string(what) + " is negative (" + std::to_string(x) +
                             "); positive-definiteness failure");
}

}  // namespace

KrigingSystem KrigingSystem::build(const GpModel& model, const GridSpace& grid,
                                   const Design& design) {
    design.validate(grid);
    validate_kernel(model.family, model.params);
    if (!(model.sigma2 >= 0.0)) throw std::invalid_argument("GpModel: sigma2 must be >= 0");

    KrigingSystem s;
    s.model_ = model;
    s.pts_ = design.points(grid);
    const int n = static_cast<int>(s.pts_.size());
    const int p = trend_size(model.trend, grid.dim);

    JitteredChol jc = chol_with_jitter(cov_matrix(model.family, model.params, s.pts_));
    s.C_ = std::move(jc.matrix);
    s.llt_ = std::move(jc.llt);

    s.X_.resize(n, p);
    for (int i = 0; i < n; ++i) s.X_.row(i) = trend_vector(model.trend, s.pts_[i]).transpose();
    s.CiX_ = s.llt_.solve(s.X_);
    s.G_ = s.X_.transpose() * s.CiX_;
    s.G_llt_ = Eigen::LLT<Eigen::MatrixXd>(s.G_);
    // A rank-deficient trend only matters for the prediction paths; the
    // criteria handle it through the -inf sentinel.
    s.trend_ok_ = s.G_llt_.info() == Eigen::Success && s.G_.diagonal().minCoeff() > 0.0;

    s.dC_ = cov_matrix_grads(model.family, model.params, s.pts_);
    return s;
}

void KrigingSystem::require_trend() const {
    if (!trend_ok_)
        throw std::runtime_error("KrigingSystem: rank-deficient trend on this design");
}

Eigen::VectorXd KrigingSystem::weights(const Point& x) const {
    require_trend();
    const Eigen::VectorXd c = cross_cov(model_.family, model_.params, pts_, x);
    const Eigen::VectorXd ci_c = llt_.solve(c);
    const Eigen::VectorXd r = trend_vector(model_.trend, x) - X_.transpose() * ci_c;
    return ci_c + CiX_ * G_llt_.solve(r);
}

double KrigingSystem::predict(const Point& x, const Eigen::VectorXd& y) const {
    if (y.size() != n()) throw std::invalid_argument("predict: observation size mismatch");
    return weights(x).dot(y);
}

double KrigingSystem::variance(const Point& x) const {
    const Eigen::VectorXd c = cross_cov(model_.family, model_.params, pts_, x);
    const Eigen::VectorXd v = weights(x);
    const double raw = 1.0 + v.dot(C_ * v) - 2.0 * v.dot(c);
    return model_.sigma2 * clamp_nonneg(raw, "kriging variance");
}

Eigen::MatrixXd KrigingSystem::weight_jacobian(const Point& x) const {
    std::vector<Eigen::VectorXd> dc;
    const Eigen::VectorXd c = cross_cov(model_.family, model_.params, pts_, x, &dc);
    const Eigen::VectorXd v = weights(x);
    Eigen::MatrixXd J(q(), n());
    for (int k = 0; k < q(); ++k) {
        const Eigen::VectorXd t = dc[k] - dC_[k] * v;
        const Eigen::VectorXd s = llt_.solve(t);
        J.row(k) = (s - CiX_ * G_llt_.solve(X_.transpose() * s)).transpose();
    }
    return J;
}

KrigingResult KrigingSystem::corrected(const Point& x, const Eigen::MatrixXd& v_nu) const {
    if (v_nu.rows() != q() || v_nu.cols() != q())
        throw std::invalid_argument("corrected: dispersion matrix is " +
                                    std::to_string(v_nu.rows()) + "x" +
                                    std::to_string(v_nu.cols()) + ", expected " +
                                    std::to_string(q()) + "x" + std::to_string(q()));
    KrigingResult out;
    out.variance = variance(x);
    const Eigen::MatrixXd J = weight_jacobian(x);
    const Eigen::MatrixXd B = J * C_ * J.transpose();
    const double corr = model_.sigma2 * clamp_nonneg((v_nu.array() * B.array()).sum(),
                                                     "variance correction");
    out.corrected_variance = out.variance + corr;
    return out;
}

Eigen::VectorXd kriging_weights(const GpModel& m, const GridSpace& g, const Design& d,
                                const Point& x) {
    return KrigingSystem::build(m, g, d).weights(x);
}

double predict(const GpModel& m, const GridSpace& g, const Design& d, const Point& x,
               const Eigen::VectorXd& y_at_design) {
    return KrigingSystem::build(m, g, d).predict(x, y_at_design);
}

double kriging_variance(const GpModel& m, const GridSpace& g, const Design& d, const Point& x) {
    return KrigingSystem::build(m, g, d).variance(x);
}

Eigen::MatrixXd weight_jacobian(const GpModel& m, const GridSpace& g, const Design& d,
                                const Point& x) {
    return KrigingSystem::build(m, g, d).weight_jacobian(x);
}

KrigingResult corrected_kriging_variance(const GpModel& m, const GridSpace& g, const Design& d,
                                         const Point& x, const Eigen::MatrixXd& v_nu) {
    return KrigingSystem::build(m, g, d).corrected(x, v_nu);
}

MekResult mek_with_dispersion(const KrigingSystem& sys, const GridSpace& grid,
                              const Eigen::MatrixXd& v_nu) {
    MekResult out;
    out.value = -1.0;
    for (int i = 0; i < grid.eval_size(); ++i) {
        const double val = sys.corrected(grid.eval_points[i], v_nu).corrected_variance;
        if (val > out.value) {
            out.value = val;
            out.argmax_eval_index = i;
        }
    }
    return out;
}

MekResult mek(const GpModel& m, const GridSpace& g, const Design& d, VnuMode mode) {
    const KrigingSystem sys = KrigingSystem::build(m, g, d);
    const Eigen::MatrixXd v = v_nu(m_theta(sys), mode);
    return mek_with_dispersion(sys, g, v);
}

std::vector<double> corrected_variance_field(const KrigingSystem& sys,
                                             const std::vector<Point>& at,
                                             const Eigen::MatrixXd& v_nu) {
    std::vector<double> out;
    out.reserve(at.size());
    for (const auto& x : at) out.push_back(sys.corrected(x, v_nu).corrected_variance);
    return out;
}

std::vector<double> simulate_field(const GpModel& model, const GridSpace& grid,
                                   std::uint64_t seed) {
    const int p = trend_size(model.trend, grid.dim);
    if (!model.beta || model.beta->size() != p)
        throw std::invalid_argument("simulate_field: model.beta must have " + std::to_string(p) +
                                    " entries");
    const int m = grid.size();
    Eigen::VectorXd mean(m);
    for (int i = 0; i < m; ++i)
        mean(i) = model.beta->dot(trend_vector(model.trend, grid.candidates[i]));

    std::vector<double> out(m);
    if (model.sigma2 == 0.0) {
        for (int i = 0; i < m; ++i) out[i] = mean(i);
        return out;
    }
    const JitteredChol jc = chol_with_jitter(cov_matrix(model.family, model.params,
                                                        grid.candidates));
    Rng rng(seed);
    Eigen::VectorXd u(m);
    for (int i = 0; i < m; ++i) u(i) = rng.normal();
    const Eigen::VectorXd y =
        mean + std::sqrt(model.sigma2) * (jc.llt.matrixL() * u).eval();
    for (int i = 0; i < m; ++i) out[i] = y(i);
    return out;
}

int trend_size(TrendBasis basis, int dim) {
    return basis == TrendBasis::Constant ? 1 : 1 + dim;
}

Eigen::VectorXd trend_vector(TrendBasis basis, const Point& x) {
    if (basis == TrendBasis::Constant) {
        Eigen::VectorXd f(1);
        f(0) = 1.0;
        return f;
    }
    Eigen::VectorXd f(1 + x.size());
    f(0) = 1.0;
    for (std::size_t k = 0; k < x.size(); ++k) f(1 + k) = x[k];
    return f;
}

}  // namespace ekd
