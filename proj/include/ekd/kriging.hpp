#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ekd/grid.hpp"
#include "ekd/linalg.hpp"
#include "ekd/model.hpp"

namespace ekd {

struct KrigingResult {
    double prediction = 0.0;
    double variance = 0.0;
    double corrected_variance = 0.0;
};

/// Per-design factorization shared by prediction, variance, the weight
/// Jacobian and the information blocks. All members refer to the jittered
/// correlation matrix actually factored, so every downstream formula is
/// algebraically consistent.
class KrigingSystem {
public:
    static KrigingSystem build(const GpModel& model, const GridSpace& grid,
                               const Design& design);

    int n() const { return static_cast<int>(pts_.size()); }
    int p() const { return static_cast<int>(X_.cols()); }
    int q() const { return static_cast<int>(dC_.size()); }
    const GpModel& model() const { return model_; }
    const std::vector<Point>& points() const { return pts_; }
    const Eigen::MatrixXd& corr() const { return C_; }
    const Eigen::LLT<Eigen::MatrixXd>& factor() const { return llt_; }
    const Eigen::MatrixXd& trend_matrix() const { return X_; }
    const Eigen::MatrixXd& gls_normal() const { return G_; }  // X^T C^-1 X
    const std::vector<Eigen::MatrixXd>& corr_grads() const { return dC_; }

    /// Universal-kriging weight vector v(x):
    /// v^T = c^T C^-1 + (f(x)^T - c^T C^-1 X)(X^T C^-1 X)^-1 X^T C^-1.
    Eigen::VectorXd weights(const Point& x) const;

    /// Prediction v^T y from observations at the design points.
    double predict(const Point& x, const Eigen::VectorXd& y) const;

    /// Classic kriging variance sigma^2 (1 + v^T C v - 2 v^T c), clamped at
    /// zero when within round-off of it.
    double variance(const Point& x) const;

    /// d v^T / d nu, one row per free covariance parameter (q x n):
    /// (dc^T/dnu - v^T dC/dnu) C^-1 (I - X (X^T C^-1 X)^-1 X^T C^-1).
    Eigen::MatrixXd weight_jacobian(const Point& x) const;

    /// Classic variance plus the dispersion correction
    /// sigma^2 tr(V J C J^T) for a given q x q dispersion matrix V.
    KrigingResult corrected(const Point& x, const Eigen::MatrixXd& v_nu) const;

private:
    void require_trend() const;  // prediction paths need an invertible X^T C^-1 X

    GpModel model_;
    std::vector<Point> pts_;
    Eigen::MatrixXd C_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::MatrixXd X_;    // n x p trend matrix
    Eigen::MatrixXd CiX_;  // C^-1 X
    Eigen::MatrixXd G_;    // X^T C^-1 X
    Eigen::LLT<Eigen::MatrixXd> G_llt_;
    bool trend_ok_ = false;
    std::vector<Eigen::MatrixXd> dC_;
};

Eigen::VectorXd kriging_weights(const GpModel&, const GridSpace&, const Design&, const Point& x);
double predict(const GpModel&, const GridSpace&, const Design&, const Point& x,
               const Eigen::VectorXd& y_at_design);
double kriging_variance(const GpModel&, const GridSpace&, const Design&, const Point& x);
Eigen::MatrixXd weight_jacobian(const GpModel&, const GridSpace&, const Design&, const Point& x);
KrigingResult corrected_kriging_variance(const GpModel&, const GridSpace&, const Design&,
                                         const Point& x, const Eigen::MatrixXd& v_nu);

struct MekResult {
    double value = 0.0;
    int argmax_eval_index = -1;
};

/// Maximum of the corrected kriging variance over the evaluation set. The
/// dispersion matrix V_nu is computed once per design and reused.
MekResult mek(const GpModel&, const GridSpace&, const Design&, VnuMode mode = VnuMode::Profiled);

/// Same scan with a caller-supplied dispersion matrix.
MekResult mek_with_dispersion(const KrigingSystem&, const GridSpace&, const Eigen::MatrixXd& v_nu);

/// Corrected variance at each of `at`; used by greedy augmentation and the
/// prediction surface output.
std::vector<double> corrected_variance_field(const KrigingSystem&, const std::vector<Point>& at,
                                             const Eigen::MatrixXd& v_nu);

/// Gaussian draw over grid.candidates with mean X beta and covariance
/// sigma^2 C_nu; deterministic per seed.
std::vector<double> simulate_field(const GpModel&, const GridSpace&, std::uint64_t seed);

}  // namespace ekd
