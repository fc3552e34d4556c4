#pragma once

#include <Eigen/Dense>
#include <utility>

#include "ekd/errors.hpp"
#include "ekd/kriging.hpp"

namespace ekd {

/// Fisher-information blocks of M_theta for theta = (sigma^2, nu):
///   top-left  n/(2 sigma^4),
///   off block z_nu/(2 sigma^2) with {z_nu}_i = tr(C^-1 dC/dnu_i),
///   lower     {M_nu}_ij = 1/2 tr(C^-1 dC/dnu_i C^-1 dC/dnu_j),
/// plus M_beta = X^T C^-1 X / sigma^2.
struct InfoBlocks {
    Eigen::MatrixXd m_beta;
    Eigen::MatrixXd m_nu;
    Eigen::VectorXd z_nu;
    int n = 0;
    double sigma2 = 1.0;
};

Eigen::MatrixXd m_beta(const KrigingSystem& sys);
Eigen::MatrixXd m_beta(const GpModel&, const GridSpace&, const Design&);

InfoBlocks m_theta(const KrigingSystem& sys);
InfoBlocks m_theta(const GpModel&, const GridSpace&, const Design&);

/// Dispersion of the covariance-parameter estimate. Profiled mode inverts
/// the Schur complement M_nu - z z^T / (2n) (sigma^2-free by construction);
/// KnownSigma2 inverts M_nu. Throws NonEstimableError when singular.
Eigen::MatrixXd v_nu(const InfoBlocks& blocks, VnuMode mode = VnuMode::Profiled);

/// (log|M_beta|, log|M_nu|) with -infinity sentinels for non-PD blocks;
/// search code treats such designs as dominated rather than erroring.
std::pair<double, double> criteria_pair(const KrigingSystem& sys);

/// Compound criterion J_alpha = alpha log|M_beta| + (1-alpha) log|M_nu|.
/// At the endpoints the unused term is dropped, so alpha = 1 is exactly
/// log|M_beta| and alpha = 0 exactly log|M_nu|.
double j_alpha(const KrigingSystem& sys, double alpha);
double j_alpha(const GpModel&, const GridSpace&, const Design&, double alpha);

/// Estimability guard used by the optimizers: designs need at least
/// p + q + 1 points before V_nu is generically invertible.
int min_design_size(const GpModel&, int dim);

}  // namespace ekd
