#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ekd/errors.hpp"
#include "ekd/model.hpp"

namespace ekd {

/// Field observations on a grid; an empty mask means every candidate point
/// is observed, otherwise mask[i] != 0 marks the observed ones.
struct FieldData {
    GridSpace grid;
    std::vector<double> values;
    std::vector<std::uint8_t> mask;

    std::vector<int> observed_indices() const;
};

struct GlsResult {
    Eigen::VectorXd beta_hat;
    double sigma2_hat = 0.0;
    double neg_log_lik = 0.0;
};

struct FitResult {
    Eigen::VectorXd beta_hat;
    double sigma2_hat = 0.0;
    double rho_hat = 0.0;
    double gamma_fixed = 0.0;
    double neg_log_lik = 0.0;
};

/// Closed-form profile step for fixed covariance parameters:
/// beta_hat = (X^T C^-1 X)^-1 X^T C^-1 y, sigma2_hat = r^T C^-1 r / n, and
/// the profiled Gaussian negative log-likelihood.
GlsResult gls_given_nu(const FieldData& data, TrendBasis trend, const KernelFamily& family,
                       double rho, double gamma);

struct RhoSearch {
    double lo = 0.0;       // defaults derived from the grid diameter when 0
    double hi = 0.0;
    int grid_points = 40;  // log-spaced coarse stage
    double rel_tol = 1e-4; // golden-section stopping width
};

/// Profile maximum likelihood over rho with the smoothness held fixed:
/// log-spaced grid search followed by golden-section refinement.
FitResult profile_ml(const FieldData& data, TrendBasis trend, const KernelFamily& family,
                     double gamma_fixed, RhoSearch search = {});

}  // namespace ekd
