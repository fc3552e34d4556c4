#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ekd/grid.hpp"

namespace ekd {

enum class KernelVariant { Exponential, Matern32, Matern52, MaternGeneral };

/// Argument convention for the Matern families: Plain uses d/rho,
/// AppendixSqrtGamma uses 2*d*sqrt(gamma)/rho. Both give correlation 1 at
/// d = 0; derivative formulas are transported between them by the chain
/// rule on the argument.
enum class ArgScaling { Plain, AppendixSqrtGamma };

struct KernelFamily {
    KernelVariant variant = KernelVariant::Matern32;
    ArgScaling scaling = ArgScaling::Plain;
};

/// Covariance parameters nu = (rho, gamma) with flags marking which are
/// estimated. For the exponential family the rho slot is the decay rate,
/// i.e. c(d) = exp(-rho * d), matching the rate parametrization of that
/// kernel; gamma is ignored outside MaternGeneral.
struct CovParams {
    double rho = 1.0;
    double gamma = 1.5;
    bool free_rho = true;
    bool free_gamma = false;

    int n_free() const { return (free_rho ? 1 : 0) + (free_gamma ? 1 : 0); }
};

/// Correlation at distance d; exactly 1 at d = 0.
double kernel_value(const KernelFamily& family, const CovParams& params, double d);

/// Analytic (dc/drho, dc/dgamma) restricted to the free components, in
/// (rho, gamma) order. Zero vector at d = 0.
Eigen::VectorXd kernel_grad_nu(const KernelFamily& family, const CovParams& params, double d);

/// Correlation matrix C_nu over pairwise-distinct points (unit diagonal).
/// Throws std::invalid_argument on replicated points.
Eigen::MatrixXd cov_matrix(const KernelFamily& family, const CovParams& params,
                           const std::vector<Point>& points);

/// One symmetric dC_nu/dnu_i matrix per free component (zero diagonals).
std::vector<Eigen::MatrixXd> cov_matrix_grads(const KernelFamily& family,
                                              const CovParams& params,
                                              const std::vector<Point>& points);

/// Covariance vector c_n between x and the design points, and optionally
/// its per-free-component gradients.
Eigen::VectorXd cross_cov(const KernelFamily& family, const CovParams& params,
                          const std::vector<Point>& design_points, const Point& x,
                          std::vector<Eigen::VectorXd>* grads = nullptr);

void validate_kernel(const KernelFamily& family, const CovParams& params);

}  // namespace ekd
