#pragma once

#include <Eigen/Dense>
#include <optional>

#include "ekd/covariance.hpp"
#include "ekd/grid.hpp"

namespace ekd {

enum class TrendBasis { Constant, Linear };

int trend_size(TrendBasis basis, int dim);
Eigen::VectorXd trend_vector(TrendBasis basis, const Point& x);

/// Which dispersion matrix enters the corrected variance: Profiled treats
/// sigma^2 as estimated alongside nu (V = [M_nu - z z^T/(2n)]^{-1}), while
/// KnownSigma2 uses M_nu^{-1} directly.
enum class VnuMode { Profiled, KnownSigma2 };

/// Random-field model: linear trend f(x)^T beta plus a stationary Gaussian
/// term with variance sigma2 and correlation given by the kernel. beta is
/// only needed for prediction/simulation, never by the design criteria.
struct GpModel {
    TrendBasis trend = TrendBasis::Constant;
    std::optional<Eigen::VectorXd> beta;
    double sigma2 = 1.0;
    KernelFamily family;
    CovParams params;
};

}  // namespace ekd
