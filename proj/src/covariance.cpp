// Kernel families and their analytic derivatives with respect to the
// covariance parameters.

#include "ekd/covariance.hpp"

#include <cmath>
#include <stdexcept>

#include "ekd/specfun.hpp"

namespace ekd {

namespace {

double effective_gamma(const KernelFamily& family, const CovParams& params) {
    switch (family.variant) {
        case KernelVariant::Matern32: return 1.5;
        case KernelVariant::Matern52: return 2.5;
        case KernelVariant::MaternGeneral: return params.gamma;
        default: return 0.0;
    }
}

// Scaled kernel argument w and its log-derivative factors.
double scaled_arg(const KernelFamily& family, const CovParams& params, double d) {
    const double g = effective_gamma(family, params);
    if (family.scaling == ArgScaling::AppendixSqrtGamma) return 2.0 * d * std::sqrt(g) / params.rho;
    return d / params.rho;
}

// dc/dw for the Matern families, as a function of w > 0.
double matern_dc_dw(const KernelFamily& family, const CovParams& params, double w) {
    switch (family.variant) {
        case KernelVariant::Matern32:
            return -w * std::exp(-w);
        case KernelVariant::Matern52:
            return -w * (1.0 + w) / 3.0 * std::exp(-w);
        case KernelVariant::MaternGeneral: {
            const double g = params.gamma;
            return -2.0 / gamma_fn(g) * std::pow(0.5 * w, g) * bessel_k(g - 1.0, w);
        }
        default:
            throw std::logic_error("matern_dc_dw: not a Matern family");
    }
}

}  // namespace

void validate_kernel(const KernelFamily& family, const CovParams& params) {
    if (!(params.rho > 0.0)) throw std::invalid_argument("CovParams: rho must be > 0");
    if (family.variant == KernelVariant::MaternGeneral && !(params.gamma > 0.0))
        throw std::invalid_argument("CovParams: gamma must be > 0");
    if (params.free_gamma && family.variant != KernelVariant::MaternGeneral)
        throw std::invalid_argument("CovParams: gamma is fixed for this kernel family");
}

double kernel_value(const KernelFamily& family, const CovParams& params, double d) {
    if (d < 0.0) throw std::domain_error("kernel_value: negative distance");
    if (d == 0.0) return 1.0;
    switch (family.variant) {
        case KernelVariant::Exponential:
            return std::exp(-params.rho * d);
        case KernelVariant::Matern32: {
            const double w = scaled_arg(family, params, d);
            return (1.0 + w) * std::exp(-w);
        }
        case KernelVariant::Matern52: {
            const double w = scaled_arg(family, params, d);
            return (1.0 + w + w * w / 3.0) * std::exp(-w);
        }
        case KernelVariant::MaternGeneral: {
            const double w = scaled_arg(family, params, d);
            const double g = params.gamma;
            return 2.0 / gamma_fn(g) * std::pow(0.5 * w, g) * bessel_k(g, w);
        }
    }
    throw std::logic_error("kernel_value: unknown variant");
}

Eigen::VectorXd kernel_grad_nu(const KernelFamily& family, const CovParams& params, double d) {
    validate_kernel(family, params);
    const int q = params.n_free();
    if (q == 0) throw std::invalid_argument("kernel_grad_nu: no free parameters");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(q);
    if (d < 0.0) throw std::domain_error("kernel_grad_nu: negative distance");
    if (d == 0.0) return out;  // correlation pinned to 1 on the diagonal

    if (family.variant == KernelVariant::Exponential) {
        // c = exp(-nu d), elementary derivative in the rate.
        out(0) = -d * std::exp(-params.rho * d);
        return out;
    }

    const double w = scaled_arg(family, params, d);
    int slot = 0;
    if (params.free_rho) {
        // dw/drho = -w/rho under both scalings.
        out(slot++) = -matern_dc_dw(family, params, w) * w / params.rho;
    }
    if (params.free_gamma) {
        const double g = params.gamma;
        const double pref = 2.0 / gamma_fn(g) * std::pow(0.5 * w, g);
        double dg = pref * (bessel_k_dorder(g, w) +
                            bessel_k(g, w) * (std::log(0.5 * w) - digamma(g)));
        if (family.scaling == ArgScaling::AppendixSqrtGamma) {
            // dw/dgamma = w/(2 gamma) adds the K_{gamma-1} term of the appendix form.
            dg += matern_dc_dw(family, params, w) * w / (2.0 * g);
        }
        out(slot) = dg;
    }
    return out;
}

Eigen::MatrixXd cov_matrix(const KernelFamily& family, const CovParams& params,
                           const std::vector<Point>& points) {
    validate_kernel(family, params);
    const int n = static_cast<int>(points.size());
    Eigen::MatrixXd C = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = euclid(points[i], points[j]);
            if (d == 0.0)
                throw std::invalid_argument("cov_matrix: replicated points at rows " +
                                            std::to_string(i) + "," + std::to_string(j));
            C(i, j) = C(j, i) = kernel_value(family, params, d);
        }
    return C;
}

std::vector<Eigen::MatrixXd> cov_matrix_grads(const KernelFamily& family,
                                              const CovParams& params,
                                              const std::vector<Point>& points) {
    validate_kernel(family, params);
    const int n = static_cast<int>(points.size());
    const int q = params.n_free();
    std::vector<Eigen::MatrixXd> out(q, Eigen::MatrixXd::Zero(n, n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = euclid(points[i], points[j]);
            const Eigen::VectorXd g = kernel_grad_nu(family, params, d);
            for (int k = 0; k < q; ++k) out[k](i, j) = out[k](j, i) = g(k);
        }
    return out;
}

Eigen::VectorXd cross_cov(const KernelFamily& family, const CovParams& params,
                          const std::vector<Point>& design_points, const Point& x,
                          std::vector<Eigen::VectorXd>* grads) {
    const int n = static_cast<int>(design_points.size());
    const int q = params.n_free();
    Eigen::VectorXd c(n);
    if (grads) grads->assign(q, Eigen::VectorXd::Zero(n));
    for (int i = 0; i < n; ++i) {
        const double d = euclid(design_points[i], x);
        c(i) = kernel_value(family, params, d);
        if (grads) {
            const Eigen::VectorXd g = kernel_grad_nu(family, params, d);
            for (int k = 0; k < q; ++k) (*grads)[k](i) = g(k);
        }
    }
    return c;
}

}  // namespace ekd
