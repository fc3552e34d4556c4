#include "ekd/fitting.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ekd/linalg.hpp"

namespace ekd {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

std::vector<int> FieldData::observed_indices() const {
    std::vector<int> out;
    for (int i = 0; i < grid.size(); ++i)
        if (mask.empty() || mask[i]) out.push_back(i);
    return out;
}

GlsResult gls_given_nu(const FieldData& data, TrendBasis trend, const KernelFamily& family,
                       double rho, double gamma) {
    if (data.values.size() != static_cast<std::size_t>(data.grid.size()))
        throw std::invalid_argument("gls_given_nu: value count does not match the grid");
    const std::vector<int> obs = data.observed_indices();
    const int n = static_cast<int>(obs.size());
    const int p = trend_size(trend, data.grid.dim);
    if (n <= p) throw FitError("gls_given_nu: fewer observations than trend coefficients");

    std::vector<Point> pts;
    Eigen::VectorXd y(n);
    Eigen::MatrixXd X(n, p);
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        pts.push_back(data.grid.candidates[obs[i]]);
        y(i) = data.values[obs[i]];
        if (!std::isfinite(y(i))) throw std::invalid_argument("gls_given_nu: non-finite value");
        X.row(i) = trend_vector(trend, pts.back()).transpose();
    }

    CovParams params;
    params.rho = rho;
    params.gamma = gamma;
    const JitteredChol jc = chol_with_jitter(cov_matrix(family, params, pts));

    const Eigen::MatrixXd CiX = jc.llt.solve(X);
    const Eigen::MatrixXd G = X.transpose() * CiX;
    Eigen::LLT<Eigen::MatrixXd> g_llt(G);
    if (g_llt.info() != Eigen::Success)
        throw FitError("gls_given_nu: rank-deficient trend on the observed points");

    GlsResult out;
    out.beta_hat = g_llt.solve(CiX.transpose() * y);
    const Eigen::VectorXd resid = y - X * out.beta_hat;
    out.sigma2_hat = resid.dot(jc.llt.solve(resid)) / n;
    out.neg_log_lik =
        0.5 * (n * std::log(kTwoPi * out.sigma2_hat) + logdet(jc.llt) + n);
    return out;
}

FitResult profile_ml(const FieldData& data, TrendBasis trend, const KernelFamily& family,
                     double gamma_fixed, RhoSearch search) {
    if (search.lo <= 0.0 || search.hi <= 0.0) {
        const double diam = data.grid.diameter();
        search.lo = 0.05 * diam;
        search.hi = 2.0 * diam;
    }
    if (!(search.lo < search.hi) || search.grid_points < 2)
        throw std::invalid_argument("profile_ml: bad rho search window");

    auto nll_at = [&](double rho) {
        try {
            return gls_given_nu(data, trend, family, rho, gamma_fixed).neg_log_lik;
        } catch (const std::runtime_error&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    // Coarse stage over log-spaced rho.
    const double llo = std::log(search.lo), lhi = std::log(search.hi);
    int best_i = -1;
    double best_nll = std::numeric_limits<double>::infinity();
    std::vector<double> lrho(search.grid_points);
    for (int i = 0; i < search.grid_points; ++i) {
        lrho[i] = llo + (lhi - llo) * i / (search.grid_points - 1);
        const double v = nll_at(std::exp(lrho[i]));
        if (v < best_nll) {
            best_nll = v;
            best_i = i;
        }
    }
    if (best_i < 0) throw FitError("profile_ml: likelihood undefined on every rho candidate");

    // Golden-section refinement in log space over the bracketing interval.
    double a = lrho[std::max(0, best_i - 1)];
    double b = lrho[std::min(search.grid_points - 1, best_i + 1)];
    const double gr = 0.61803398874989484820;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = nll_at(std::exp(x1)), f2 = nll_at(std::exp(x2));
    while (b - a > search.rel_tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = nll_at(std::exp(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = nll_at(std::exp(x2));
        }
    }
    const double rho_hat = std::exp(0.5 * (a + b));
    const GlsResult gls = gls_given_nu(data, trend, family, rho_hat, gamma_fixed);

    FitResult out;
    out.beta_hat = gls.beta_hat;
    out.sigma2_hat = gls.sigma2_hat;
    out.rho_hat = rho_hat;
    out.gamma_fixed = gamma_fixed;
    out.neg_log_lik = gls.neg_log_lik;
    return out;
}

}  // namespace ekd
