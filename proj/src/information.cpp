#include "ekd/information.hpp"

#include <cmath>
#include <limits>

#include "ekd/linalg.hpp"

namespace ekd {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

Eigen::MatrixXd m_beta(const KrigingSystem& sys) {
    return sys.gls_normal() / sys.model().sigma2;
}

Eigen::MatrixXd m_beta(const GpModel& m, const GridSpace& g, const Design& d) {
    return m_beta(KrigingSystem::build(m, g, d));
}

InfoBlocks m_theta(const KrigingSystem& sys) {
    const int q = sys.q();
    if (q == 0) throw std::invalid_argument("m_theta: no free covariance parameters");
    InfoBlocks out;
    out.n = sys.n();
    out.sigma2 = sys.model().sigma2;
    out.m_beta = m_beta(sys);
    out.z_nu.resize(q);
    out.m_nu.resize(q, q);

    std::vector<Eigen::MatrixXd> A(q);
    for (int k = 0; k < q; ++k) {
        A[k] = sys.factor().solve(sys.corr_grads()[k]);
        out.z_nu(k) = A[k].trace();
    }
    for (int k = 0; k < q; ++k)
        for (int l = k; l < q; ++l) {
            // tr(A_k A_l) without forming the product
            const double t = (A[k].array() * A[l].transpose().array()).sum();
            out.m_nu(k, l) = out.m_nu(l, k) = 0.5 * t;
        }
    return out;
}

InfoBlocks m_theta(const GpModel& m, const GridSpace& g, const Design& d) {
    return m_theta(KrigingSystem::build(m, g, d));
}

Eigen::MatrixXd v_nu(const InfoBlocks& blocks, VnuMode mode) {
    Eigen::MatrixXd s = blocks.m_nu;
    if (mode == VnuMode::Profiled)
        s -= blocks.z_nu * blocks.z_nu.transpose() / (2.0 * blocks.n);
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() != Eigen::Success || s.diagonal().minCoeff() <= 0.0)
        throw NonEstimableError("v_nu: information for the covariance parameters is singular");
    return llt.solve(Eigen::MatrixXd::Identity(s.rows(), s.cols()));
}

std::pair<double, double> criteria_pair(const KrigingSystem& sys) {
    double cb = kNegInf;
    {
        Eigen::LLT<Eigen::MatrixXd> llt(sys.gls_normal());
        if (llt.info() == Eigen::Success && sys.gls_normal().diagonal().minCoeff() > 0.0) {
            const int p = sys.p();
            cb = logdet(llt) - p * std::log(sys.model().sigma2);
        }
    }
    double cn = kNegInf;
    {
        const InfoBlocks blocks = m_theta(sys);
        Eigen::LLT<Eigen::MatrixXd> llt(blocks.m_nu);
        if (llt.info() == Eigen::Success && blocks.m_nu.diagonal().minCoeff() > 0.0)
            cn = logdet(llt);
    }
    return {cb, cn};
}

double j_alpha(const KrigingSystem& sys, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("j_alpha: alpha outside [0,1]");
    const auto [cb, cn] = criteria_pair(sys);
    if (alpha == 1.0) return cb;
    if (alpha == 0.0) return cn;
    if (!std::isfinite(cb) || !std::isfinite(cn)) return kNegInf;
    return alpha * cb + (1.0 - alpha) * cn;
}

double j_alpha(const GpModel& m, const GridSpace& g, const Design& d, double alpha) {
    return j_alpha(KrigingSystem::build(m, g, d), alpha);
}

int min_design_size(const GpModel& m, int dim) {
    return trend_size(m.trend, dim) + m.params.n_free() + 1;
}

}  // namespace ekd
