#include "ekd/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace ekd {

JitteredChol chol_with_jitter(Eigen::MatrixXd m) {
    static constexpr double kJitters[] = {0.0, 1e-10, 1e-8};
    for (double j : kJitters) {
        Eigen::MatrixXd trial = m;
        if (j > 0.0) trial.diagonal().array() += j;
        Eigen::LLT<Eigen::MatrixXd> llt(trial);
        if (llt.info() == Eigen::Success) return {std::move(llt), std::move(trial), j};
    }
    throw std::runtime_error("chol_with_jitter: matrix not positive definite after jitter");
}

double logdet(const Eigen::LLT<Eigen::MatrixXd>& llt) {
    double s = 0.0;
    const auto& L = llt.matrixLLT();
    for (int i = 0; i < L.rows(); ++i) s += std::log(L(i, i));
    return 2.0 * s;
}

}  // namespace ekd
