#pragma once

#include <Eigen/Dense>

namespace ekd {

/// Cholesky factorization with the project jitter policy: on failure retry
/// with +1e-10 then +1e-8 on the diagonal, then throw. `jitter` records what
/// was added; the factored matrix is returned so that callers stay
/// consistent with it.
struct JitteredChol {
    Eigen::LLT<Eigen::MatrixXd> llt;
    Eigen::MatrixXd matrix;  // the (possibly jittered) matrix actually factored
    double jitter = 0.0;
};

JitteredChol chol_with_jitter(Eigen::MatrixXd m);

/// log|M| from an existing factorization.
double logdet(const Eigen::LLT<Eigen::MatrixXd>& llt);

}  // namespace ekd
