#pragma once

#include "ekd/errors.hpp"

namespace ekd {

/// Truncation control for the order-derivative series of K_gamma.
struct SeriesControl {
    double rel_tol = 1e-14;
    int max_terms = 200;
};

/// Gamma function, x > 0. Relative error < 1e-12 on (0, 50].
double gamma_fn(double x);

/// Digamma (polygamma of order 0), x > 0. Relative error < 1e-10.
double digamma(double x);

/// Modified Bessel function of the first kind I_order(z), z > 0,
/// evaluated by the ascending series. Handles negative real orders.
double bessel_i(double order, double z);

/// Modified Bessel function of the second kind K_order(z), z > 0.
/// Relative error < 1e-9 for order in [0, 10], z in (0, 50].
double bessel_k(double order, double z);

/// Derivative of K with respect to its order, evaluated at (order, z).
///
/// Uses the finite sum over K_0..K_{n-1} when order is within 1e-6 of an
/// integer n (the reflection series is singular there), and otherwise the
/// csc(pi*order) series built from I_{+-order} and digamma/gamma ratios,
/// truncated under ctrl. Throws ConvergenceError when max_terms is hit
/// before the term tolerance.
double bessel_k_dorder(double order, double z, SeriesControl ctrl = {});

}  // namespace ekd
