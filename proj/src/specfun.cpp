// Scalar special functions backing the Matern covariance and its
// order derivative.

#include "ekd/specfun.hpp"

#include <cmath>
#include <string>

namespace ekd {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos approximation, g = 7, 9 terms.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

// Leading coefficients of 1/Gamma(1+x) = sum a_k x^k (A&S 6.1.34 shifted).
constexpr double kRGammaA1 = 0.57721566490153286061;
constexpr double kRGammaA2 = -0.65587807152025388108;
constexpr double kRGammaA3 = -0.04200263503409523553;
constexpr double kRGammaA4 = 0.16653861138229148950;
constexpr double kRGammaA5 = -0.04219773455554433675;

// sin(pi*x) / cos(pi*x) without large-argument reduction error.
double sinpi(double x) {
    const double n = std::round(x);
    const double s = std::sin(kPi * (x - n));
    return (std::fmod(std::abs(n), 2.0) == 1.0) ? -s : s;
}

double cospi(double x) {
    const double n = std::round(x);
    const double c = std::cos(kPi * (x - n));
    return (std::fmod(std::abs(n), 2.0) == 1.0) ? -c : c;
}

// 1/Gamma(x) for any real x; zero at the poles.
double rgamma(double x) {
    if (x > 0.0) return 1.0 / gamma_fn(x);
    if (x == std::round(x)) return 0.0;
    return sinpi(x) * gamma_fn(1.0 - x) / kPi;
}

// Gamma1(mu) = [1/Gamma(1-mu) - 1/Gamma(1+mu)] / (2 mu), |mu| <= 1/2.
// The direct form cancels near mu = 0; switch to the Taylor expansion there.
double gamma_one(double mu) {
    if (std::abs(mu) < 0.01) {
        const double m2 = mu * mu;
        return -(kRGammaA1 + m2 * (kRGammaA3 + m2 * kRGammaA5));
    }
    return (1.0 / gamma_fn(1.0 - mu) - 1.0 / gamma_fn(1.0 + mu)) / (2.0 * mu);
}

// Gamma2(mu) = [1/Gamma(1-mu) + 1/Gamma(1+mu)] / 2 (no cancellation).
double gamma_two(double mu) {
    return 0.5 * (1.0 / gamma_fn(1.0 - mu) + 1.0 / gamma_fn(1.0 + mu));
}

// Temme's series for K_mu(z) and K_{mu+1}(z), |mu| <= 1/2, 0 < z <= 2.
void bessel_k_small(double mu, double z, double& kmu, double& kmu1) {
    const double lnhalf = std::log(0.5 * z);
    const double sigma = -mu * lnhalf;  // mu * ln(2/z)
    const double pimu = kPi * mu;
    const double fact =
        (std::abs(pimu) < 1e-8) ? 1.0 + pimu * pimu / 6.0 : pimu / std::sin(pimu);
    const double shs =
        (std::abs(sigma) < 1e-8) ? 1.0 + sigma * sigma / 6.0 : std::sinh(sigma) / sigma;

    double f = fact * (std::cosh(sigma) * gamma_one(mu) - lnhalf * shs * gamma_two(mu));
    double p = 0.5 * std::exp(sigma) * gamma_fn(1.0 + mu);
    double q = 0.5 * std::exp(-sigma) * gamma_fn(1.0 - mu);
    const double zz = 0.25 * z * z;
    double c = 1.0;
    double sum = f;
    double sum1 = p;
    for (int k = 1; k <= 500; ++k) {
        f = (k * f + p + q) / (k * k - mu * mu);
        p /= (k - mu);
        q /= (k + mu);
        c *= zz / k;
        const double del = c * f;
        sum += del;
        sum1 += c * (p - k * f);
        if (std::abs(del) < std::abs(sum) * 1e-17) break;
    }
    kmu = sum;
    kmu1 = sum1 * (2.0 / z);
}

// Steed/Thompson-Barnett continued fraction for K_mu(z), |mu| <= 1/2, z > 2.
void bessel_k_large(double mu, double z, double& kmu, double& kmu1) {
    const double a1 = 0.25 - mu * mu;
    double b = 2.0 * (1.0 + z);
    double d = 1.0 / b;
    double h = d, dh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * dh;
    bool converged = false;
    for (int i = 2; i <= 20000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qn = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qn;
        q += c * qn;
        b += 2.0;
        d = 1.0 / (b + a * d);
        dh = (b * d - 1.0) * dh;
        h += dh;
        const double ds = q * dh;
        s += ds;
        if (std::abs(ds) < std::abs(s) * 1e-16) {
            converged = true;
            break;
        }
    }
    if (!converged) throw ConvergenceError("bessel_k: continued fraction did not converge");
    h *= a1;
    kmu = std::sqrt(kPi / (2.0 * z)) * std::exp(-z) / s;
    kmu1 = kmu * (mu + z + 0.5 - h) / z;
}

// psi(x)/Gamma(x); entire, so negative arguments go through reflection.
double psi_over_gamma(double x) {
    if (x > 0.0) {
        if (x > 250.0) return 0.0;  // 1/Gamma underflows long before this
        return digamma(x) / gamma_fn(x);
    }
    return (digamma(1.0 - x) * sinpi(x) - kPi * cospi(x)) * gamma_fn(1.0 - x) / kPi;
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: requires x > 0, got " + std::to_string(x));
    if (x < 0.5) return gamma_fn(x + 1.0) / x;
    const double zm1 = x - 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (zm1 + i);
    const double t = zm1 + kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, zm1 + 0.5) * std::exp(-t) * acc;
}

double digamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("digamma: requires x > 0, got " + std::to_string(x));
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double w = 1.0 / (x * x);
    // Bernoulli tail through B14.
    const double tail =
        w * (1.0 / 12 +
             w * (-1.0 / 120 +
                  w * (1.0 / 252 +
                       w * (-1.0 / 240 +
                            w * (1.0 / 132 + w * (-691.0 / 32760 + w * (1.0 / 12)))))));
    return acc + std::log(x) - 0.5 / x - tail;
}

double bessel_i(double order, double z) {
    if (!(z > 0.0)) throw std::domain_error("bessel_i: requires z > 0, got " + std::to_string(z));
    if (order < 0.0 && order == std::round(order)) order = -order;  // I_{-n} = I_n
    const double half = 0.5 * z;
    const double zz = half * half;
    long double term = std::pow(half, order) * rgamma(order + 1.0);
    long double sum = term;
    const int kmin = static_cast<int>(half + std::abs(order)) + 2;
    for (int k = 1; k <= 1000; ++k) {
        term *= zz / (k * (order + k));
        sum += term;
        if (k >= kmin && std::abs(static_cast<double>(term)) <
                             std::abs(static_cast<double>(sum)) * 1e-17)
            return static_cast<double>(sum);
    }
    throw ConvergenceError("bessel_i: series did not converge");
}

double bessel_k(double order, double z) {
    if (!(z > 0.0)) throw std::domain_error("bessel_k: requires z > 0, got " + std::to_string(z));
    order = std::abs(order);  // K_{-v} = K_v
    const int steps = static_cast<int>(order + 0.5);
    const double mu = order - steps;  // in [-1/2, 1/2]
    double kmu, kmu1;
    if (z <= 2.0)
        bessel_k_small(mu, z, kmu, kmu1);
    else
        bessel_k_large(mu, z, kmu, kmu1);
    if (steps == 0) return kmu;
    double km = kmu, k0 = kmu1;
    for (int j = 1; j < steps; ++j) {
        const double kp = km + 2.0 * (mu + j) / z * k0;
        km = k0;
        k0 = kp;
    }
    return k0;
}

double bessel_k_dorder(double order, double z, SeriesControl ctrl) {
    if (!(z > 0.0))
        throw std::domain_error("bessel_k_dorder: requires z > 0, got " + std::to_string(z));
    if (!(ctrl.rel_tol > 0.0) || ctrl.max_terms < 1)
        throw std::invalid_argument("bessel_k_dorder: bad SeriesControl");

    const double rounded = std::round(order);
    if (std::abs(order - rounded) < 1e-6) {
        // Integer order: dK/dv at v = n is a finite sum over K_0..K_{n-1}.
        const int n = static_cast<int>(rounded);
        if (n == 0) return 0.0;  // K_v = K_{-v} forces a stationary point at 0
        const double half = 0.5 * z;
        double powk = 1.0, kfact = 1.0;
        double sum = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k > 0) {
                powk *= half;
                kfact *= k;
            }
            sum += powk * bessel_k(static_cast<double>(k), z) / ((n - k) * kfact);
        }
        return 0.5 * gamma_fn(n + 1.0) * std::pow(half, -n) * sum;
    }

    // Non-integer order: pi*csc(v*pi)/2 * [ -2 cos(v*pi) K_v
    //   - ln(z/2)(I_{-v} + I_v) + sum_k (h(k-v+1)(z/2)^{2k-v}
    //   + h(k+v+1)(z/2)^{2k+v}) / k! ],  h = psi/Gamma.
    const double half = 0.5 * z;
    const double lnhalf = std::log(half);
    const double kv = bessel_k(order, z);
    const double iv = bessel_i(order, z);
    const double imv = bessel_i(-order, z);
    long double bracket = -2.0L * static_cast<long double>(cospi(order)) * kv -
                          static_cast<long double>(lnhalf) * (imv + iv);

    long double pm = std::pow(half, -order);
    long double pp = std::pow(half, order);
    long double kfact = 1.0L;
    const long double zz = static_cast<long double>(half) * half;
    const int kmin = static_cast<int>(half) + 1;
    bool converged = false;
    for (int k = 0; k < ctrl.max_terms; ++k) {
        if (k > 0) {
            kfact *= k;
            pm *= zz;
            pp *= zz;
        }
        const long double term =
            (static_cast<long double>(psi_over_gamma(k - order + 1.0)) * pm +
             static_cast<long double>(psi_over_gamma(k + order + 1.0)) * pp) /
            kfact;
        bracket += term;
        const double scale = std::max(std::abs(static_cast<double>(bracket)), 1e-300);
        if (k >= kmin && std::abs(static_cast<double>(term)) < ctrl.rel_tol * scale) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw ConvergenceError("bessel_k_dorder: series did not converge in " +
                               std::to_string(ctrl.max_terms) + " terms");
    return 0.5 * kPi / sinpi(order) * static_cast<double>(bracket);
}

}  // namespace ekd
