#pragma once

#include <cmath>
#include <limits>

namespace intprior {

inline constexpr double kProbFloor = 1e-300;  // clamp before logarithms

inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double log_choose(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline double standard_normal_pdf(double x) {
    static const double kInvSqrt2Pi = 0.3989422804014326779;
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

inline double standard_normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.70710678118654752440);
}

// Wichura's AS 241 (PPND16) rational approximation, |error| < 1e-15.
double standard_normal_quantile(double p);

// Regularized incomplete gamma Q(a,x) = Gamma(a,x)/Gamma(a); series/continued
// fraction split at x = a+1.
double regularized_gamma_q(double a, double x);

inline double chi_squared_sf(double x, double dof) {
    return regularized_gamma_q(0.5 * dof, 0.5 * x);
}

// log(1 + e^x) without overflow
inline double log1p_exp(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

inline double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

}  // namespace intprior
