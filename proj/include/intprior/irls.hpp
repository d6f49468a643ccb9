#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "intprior/dataset.hpp"
#include "intprior/link.hpp"

namespace intprior {

class irls_error : public std::runtime_error {
  public:
    explicit irls_error(const std::string& what) : std::runtime_error(what) {}
};

struct IrlsFit {
    Eigen::VectorXd theta;
    Eigen::MatrixXd covariance;  // inverse Fisher information at theta
    double log_lik = 0.0;
    int iterations = 0;
};

// Fisher-scoring maximum likelihood for the Bernoulli regression with link g.
// Converges when the score's infinity norm drops below 1e-8 (at most 100
// iterations). Throws irls_error on separation (|theta_j| > 1e3), failure to
// converge, or a singular information matrix.
IrlsFit irls_fit(const Eigen::MatrixXd& X, const Eigen::VectorXi& y, LinkSpec link);

// Analytic score vector d/dtheta log-likelihood (exposed for testing).
Eigen::VectorXd irls_score(const Eigen::MatrixXd& X, const Eigen::VectorXi& y,
                           const Eigen::VectorXd& theta, LinkSpec link);

// Two-sided Wald p-values from the fit.
Eigen::VectorXd wald_p_values(const IrlsFit& fit);

}  // namespace intprior
