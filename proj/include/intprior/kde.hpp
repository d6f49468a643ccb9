#pragma once

#include <Eigen/Dense>

namespace intprior {

// Product-Gaussian kernel density estimate over the free coordinates of a
// chain trace. Bandwidths follow the multivariate Scott/Silverman rule
// h_j = sigma_j * (4 / ((d+2) T))^(1/(d+4)).
struct KdeModel {
    Eigen::MatrixXd support;     // T x d
    Eigen::VectorXd bandwidths;  // d
};

// Thins to at most max_support points (uniform stride), then applies the
// bandwidth rule. Requires >= 100 draws and positive variance per coordinate.
KdeModel kde_fit(const Eigen::MatrixXd& draws, Eigen::Index max_support = 50000);

double kde_log_pdf(const KdeModel& model, const Eigen::VectorXd& x);

inline double kde_pdf(const KdeModel& model, const Eigen::VectorXd& x) {
    return std::exp(kde_log_pdf(model, x));
}

}  // namespace intprior
