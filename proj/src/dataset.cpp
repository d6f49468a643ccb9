#include "intprior/dataset.hpp"

#include <cmath>
#include <stdexcept>

#include "intprior/likelihood.hpp"
#include "intprior/math.hpp"

namespace intprior {

Dataset make_dataset(Eigen::MatrixXd X, Eigen::VectorXi y,
                     std::vector<std::string> column_names) {
    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();
    if (n == 0 || k == 0) throw std::invalid_argument("dataset: empty design matrix");
    if (y.size() != n) throw std::invalid_argument("dataset: response length != row count");
    if (static_cast<Eigen::Index>(column_names.size()) != k)
        throw std::invalid_argument("dataset: column name count != column count");
    if (n < k) throw std::invalid_argument("dataset: fewer rows than coefficients");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (y[i] != 0 && y[i] != 1)
            throw std::invalid_argument("dataset: response must be 0/1 at row " + std::to_string(i));
        if (X(i, k - 1) != 1.0)
            throw std::invalid_argument("dataset: last column must be the intercept (all ones)");
        for (Eigen::Index j = 0; j < k; ++j) {
            if (!std::isfinite(X(i, j)))
                throw std::invalid_argument("dataset: non-finite design entry at row " + std::to_string(i));
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < k) throw std::invalid_argument("dataset: design matrix is rank deficient");
    return Dataset{std::move(X), std::move(y), std::move(column_names)};
}

void validate_hypothesis(const HypothesisTest& test, Eigen::Index k) {
    if (test.k0 < 1 || test.k0 > k - 1)
        throw std::invalid_argument("hypothesis: k0 must lie in [1, k-1]");
}

const char* method_name(BfMethod m) {
    switch (m) {
        case BfMethod::ergodic: return "ergodic";
        case BfMethod::importance_kde: return "importance_kde";
        case BfMethod::importance_rb: return "importance_rb";
        case BfMethod::bic: return "bic";
    }
    return "?";
}

BfMethod parse_method(const std::string& name) {
    if (name == "ergodic") return BfMethod::ergodic;
    if (name == "importance_kde") return BfMethod::importance_kde;
    if (name == "importance_rb") return BfMethod::importance_rb;
    if (name == "bic") return BfMethod::bic;
    throw std::invalid_argument("unknown estimator method: " + name);
}

double posterior_probability(double log_bf21) {
    if (std::isnan(log_bf21)) throw std::invalid_argument("posterior_probability: NaN log Bayes factor");
    return logistic(log_bf21);
}

BayesFactorEstimate make_estimate(double log_bf21, BfMethod method, long T,
                                  double mc_std_error) {
    BayesFactorEstimate e;
    e.log_bf21 = log_bf21;
    e.method = method;
    e.T = T;
    e.mc_std_error = mc_std_error;
    e.posterior_prob_m2 = posterior_probability(log_bf21);
    return e;
}

double log_likelihood(const Eigen::MatrixXd& X, const Eigen::VectorXi& y,
                      const Eigen::VectorXd& theta, const LinkSpec& link) {
    if (theta.size() != X.cols())
        throw std::invalid_argument("log_likelihood: coefficient length != column count");
    const Eigen::VectorXd eta = X * theta;
    double ll = 0.0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        if (!link.eta_in_domain(eta[i])) return -std::numeric_limits<double>::infinity();
        const double p = link.inverse(eta[i]);
        if (y[i] == 1) {
            ll += std::log(std::max(p, kProbFloor));
        } else {
            ll += std::log(std::max(1.0 - p, kProbFloor));
        }
    }
    return ll;
}

double log_likelihood(const Dataset& data, const Eigen::VectorXd& theta,
                      const LinkSpec& link) {
    return log_likelihood(data.X, data.y, theta, link);
}

}  // namespace intprior
