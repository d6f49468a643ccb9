#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace intprior {

// Observed data: design matrix X with the intercept column of ones last,
// binary responses y. Immutable after construction.
struct Dataset {
    Eigen::MatrixXd X;
    Eigen::VectorXi y;
    std::vector<std::string> column_names;

    Eigen::Index n() const { return X.rows(); }
    Eigen::Index k() const { return X.cols(); }
};

// Validates the Dataset invariants (intercept column, binary y, n >= k,
// full column rank) and returns the dataset. Throws std::invalid_argument.
Dataset make_dataset(Eigen::MatrixXd X, Eigen::VectorXi y,
                     std::vector<std::string> column_names);

// Null hypothesis: the first k0 coefficients are pinned to zero under M1.
struct HypothesisTest {
    int k0 = 1;

    int k1(int k) const { return k - k0; }
};

void validate_hypothesis(const HypothesisTest& test, Eigen::Index k);

enum class BfMethod { ergodic, importance_kde, importance_rb, bic };

const char* method_name(BfMethod m);
BfMethod parse_method(const std::string& name);

struct BayesFactorEstimate {
    double log_bf21 = 0.0;
    BfMethod method = BfMethod::importance_kde;
    long T = 0;
    double mc_std_error = 0.0;
    double posterior_prob_m2 = 0.5;
};

// B/(1+B) evaluated stably from log B.
double posterior_probability(double log_bf21);

BayesFactorEstimate make_estimate(double log_bf21, BfMethod method, long T,
                                  double mc_std_error);

}  // namespace intprior
