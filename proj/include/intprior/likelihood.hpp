#pragma once

#include <Eigen/Dense>

#include "intprior/dataset.hpp"
#include "intprior/link.hpp"

namespace intprior {

// Bernoulli log likelihood sum_i [y_i log p_i + (1-y_i) log(1-p_i)] with
// p_i = g^{-1}(x_i theta). Probabilities are clamped away from {0,1} before
// the logarithm, so the result is never NaN; a restriction-violating theta
// under the log link yields -inf.
double log_likelihood(const Dataset& data, const Eigen::VectorXd& theta,
                      const LinkSpec& link);

// Same, for a design/response pair that is not a full Dataset (used for the
// reduced model M1 over its free columns).
double log_likelihood(const Eigen::MatrixXd& X, const Eigen::VectorXi& y,
                      const Eigen::VectorXd& theta, const LinkSpec& link);

}  // namespace intprior
