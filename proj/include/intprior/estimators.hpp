#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "intprior/irls.hpp"
#include "intprior/kde.hpp"
#include "intprior/sampler.hpp"

namespace intprior {

class estimator_error : public std::runtime_error {
  public:
    explicit estimator_error(const std::string& what) : std::runtime_error(what) {}
};

// Importance density N(theta_hat, 2 * Vhat) over the free coordinates.
struct GaussianImportance {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;
    Eigen::MatrixXd chol_lower;
    double log_norm_const = 0.0;

    Eigen::VectorXd sample(RandomSource& rng) const;
    double log_pdf(const Eigen::VectorXd& x) const;
};

GaussianImportance make_gaussian_importance(const IrlsFit& fit);

// Rao-Blackwell mixture density (1/T) sum_t piN(theta | z^t): the exact
// change-of-variables posterior, averaged over retained training samples.
// design_free maps the z-draws' row indices to rows over the free columns.
class RbPriorDensity {
  public:
    RbPriorDensity(const std::vector<TrainingSample>& z_draws,
                   const Eigen::MatrixXd& design_free, LinkSpec link);

    double log_pdf(const Eigen::VectorXd& theta_free) const;
    Eigen::Index components() const { return static_cast<Eigen::Index>(terms_.size()); }

  private:
    struct Term {
        double constant;               // log|det| - sum log B(a_i, b_i)
        std::vector<int> distinct_id;  // per component row
        std::vector<double> a_minus_1, b_minus_1;
    };
    LinkSpec link_;
    Eigen::MatrixXd distinct_rows_;  // r x d
    std::vector<Term> terms_;
};

// Convenience wrapper matching the operation contract (builds the mixture and
// evaluates once); returns the density value, 0 outside the link restriction.
double rao_blackwell_prior_density(const Eigen::VectorXd& theta_free,
                                   const std::vector<TrainingSample>& z_draws,
                                   const Eigen::MatrixXd& design_free, LinkSpec link);

// log B21 = logsumexp_t log f2(y|theta2^t) - logsumexp_t log f1(y|theta1^t);
// standard error by batch means over 20 batches.
BayesFactorEstimate ergodic_bf(const ChainTrace& trace1, const ChainTrace& trace2,
                               const Dataset& data, LinkSpec link);

struct ImportanceOptions {
    long T_is = -1;        // importance draws; -1: same as chain length
    std::uint64_t seed = 0;
    bool rao_blackwell = false;  // KDE prior estimate otherwise
    int threads = 0;             // 0: hardware concurrency (chunk count is fixed)
    double bandwidth_scale = 1.0;  // multiplies the KDE rule (sensitivity checks)
};

// Marginal-likelihood importance sampling for both models and their ratio.
// Draws come from N(theta_hat_i, 2 Vhat_i); the integral-prior density is the
// trace KDE or the Rao-Blackwell mixture. Restriction-violating draws under
// the log link get zero weight; if every draw is skipped the estimator fails.
BayesFactorEstimate importance_bf(const ChainTrace& trace1, const ChainTrace& trace2,
                                  const ModelContext& ctx, const ImportanceOptions& options);

// Schwarz comparator: (l2 - l1) - (k0/2) log n.
BayesFactorEstimate bic_bf(const Dataset& data, LinkSpec link, int k0);

struct PooledEstimate {
    double mean_posterior_prob = 0.0;
    double sd = 0.0;
    int count = 0;
};

// Across-chain mean and standard deviation of the posterior probability.
// Requires >= 2 estimates sharing one method.
PooledEstimate pooled_estimate(const std::vector<BayesFactorEstimate>& estimates);

}  // namespace intprior
