#pragma once

#include <vector>

#include <Eigen/Dense>

#include "intprior/dataset.hpp"
#include "intprior/link.hpp"
#include "intprior/sampler.hpp"

namespace intprior {

// Exact desk-scale ground truth for k = 2, k0 = 1 designs with two distinct
// rows (x_a, 1) and (x_b, 1). Because every design row's success probability
// under a step-2/step-4 posterior is the Beta draw itself, the embedded
// training-sample chain has closed-form Beta-binomial transition kernels and
// the Bayes factor reduces to finite mixtures of Beta-binomial marginals.
struct FiniteChainSpec {
    double x_a = 0.0;
    double x_b = 1.0;
    int n_a = 3;         // replications of each distinct row (= N2 bounds), <= 10
    int n_b = 3;
    int successes_a = 1; // observed y totals per distinct row
    int successes_b = 2;
    LinkKind link = LinkKind::logit;  // any link except log; the exact values
                                      // are link-free, the link matters only
                                      // for the simulation cross-checks
};

void validate_spec(const FiniteChainSpec& spec);

// z2 outcome, keyed by the distinct row it touches: (q_a, s_a, q_b, s_b).
struct Z2State {
    int q_a, s_a, q_b, s_b;
};

std::vector<Z2State> z2_state_space(const FiniteChainSpec& spec);

// Index of a sampler-produced z2 training sample in z2_state_space order.
// X must be the oracle dataset's design (rows 0..n_a-1 are row a).
int z2_state_index(const FiniteChainSpec& spec, const TrainingSample& z2);

// Row-stochastic transition matrix of the embedded z2 chain; strictly
// positive entries.
Eigen::MatrixXd exact_transition_matrix(const FiniteChainSpec& spec);

// Stationary distribution of the z2 chain, computed through the collapsed z1
// chain (dense solve); agrees with the transition matrix's stationary vector.
Eigen::VectorXd exact_stationary_vector(const FiniteChainSpec& spec);

// Exact log B21 for the spec's data under the integral priors.
double exact_log_bayes_factor(const FiniteChainSpec& spec);

// The expanded two-row Dataset (n_a + n_b Bernoulli rows).
Dataset oracle_dataset(const FiniteChainSpec& spec);

// Stationary vector of a row-stochastic matrix by dense linear solve.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& P);

}  // namespace intprior
