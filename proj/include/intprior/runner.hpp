#pragma once

#include <cstdint>
#include <vector>

#include "intprior/design.hpp"
#include "intprior/estimators.hpp"
#include "intprior/sampler.hpp"

namespace intprior {

// A multi-chain experiment: C independent chains of length T, one Bayes factor
// estimate per chain, pooled across chains. Chain i draws from seed stream 2i,
// its importance-sampling stage from stream 2i+1.
struct RunPlan {
    LinkSpec link;
    int chains = 1;
    long T = 1000;
    long burn_in = -1;  // -1: 10% of T
    std::uint64_t seed = 0;
    BfMethod method = BfMethod::importance_kde;
    long T_is = -1;     // -1: same as T
    int threads = 0;    // 0: hardware concurrency
    double bandwidth_scale = 1.0;
};

struct TestRunResult {
    std::vector<BayesFactorEstimate> per_chain;
    PooledEstimate pooled;  // count == 0 when chains < 2
    double seconds = 0.0;
};

TestRunResult run_test(const DesignResult& design, const RunPlan& plan);

// The chain initial point: the M2 maximum likelihood estimate, falling back
// to the restriction-safe zero start when the fit fails.
Eigen::VectorXd default_initial_theta(const DesignResult& design, LinkSpec link);

}  // namespace intprior
