#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "intprior/dataset.hpp"
#include "intprior/link.hpp"
#include "intprior/replication.hpp"
#include "intprior/rng.hpp"

namespace intprior {

// Raised when the restriction-rejection loop (log link) exhausts its retry cap.
class degenerate_restriction_error : public std::runtime_error {
  public:
    explicit degenerate_restriction_error(const std::string& what) : std::runtime_error(what) {}
};

// An imaginary training sample over m selected design rows: replication draws
// q_i, success counts s_i (Remark-style binomial aggregation of the q_i
// Bernoulli outcomes), and the full-rank submatrix used for the change of
// variables (R2 for step 1/2, S for step 3/4).
struct TrainingSample {
    std::vector<int> row_indices;
    Eigen::MatrixXd submatrix;   // m x m
    Eigen::VectorXi q;
    Eigen::VectorXi successes;

    Eigen::Index m() const { return submatrix.rows(); }
    double y_hat(Eigen::Index i) const { return double(successes[i]) / double(q[i]); }
};

struct ChainState {
    Eigen::VectorXd theta1;  // leading k0 entries identically zero
    Eigen::VectorXd theta2;
};

struct ChainTrace {
    Eigen::MatrixXd theta1_draws;  // T x k
    Eigen::MatrixXd theta2_draws;  // T x k
    std::vector<TrainingSample> z1_draws;  // retained only on request
    std::vector<TrainingSample> z2_draws;
    std::uint64_t seed = 0;

    Eigen::Index T() const { return theta2_draws.rows(); }
    Eigen::Index k() const { return theta2_draws.cols(); }
};

// Everything the transition needs: data, hypothesis split, link, and the two
// replication indices (N1 keyed on columns k0+1..k, N2 on all columns).
struct ModelContext {
    const Dataset* data = nullptr;
    HypothesisTest test;
    LinkSpec link;
    ReplicationIndex n1;
    ReplicationIndex n2;
    Eigen::MatrixXd design_m1;  // columns k0..k-1 of X
    double pivot_tol_m1 = 0.0;  // 1e-10 * max|entry| of the restricted matrix
    double pivot_tol_m2 = 0.0;

    const Eigen::MatrixXd& X() const { return data->X; }
    int k() const { return static_cast<int>(data->k()); }
    int k0() const { return test.k0; }
    int k1() const { return k() - k0(); }
};

ModelContext make_model_context(const Dataset& data, const HypothesisTest& test, LinkSpec link);

struct RowSelection {
    std::vector<int> row_indices;
    Eigen::MatrixXd submatrix;  // rows restricted to the requested columns
};

// First m rows of a uniformly random permutation of X's rows whose restriction
// to `columns` is linearly independent; rows that do not increase rank are
// skipped. Throws std::runtime_error when rank(X[:, columns]) < m.
RowSelection select_full_rank_rows(const Eigen::MatrixXd& X, const std::vector<int>& columns,
                                   int m, double pivot_tol, RandomSource& rng);

// Draws q_i ~ U{1..N(x_i)} and s_i ~ Binomial(q_i, g^{-1}(x_i theta)) for the
// selected rows. theta must satisfy the link restriction on those rows.
TrainingSample simulate_training_sample(const Eigen::VectorXd& theta, const RowSelection& rows,
                                        const ReplicationIndex& repl, const Eigen::MatrixXd& X,
                                        const LinkSpec& link, RandomSource& rng);

// Draws p_i ~ Beta(q_i yhat_i + 1/2, q_i (1 - yhat_i) + 1/2) and solves
// submatrix * v = g(p). Under the log link the draw is repeated until v keeps
// every row of restriction_design inside the domain (cap 10^6 retries);
// restriction_design may be empty for unrestricted links.
// p_tilde_out, when non-null, receives the accepted Beta draws.
Eigen::VectorXd sample_posterior_coefficients(const TrainingSample& ts, const LinkSpec& link,
                                              const Eigen::MatrixXd& restriction_design,
                                              RandomSource& rng,
                                              Eigen::VectorXd* p_tilde_out = nullptr);

struct TransitionResult {
    Eigen::VectorXd theta1;
    Eigen::VectorXd theta2_prime;
    TrainingSample z1;
    TrainingSample z2;
    Eigen::VectorXd p_tilde1;  // Beta draws behind theta1
    Eigen::VectorXd p_tilde2;  // Beta draws behind theta2_prime
};

// One theta2 -> theta2' transition (steps 1-4).
TransitionResult markov_transition(const Eigen::VectorXd& theta2, const ModelContext& ctx,
                                   RandomSource& rng);

struct ChainOptions {
    long T = 1000;
    long burn_in = -1;  // -1: default 10% of T
    std::uint64_t seed = 0;
    bool retain_training_samples = false;
    std::optional<Eigen::VectorXd> theta2_init;  // default: restriction-safe zero start
};

// Runs the chain for burn_in + T transitions and records the last T states of
// both coordinate chains. Deterministic given the seed.
ChainTrace run_chain(const ModelContext& ctx, const ChainOptions& options);
ChainTrace run_chain_with(const ModelContext& ctx, const ChainOptions& options, RandomSource& rng);

// theta2 start that satisfies the restriction for every link: zero vector,
// except the intercept is g((sum y + 1/2) / (n + 1)).
Eigen::VectorXd safe_initial_theta(const Dataset& data, LinkSpec link);

// One record per iteration: index, theta1 vector, theta2 vector.
void export_trace_csv(const ChainTrace& trace, const std::vector<std::string>& column_names,
                      std::ostream& out);

}  // namespace intprior
