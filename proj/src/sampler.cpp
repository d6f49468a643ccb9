#include "intprior/sampler.hpp"

#include <cmath>
#include <numeric>
#include <ostream>

#include "intprior/math.hpp"

namespace intprior {

namespace {

constexpr long kRestrictionRetryCap = 1000000;

std::vector<int> iota_columns(int from, int to) {
    std::vector<int> cols(to - from);
    std::iota(cols.begin(), cols.end(), from);
    return cols;
}

double restricted_abs_max(const Eigen::MatrixXd& X, const std::vector<int>& cols) {
    double m = 0.0;
    for (int c : cols) m = std::max(m, X.col(c).cwiseAbs().maxCoeff());
    return m;
}

}  // namespace

ModelContext make_model_context(const Dataset& data, const HypothesisTest& test, LinkSpec link) {
    validate_hypothesis(test, data.k());
    ModelContext ctx;
    ctx.data = &data;
    ctx.test = test;
    ctx.link = link;
    const int k = static_cast<int>(data.k());
    const auto cols_m1 = iota_columns(test.k0, k);
    const auto cols_m2 = iota_columns(0, k);
    ctx.n1 = count_replications(data, cols_m1);
    ctx.n2 = count_replications(data, cols_m2);
    ctx.design_m1 = data.X.rightCols(k - test.k0);
    ctx.pivot_tol_m1 = 1e-10 * restricted_abs_max(data.X, cols_m1);
    ctx.pivot_tol_m2 = 1e-10 * restricted_abs_max(data.X, cols_m2);

    // Fail fast when no full-rank submatrix can exist.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ctx.design_m1);
    if (qr.rank() < k - test.k0)
        throw std::runtime_error("sampler: design restricted to columns k0+1..k is rank deficient");
    return ctx;
}

RowSelection select_full_rank_rows(const Eigen::MatrixXd& X, const std::vector<int>& columns,
                                   int m, double pivot_tol, RandomSource& rng) {
    const int n = static_cast<int>(X.rows());
    const int d = static_cast<int>(columns.size());
    if (m > d || m > n) throw std::runtime_error("select_full_rank_rows: m exceeds available rank");

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    RowSelection sel;
    sel.submatrix.resize(m, d);
    Eigen::MatrixXd basis(m, d);   // eliminated accepted rows
    std::vector<int> pivot(m, -1);
    int nb = 0;

    // Lazy Fisher-Yates: element t of the permutation is fixed only when
    // inspected, so early exit still sees a uniform permutation prefix.
    for (int t = 0; t < n && nb < m; ++t) {
        const int j = t + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - t)));
        std::swap(perm[t], perm[j]);
        const int row = perm[t];

        Eigen::RowVectorXd v(d);
        for (int c = 0; c < d; ++c) v[c] = X(row, columns[c]);
        const Eigen::RowVectorXd original = v;
        for (int b = 0; b < nb; ++b) {
            v -= (v[pivot[b]] / basis.row(b)[pivot[b]]) * basis.row(b);
        }
        int piv = 0;
        const double mag = v.cwiseAbs().maxCoeff(&piv);
        if (mag > pivot_tol) {
            basis.row(nb) = v;
            pivot[nb] = piv;
            sel.submatrix.row(nb) = original;
            sel.row_indices.push_back(row);
            ++nb;
        }
    }
    if (nb < m)
        throw std::runtime_error("select_full_rank_rows: restricted design has rank below m");
    return sel;
}

TrainingSample simulate_training_sample(const Eigen::VectorXd& theta, const RowSelection& rows,
                                        const ReplicationIndex& repl, const Eigen::MatrixXd& X,
                                        const LinkSpec& link, RandomSource& rng) {
    const int m = static_cast<int>(rows.row_indices.size());
    TrainingSample ts;
    ts.row_indices = rows.row_indices;
    ts.submatrix = rows.submatrix;
    ts.q.resize(m);
    ts.successes.resize(m);
    for (int i = 0; i < m; ++i) {
        const int row = rows.row_indices[i];
        const double eta = X.row(row).dot(theta);
        if (!link.eta_in_domain(eta))
            throw degenerate_restriction_error(
                "simulate_training_sample: theta violates the link restriction at a selected row");
        const int bound = repl.count_for_row(X, row);
        ts.q[i] = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(bound)));
        ts.successes[i] = static_cast<int>(rng.binomial(ts.q[i], link.inverse(eta)));
    }
    return ts;
}

Eigen::VectorXd sample_posterior_coefficients(const TrainingSample& ts, const LinkSpec& link,
                                              const Eigen::MatrixXd& restriction_design,
                                              RandomSource& rng, Eigen::VectorXd* p_tilde_out) {
    const Eigen::Index m = ts.m();
    Eigen::VectorXd g_of_p(m), p_tilde(m);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(ts.submatrix);
    const bool restricted = link.has_restriction() && restriction_design.rows() > 0;
    for (long attempt = 0; attempt < kRestrictionRetryCap; ++attempt) {
        for (Eigen::Index i = 0; i < m; ++i) {
            const double a = ts.successes[i] + 0.5;
            const double b = ts.q[i] - ts.successes[i] + 0.5;
            p_tilde[i] = rng.beta(a, b);
            g_of_p[i] = link.forward(p_tilde[i]);
        }
        Eigen::VectorXd v = lu.solve(g_of_p);
        if (!restricted || link.eta_in_domain(Eigen::VectorXd(restriction_design * v))) {
            if (p_tilde_out) *p_tilde_out = p_tilde;
            return v;
        }
    }
    throw degenerate_restriction_error(
        "sample_posterior_coefficients: restriction not satisfied after 1e6 draws (m=" +
        std::to_string(m) + ")");
}

TransitionResult markov_transition(const Eigen::VectorXd& theta2, const ModelContext& ctx,
                                   RandomSource& rng) {
    const int k = ctx.k();
    const int k0 = ctx.k0();
    const int k1 = ctx.k1();
    const Eigen::MatrixXd& X = ctx.X();
    const Eigen::MatrixXd empty;

    TransitionResult res;

    // Step 1: z1 ~ f2(. | theta2) over k1 rows with |R2| != 0.
    const auto rows1 = select_full_rank_rows(X, iota_columns(k0, k), k1, ctx.pivot_tol_m1, rng);
    res.z1 = simulate_training_sample(theta2, rows1, ctx.n1, X, ctx.link, rng);

    // Step 2: theta1 = (0,...,0, v) with R2 v = g(p).
    const Eigen::VectorXd v = sample_posterior_coefficients(
        res.z1, ctx.link, ctx.link.has_restriction() ? ctx.design_m1 : empty, rng, &res.p_tilde1);
    res.theta1 = Eigen::VectorXd::Zero(k);
    res.theta1.tail(k1) = v;

    // Step 3: z2 ~ f1(. | theta1) over k rows with |S| != 0.
    const auto rows2 = select_full_rank_rows(X, iota_columns(0, k), k, ctx.pivot_tol_m2, rng);
    res.z2 = simulate_training_sample(res.theta1, rows2, ctx.n2, X, ctx.link, rng);

    // Step 4: theta2' = S^{-1} g(p).
    res.theta2_prime = sample_posterior_coefficients(
        res.z2, ctx.link, ctx.link.has_restriction() ? X : empty, rng, &res.p_tilde2);
    return res;
}

Eigen::VectorXd safe_initial_theta(const Dataset& data, LinkSpec link) {
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(data.k());
    const double ybar = (data.y.cast<double>().sum() + 0.5) / (double(data.n()) + 1.0);
    theta[data.k() - 1] = link.forward(ybar);
    return theta;
}

ChainTrace run_chain_with(const ModelContext& ctx, const ChainOptions& options, RandomSource& rng) {
    if (options.T < 1) throw std::invalid_argument("run_chain: T must be >= 1");
    const long burn = options.burn_in < 0 ? options.T / 10 : options.burn_in;
    const int k = ctx.k();

    Eigen::VectorXd theta2 =
        options.theta2_init ? *options.theta2_init : safe_initial_theta(*ctx.data, ctx.link);
    if (theta2.size() != k) throw std::invalid_argument("run_chain: theta2_init has wrong length");

    ChainTrace trace;
    trace.seed = options.seed;
    trace.theta1_draws.resize(options.T, k);
    trace.theta2_draws.resize(options.T, k);
    if (options.retain_training_samples) {
        trace.z1_draws.reserve(options.T);
        trace.z2_draws.reserve(options.T);
    }

    for (long t = 0; t < burn + options.T; ++t) {
        TransitionResult step;
        try {
            step = markov_transition(theta2, ctx, rng);
        } catch (const degenerate_restriction_error& e) {
            throw degenerate_restriction_error(std::string(e.what()) + " at iteration " +
                                               std::to_string(t));
        }
        theta2 = step.theta2_prime;
        if (t >= burn) {
            const long i = t - burn;
            trace.theta1_draws.row(i) = step.theta1;
            trace.theta2_draws.row(i) = step.theta2_prime;
            if (options.retain_training_samples) {
                trace.z1_draws.push_back(std::move(step.z1));
                trace.z2_draws.push_back(std::move(step.z2));
            }
        }
    }
    return trace;
}

ChainTrace run_chain(const ModelContext& ctx, const ChainOptions& options) {
    StdRandomSource rng(options.seed);
    return run_chain_with(ctx, options, rng);
}

void export_trace_csv(const ChainTrace& trace, const std::vector<std::string>& column_names,
                      std::ostream& out) {
    out << "iteration";
    for (const auto& n : column_names) out << ",theta1_" << n;
    for (const auto& n : column_names) out << ",theta2_" << n;
    out << "\n";
    const Eigen::Index k = trace.k();
    for (Eigen::Index t = 0; t < trace.T(); ++t) {
        out << t;
        for (Eigen::Index j = 0; j < k; ++j) out << ',' << trace.theta1_draws(t, j);
        for (Eigen::Index j = 0; j < k; ++j) out << ',' << trace.theta2_draws(t, j);
        out << "\n";
    }
}

}  // namespace intprior
