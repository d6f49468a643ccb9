#include "intprior/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <thread>

#include "intprior/likelihood.hpp"
#include "intprior/math.hpp"

namespace intprior {

namespace {

constexpr int kImportanceChunks = 8;  // fixed, so results do not depend on thread count

double log_sum_exp(const std::vector<double>& v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

void run_chunks(int n_chunks, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, n_chunks));
    if (threads == 1) {
        for (int c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (int c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) fn(c);
        });
    }
    for (auto& t : pool) t.join();
}

template <typename T>
std::vector<T> thin_to(const std::vector<T>& v, std::size_t cap) {
    if (v.size() <= cap) return v;
    std::vector<T> out;
    out.reserve(cap);
    for (std::size_t i = 0; i < cap; ++i) out.push_back(v[(i * v.size()) / cap]);
    return out;
}

struct LogMarginal {
    double value;
    double std_error;  // of the log marginal, via the delta method
};

// Per-sample log weights -> log mean and its standard error.
LogMarginal combine_weights(const std::vector<double>& lw, const std::string& model_tag) {
    const double m = *std::max_element(lw.begin(), lw.end());
    if (!std::isfinite(m))
        throw estimator_error("importance_bf: all importance weights vanished for model " +
                              model_tag);
    double sum = 0.0, sum_sq = 0.0;
    for (double x : lw) {
        const double w = std::exp(x - m);
        sum += w;
        sum_sq += w * w;
    }
    const double T = double(lw.size());
    const double mean = sum / T;
    const double var = std::max(0.0, (sum_sq - T * mean * mean) / (T - 1.0));
    LogMarginal out;
    out.value = m + std::log(mean);
    out.std_error = std::sqrt(var) / (mean * std::sqrt(T));
    return out;
}

}  // namespace

Eigen::VectorXd GaussianImportance::sample(RandomSource& rng) const {
    Eigen::VectorXd z(mean.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
    return mean + chol_lower * z;
}

double GaussianImportance::log_pdf(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd u =
        chol_lower.triangularView<Eigen::Lower>().solve(x - mean);
    return log_norm_const - 0.5 * u.squaredNorm();
}

GaussianImportance make_gaussian_importance(const IrlsFit& fit) {
    GaussianImportance g;
    g.mean = fit.theta;
    g.covariance = 2.0 * fit.covariance;
    g.covariance = 0.5 * (g.covariance + g.covariance.transpose());  // enforce symmetry
    Eigen::LLT<Eigen::MatrixXd> llt(g.covariance);
    if (llt.info() != Eigen::Success)
        throw estimator_error("importance density covariance is not positive definite");
    g.chol_lower = llt.matrixL();
    static const double kLog2Pi = 1.8378770664093454836;
    g.log_norm_const = -0.5 * double(g.mean.size()) * kLog2Pi -
                       g.chol_lower.diagonal().array().log().sum();
    return g;
}

RbPriorDensity::RbPriorDensity(const std::vector<TrainingSample>& z_draws,
                               const Eigen::MatrixXd& design_free, LinkSpec link)
    : link_(link) {
    if (z_draws.empty())
        throw estimator_error("rao_blackwell density: no retained training samples");
    const Eigen::Index d = design_free.cols();

    std::map<std::vector<double>, int> row_ids;
    std::vector<std::vector<double>> rows;
    auto id_for = [&](Eigen::Index raw_row) {
        std::vector<double> key(d);
        for (Eigen::Index j = 0; j < d; ++j) key[j] = design_free(raw_row, j);
        auto [it, inserted] = row_ids.try_emplace(key, static_cast<int>(rows.size()));
        if (inserted) rows.push_back(key);
        return it->second;
    };

    terms_.reserve(z_draws.size());
    for (const auto& z : z_draws) {
        Term term;
        const Eigen::Index m = z.m();
        term.constant = std::log(std::abs(z.submatrix.partialPivLu().determinant()));
        term.distinct_id.resize(m);
        term.a_minus_1.resize(m);
        term.b_minus_1.resize(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double a = z.successes[i] + 0.5;
            const double b = z.q[i] - z.successes[i] + 0.5;
            term.constant -= log_beta(a, b);
            term.distinct_id[i] = id_for(z.row_indices[i]);
            term.a_minus_1[i] = a - 1.0;
            term.b_minus_1[i] = b - 1.0;
        }
        terms_.push_back(std::move(term));
    }

    distinct_rows_.resize(static_cast<Eigen::Index>(rows.size()), d);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (Eigen::Index j = 0; j < d; ++j) distinct_rows_(r, j) = rows[r][j];
    }
}

double RbPriorDensity::log_pdf(const Eigen::VectorXd& theta_free) const {
    const Eigen::Index r = distinct_rows_.rows();
    const Eigen::VectorXd eta = distinct_rows_ * theta_free;
    Eigen::VectorXd lp(r), l1p(r), ld(r);
    Eigen::Array<bool, Eigen::Dynamic, 1> ok(r);
    for (Eigen::Index i = 0; i < r; ++i) {
        ok[i] = link_.eta_in_domain(eta[i]);
        if (!ok[i]) continue;
        const double p = link_.inverse(eta[i]);
        lp[i] = std::log(std::max(p, kProbFloor));
        l1p[i] = std::log(std::max(1.0 - p, kProbFloor));
        ld[i] = std::log(link_.inverse_derivative(eta[i]));
    }

    double running_max = -std::numeric_limits<double>::infinity();
    double running_sum = 0.0;
    for (const auto& term : terms_) {
        double val = term.constant;
        for (std::size_t i = 0; i < term.distinct_id.size(); ++i) {
            const int id = term.distinct_id[i];
            if (!ok[id]) {
                val = -std::numeric_limits<double>::infinity();
                break;
            }
            val += term.a_minus_1[i] * lp[id] + term.b_minus_1[i] * l1p[id] + ld[id];
        }
        if (val == -std::numeric_limits<double>::infinity()) continue;
        if (val > running_max) {
            running_sum = running_sum * std::exp(running_max - val) + 1.0;
            running_max = val;
        } else {
            running_sum += std::exp(val - running_max);
        }
    }
    if (!std::isfinite(running_max)) return -std::numeric_limits<double>::infinity();
    return running_max + std::log(running_sum) - std::log(double(terms_.size()));
}

double rao_blackwell_prior_density(const Eigen::VectorXd& theta_free,
                                   const std::vector<TrainingSample>& z_draws,
                                   const Eigen::MatrixXd& design_free, LinkSpec link) {
    const RbPriorDensity density(z_draws, design_free, link);
    const double l = density.log_pdf(theta_free);
    return std::isfinite(l) ? std::exp(l) : 0.0;
}

BayesFactorEstimate ergodic_bf(const ChainTrace& trace1, const ChainTrace& trace2,
                               const Dataset& data, LinkSpec link) {
    const Eigen::Index T = trace1.T();
    if (trace2.T() != T) throw std::invalid_argument("ergodic_bf: traces differ in length");
    std::vector<double> lf1(T), lf2(T);
    for (Eigen::Index t = 0; t < T; ++t) {
        lf1[t] = log_likelihood(data, trace1.theta1_draws.row(t).transpose(), link);
        lf2[t] = log_likelihood(data, trace2.theta2_draws.row(t).transpose(), link);
    }
    const double log_bf = log_sum_exp(lf2) - log_sum_exp(lf1);

    const int B = static_cast<int>(std::min<Eigen::Index>(20, T));
    double se = 0.0;
    if (B >= 2) {
        std::vector<double> batch(B);
        for (int b = 0; b < B; ++b) {
            const Eigen::Index lo = (T * b) / B, hi = (T * (b + 1)) / B;
            std::vector<double> b1(lf1.begin() + lo, lf1.begin() + hi);
            std::vector<double> b2(lf2.begin() + lo, lf2.begin() + hi);
            batch[b] = log_sum_exp(b2) - log_sum_exp(b1);
        }
        double mean = 0.0;
        for (double x : batch) mean += x;
        mean /= B;
        double var = 0.0;
        for (double x : batch) var += (x - mean) * (x - mean);
        var /= (B - 1);
        se = std::sqrt(var / B);
    }
    return make_estimate(log_bf, BfMethod::ergodic, T, se);
}

BayesFactorEstimate importance_bf(const ChainTrace& trace1, const ChainTrace& trace2,
                                  const ModelContext& ctx, const ImportanceOptions& options) {
    if (trace1.T() == 0 || trace2.T() == 0)
        throw std::invalid_argument("importance_bf: empty trace");
    const Dataset& data = *ctx.data;
    const int k = ctx.k();
    const int k0 = ctx.k0();
    const int k1 = ctx.k1();
    const long T_is = options.T_is > 0 ? options.T_is : trace2.T();

    struct ModelSide {
        Eigen::MatrixXd X_free;
        Eigen::MatrixXd draws_free;
        const std::vector<TrainingSample>* z;
    };
    const ModelSide sides[2] = {
        {data.X.rightCols(k1), trace1.theta1_draws.rightCols(k1), &trace1.z1_draws},
        {data.X, trace2.theta2_draws, &trace2.z2_draws},
    };

    LogMarginal marginal[2];
    for (int s = 0; s < 2; ++s) {
        const auto& side = sides[s];
        const IrlsFit fit = irls_fit(side.X_free, data.y, ctx.link);
        const GaussianImportance G = make_gaussian_importance(fit);

        std::unique_ptr<RbPriorDensity> rb;
        KdeModel kde;
        if (options.rao_blackwell) {
            if (side.z->empty())
                throw estimator_error(
                    "importance_bf: rao_blackwell requires traces run with retained training "
                    "samples");
            rb = std::make_unique<RbPriorDensity>(thin_to(*side.z, 50000), side.X_free, ctx.link);
        } else {
            kde = kde_fit(side.draws_free);
            kde.bandwidths *= options.bandwidth_scale;
        }

        std::vector<double> lw(T_is);
        run_chunks(kImportanceChunks, options.threads, [&](int c) {
            StdRandomSource rng(derive_seed(options.seed, std::uint64_t(s) * kImportanceChunks + c));
            const long lo = (T_is * c) / kImportanceChunks;
            const long hi = (T_is * (c + 1)) / kImportanceChunks;
            for (long i = lo; i < hi; ++i) {
                const Eigen::VectorXd theta = G.sample(rng);
                const double lf = log_likelihood(side.X_free, data.y, theta, ctx.link);
                if (!std::isfinite(lf)) {  // restriction-violating draw: weight 0
                    lw[i] = -std::numeric_limits<double>::infinity();
                    continue;
                }
                const double lpi = rb ? rb->log_pdf(theta) : kde_log_pdf(kde, theta);
                lw[i] = lf + lpi - G.log_pdf(theta);
            }
        });
        marginal[s] = combine_weights(lw, s == 0 ? "M1" : "M2");
    }

    const double log_bf = marginal[1].value - marginal[0].value;
    const double se = std::hypot(marginal[0].std_error, marginal[1].std_error);
    return make_estimate(log_bf, options.rao_blackwell ? BfMethod::importance_rb : BfMethod::importance_kde,
                         trace2.T(), se);
}

BayesFactorEstimate bic_bf(const Dataset& data, LinkSpec link, int k0) {
    validate_hypothesis(HypothesisTest{k0}, data.k());
    const int k1 = static_cast<int>(data.k()) - k0;
    const IrlsFit fit1 = irls_fit(data.X.rightCols(k1), data.y, link);
    const IrlsFit fit2 = irls_fit(data.X, data.y, link);
    const double log_bf =
        (fit2.log_lik - fit1.log_lik) - 0.5 * double(k0) * std::log(double(data.n()));
    return make_estimate(log_bf, BfMethod::bic, 0, 0.0);
}

PooledEstimate pooled_estimate(const std::vector<BayesFactorEstimate>& estimates) {
    if (estimates.size() < 2)
        throw std::invalid_argument("pooled_estimate: need at least two estimates");
    for (const auto& e : estimates) {
        if (e.method != estimates.front().method)
            throw std::invalid_argument("pooled_estimate: mixed estimator methods");
    }
    PooledEstimate pooled;
    pooled.count = static_cast<int>(estimates.size());
    double mean = 0.0;
    for (const auto& e : estimates) mean += e.posterior_prob_m2;
    mean /= pooled.count;
    double var = 0.0;
    for (const auto& e : estimates) {
        var += (e.posterior_prob_m2 - mean) * (e.posterior_prob_m2 - mean);
    }
    var /= (pooled.count - 1);
    pooled.mean_posterior_prob = mean;
    pooled.sd = std::sqrt(var);
    return pooled;
}

}  // namespace intprior
