#include "intprior/runner.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

namespace intprior {

Eigen::VectorXd default_initial_theta(const DesignResult& design, LinkSpec link) {
    try {
        return irls_fit(design.data.X, design.data.y, link).theta;
    } catch (const irls_error&) {
        return safe_initial_theta(design.data, link);
    }
}

TestRunResult run_test(const DesignResult& design, const RunPlan& plan) {
    if (plan.chains < 1) throw std::invalid_argument("run_test: chains must be >= 1");
    const auto start = std::chrono::steady_clock::now();

    const ModelContext ctx = make_model_context(design.data, design.test, plan.link);
    const Eigen::VectorXd theta0 = default_initial_theta(design, plan.link);

    TestRunResult result;
    result.per_chain.resize(plan.chains);

    const bool chain_parallel = plan.chains > 1;
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (int i = next.fetch_add(1); i < plan.chains; i = next.fetch_add(1)) {
            try {
                ChainOptions copts;
                copts.T = plan.T;
                copts.burn_in = plan.burn_in;
                copts.seed = derive_seed(plan.seed, 2 * std::uint64_t(i));
                copts.retain_training_samples = plan.method == BfMethod::importance_rb;
                copts.theta2_init = theta0;
                const ChainTrace trace = run_chain(ctx, copts);

                switch (plan.method) {
                    case BfMethod::ergodic:
                        result.per_chain[i] = ergodic_bf(trace, trace, design.data, plan.link);
                        break;
                    case BfMethod::importance_kde:
                    case BfMethod::importance_rb: {
                        ImportanceOptions iopts;
                        iopts.T_is = plan.T_is;
                        iopts.seed = derive_seed(plan.seed, 2 * std::uint64_t(i) + 1);
                        iopts.rao_blackwell = plan.method == BfMethod::importance_rb;
                        iopts.threads = chain_parallel ? 1 : plan.threads;
                        iopts.bandwidth_scale = plan.bandwidth_scale;
                        result.per_chain[i] = importance_bf(trace, trace, ctx, iopts);
                        break;
                    }
                    case BfMethod::bic:
                        result.per_chain[i] = bic_bf(design.data, plan.link, design.test.k0);
                        break;
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    int workers = plan.threads > 0 ? plan.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, plan.chains));
    if (!chain_parallel || workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    if (plan.chains >= 2) result.pooled = pooled_estimate(result.per_chain);
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace intprior
