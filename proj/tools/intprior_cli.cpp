// intprior: objective Bayesian hypothesis tests for binomial regression via
// integral priors. Subcommands: test (Bayes factor + posterior probability),
// chains (trace export), oracle (exact two-row ground truth).

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "intprior/estimators.hpp"
#include "intprior/oracle.hpp"
#include "intprior/presets.hpp"
#include "intprior/runner.hpp"

using json = nlohmann::ordered_json;
using namespace intprior;

namespace {

struct DataArgs {
    std::string preset;
    std::string data_path;
    std::string response = "y";
    std::string trials;
    std::vector<std::string> factor_columns;
    std::vector<std::string> null_variables;
};

void add_data_flags(CLI::App* cmd, DataArgs& args) {
    auto* preset = cmd->add_option("--preset", args.preset, "packaged dataset (breast_cancer, birthwt)");
    auto* data = cmd->add_option("--data", args.data_path, "CSV file with a header row");
    preset->excludes(data);
    cmd->add_option("--response", args.response, "response column for --data (0/1, or events with --trials)");
    cmd->add_option("--trials", args.trials, "trials column for aggregated --data input");
    cmd->add_option("--factor", args.factor_columns, "treat a --data column as a factor (repeatable)");
    cmd->add_option("--null", args.null_variables, "variables pinned to zero under the null hypothesis")
        ->required(false);
}

bool numeric_like(const std::vector<std::string>& values) {
    for (const auto& v : values) {
        try {
            std::size_t pos = 0;
            (void)std::stod(v, &pos);
            if (pos != v.size()) return false;
        } catch (const std::exception&) {
            return false;
        }
    }
    return true;
}

DesignResult load_from_args(const DataArgs& args) {
    if (!args.preset.empty()) return preset_dataset(args.preset, args.null_variables);
    if (args.data_path.empty())
        throw CLI::ValidationError("--preset or --data is required");
    if (args.null_variables.empty())
        throw CLI::ValidationError("--null is required with --data");

    const CsvTable table = read_csv_file(args.data_path);
    DesignSpec spec;
    spec.response_column = args.response;
    if (!args.trials.empty()) spec.trials_column = args.trials;
    spec.tested = args.null_variables;

    const std::set<std::string> factor_set(args.factor_columns.begin(), args.factor_columns.end());
    for (const auto& name : table.header) {
        if (name == args.response || name == args.trials) continue;
        if (factor_set.count(name)) {
            // levels are the observed distinct values; first (numeric-aware) is the reference
            std::vector<std::string> values;
            const int idx = table.column_index(name);
            for (const auto& row : table.rows) values.push_back(row[idx]);
            std::vector<std::string> levels(values.begin(), values.end());
            std::sort(levels.begin(), levels.end(), [&](const std::string& a, const std::string& b) {
                if (numeric_like({a, b})) return std::stod(a) < std::stod(b);
                return a < b;
            });
            levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
            spec.factors.push_back({name, levels, levels.front()});
        } else {
            spec.numeric_columns.push_back(name);
        }
    }
    return load_dataset(table, spec);
}

void write_output(const json& report, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << report.dump(2) << std::endl;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open output file " + out_path);
        out << report.dump(2) << std::endl;
    }
}

json config_json(const DataArgs& data, const RunPlan& plan, long T_is_effective) {
    json cfg;
    cfg["data"] = data.preset.empty() ? data.data_path : data.preset;
    cfg["link"] = plan.link.name();
    cfg["null_variables"] = data.null_variables;
    cfg["chains"] = plan.chains;
    cfg["iterations"] = plan.T;
    cfg["burn_in"] = plan.burn_in < 0 ? plan.T / 10 : plan.burn_in;
    cfg["seed"] = plan.seed;
    cfg["method"] = method_name(plan.method);
    cfg["importance_draws"] = T_is_effective;
    return cfg;
}

int cmd_test(const DataArgs& data_args, RunPlan plan, const std::string& out_path) {
    const DesignResult design = load_from_args(data_args);
    const TestRunResult result = run_test(design, plan);

    json report;
    report["schema_version"] = 1;
    report["config"] = config_json(data_args, plan, plan.T_is > 0 ? plan.T_is : plan.T);
    report["columns"] = design.data.column_names;
    report["k0"] = design.test.k0;
    report["per_chain"] = json::array();
    for (const auto& e : result.per_chain) {
        report["per_chain"].push_back({{"log_bf21", e.log_bf21},
                                       {"posterior_prob", e.posterior_prob_m2},
                                       {"mc_std_error", e.mc_std_error}});
    }
    if (result.pooled.count >= 2) {
        report["pooled"] = {{"mean", result.pooled.mean_posterior_prob}, {"sd", result.pooled.sd}};
    } else if (!result.per_chain.empty()) {
        report["pooled"] = {{"mean", result.per_chain.front().posterior_prob_m2}, {"sd", 0.0}};
    }
    report["timings"] = {{"total_seconds", result.seconds}};
    write_output(report, out_path);
    return 0;
}

int cmd_chains(const DataArgs& data_args, RunPlan plan, const std::string& out_path) {
    const DesignResult design = load_from_args(data_args);
    const ModelContext ctx = make_model_context(design.data, design.test, plan.link);
    ChainOptions copts;
    copts.T = plan.T;
    copts.burn_in = plan.burn_in;
    copts.seed = derive_seed(plan.seed, 0);
    copts.theta2_init = default_initial_theta(design, plan.link);
    const ChainTrace trace = run_chain(ctx, copts);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot open output file " + out_path);
        out = &file;
    }
    export_trace_csv(trace, design.data.column_names, *out);

    // Marginal prior summaries of the M2 coordinate chain.
    std::cerr << "integral prior marginals (theta2 chain, T=" << trace.T() << "):\n";
    for (Eigen::Index j = 0; j < trace.k(); ++j) {
        const Eigen::VectorXd col = trace.theta2_draws.col(j);
        const double mean = col.mean();
        const double sd = std::sqrt((col.array() - mean).square().sum() / double(col.size() - 1));
        std::vector<double> sorted(col.data(), col.data() + col.size());
        std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
        std::cerr << "  " << design.data.column_names[j] << ": sd=" << sd
                  << " median=" << sorted[sorted.size() / 2] << "\n";
    }
    return 0;
}

int cmd_oracle(const FiniteChainSpec& spec, const std::string& out_path) {
    json report;
    report["schema_version"] = 1;
    report["spec"] = {{"x_a", spec.x_a},       {"x_b", spec.x_b},
                      {"n_a", spec.n_a},       {"n_b", spec.n_b},
                      {"successes_a", spec.successes_a}, {"successes_b", spec.successes_b},
                      {"link", LinkSpec{spec.link}.name()}};
    report["log_bf21"] = exact_log_bayes_factor(spec);
    report["posterior_prob_m2"] = posterior_probability(report["log_bf21"].get<double>());
    const Eigen::VectorXd w = exact_stationary_vector(spec);
    const auto states = z2_state_space(spec);
    report["stationary"] = json::array();
    for (std::size_t j = 0; j < states.size(); ++j) {
        report["stationary"].push_back({{"q_a", states[j].q_a},
                                        {"s_a", states[j].s_a},
                                        {"q_b", states[j].q_b},
                                        {"s_b", states[j].s_b},
                                        {"probability", w[static_cast<Eigen::Index>(j)]}});
    }
    write_output(report, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Objective Bayesian hypothesis testing in binomial regression with integral priors"};
    app.require_subcommand(1);

    DataArgs data_args;
    RunPlan plan;
    std::string link_name = "logit";
    std::string method_str = "importance_kde";
    std::string out_path;

    auto* test = app.add_subcommand("test", "estimate the Bayes factor and posterior probability");
    add_data_flags(test, data_args);
    test->add_option("--link", link_name, "logit, probit, cloglog, cauchit, log");
    test->add_option("--chains", plan.chains, "number of independent chains");
    test->add_option("--iters", plan.T, "chain length T");
    test->add_option("--burnin", plan.burn_in, "burn-in (default T/10)");
    test->add_option("--seed", plan.seed, "master seed");
    test->add_option("--method", method_str, "ergodic, importance_kde, importance_rb, bic");
    test->add_option("--is-draws", plan.T_is, "importance-sampling draws (default T)");
    test->add_option("--threads", plan.threads, "worker threads (default: hardware)");
    test->add_option("--out", out_path, "JSON report path (default stdout)");

    auto* chains = app.add_subcommand("chains", "run one chain and export the trace as CSV");
    static DataArgs chains_args;
    add_data_flags(chains, chains_args);
    static RunPlan chains_plan;
    static std::string chains_link = "logit", chains_out;
    chains->add_option("--link", chains_link, "link function");
    chains->add_option("--iters", chains_plan.T, "chain length T");
    chains->add_option("--burnin", chains_plan.burn_in, "burn-in (default T/10)");
    chains->add_option("--seed", chains_plan.seed, "master seed");
    chains->add_option("--out", chains_out, "trace CSV path (default stdout)");

    auto* oracle = app.add_subcommand("oracle", "exact log Bayes factor for a two-distinct-row design");
    static FiniteChainSpec spec;
    static std::string oracle_link = "logit", oracle_out;
    oracle->add_option("--xa", spec.x_a, "covariate value of row a");
    oracle->add_option("--xb", spec.x_b, "covariate value of row b");
    oracle->add_option("--na", spec.n_a, "replications of row a (1..10)");
    oracle->add_option("--nb", spec.n_b, "replications of row b (1..10)");
    oracle->add_option("--sa", spec.successes_a, "observed successes at row a");
    oracle->add_option("--sb", spec.successes_b, "observed successes at row b");
    oracle->add_option("--link", oracle_link, "link function (log unsupported)");
    oracle->add_option("--out", oracle_out, "JSON path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (test->parsed()) {
            plan.link = LinkSpec::parse(link_name);
            plan.method = parse_method(method_str);
            return cmd_test(data_args, plan, out_path);
        }
        if (chains->parsed()) {
            chains_plan.link = LinkSpec::parse(chains_link);
            return cmd_chains(chains_args, chains_plan, chains_out);
        }
        if (oracle->parsed()) {
            spec.link = LinkSpec::parse(oracle_link).kind;
            return cmd_oracle(spec, oracle_out);
        }
    } catch (const std::exception& e) {
        json err;
        err["error"] = {{"type", typeid(e).name()}, {"message", e.what()}};
        std::cerr << err.dump(2) << std::endl;
        return 1;
    }
    return 0;
}
