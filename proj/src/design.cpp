#include "intprior/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace intprior {

namespace {

double parse_number(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("ingestion: cannot parse '" + s + "' as a number in " + where);
    }
}

struct ProducedColumn {
    std::string name;     // e.g. "race_2"
    std::string source;   // e.g. "race"
    std::vector<double> values;
};

}  // namespace

DesignResult load_dataset(const CsvTable& table, const DesignSpec& spec) {
    const int resp_idx = table.column_index(spec.response_column);
    if (resp_idx < 0)
        throw std::runtime_error("ingestion: response column '" + spec.response_column + "' not found");
    int trials_idx = -1;
    if (spec.trials_column) {
        trials_idx = table.column_index(*spec.trials_column);
        if (trials_idx < 0)
            throw std::runtime_error("ingestion: trials column '" + *spec.trials_column + "' not found");
    }

    std::vector<ProducedColumn> produced;
    for (const auto& name : spec.numeric_columns) {
        const int idx = table.column_index(name);
        if (idx < 0) throw std::runtime_error("ingestion: numeric column '" + name + "' not found");
        ProducedColumn col{name, name, {}};
        col.values.reserve(table.rows.size());
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            col.values.push_back(parse_number(table.rows[i][idx], "column " + name));
        }
        produced.push_back(std::move(col));
    }
    for (const auto& factor : spec.factors) {
        const int idx = table.column_index(factor.column);
        if (idx < 0) throw std::runtime_error("ingestion: factor column '" + factor.column + "' not found");
        if (std::find(factor.levels.begin(), factor.levels.end(), factor.reference_level) ==
            factor.levels.end())
            throw std::runtime_error("ingestion: reference level '" + factor.reference_level +
                                     "' not among levels of " + factor.column);
        for (const auto& level : factor.levels) {
            if (level == factor.reference_level) continue;
            ProducedColumn col{factor.column + "_" + level, factor.column, {}};
            col.values.reserve(table.rows.size());
            produced.push_back(std::move(col));
        }
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            const std::string& value = table.rows[i][idx];
            if (std::find(factor.levels.begin(), factor.levels.end(), value) == factor.levels.end())
                throw std::runtime_error("ingestion: unknown level '" + value + "' in column " +
                                         factor.column + " at row " + std::to_string(i + 1));
            for (auto& col : produced) {
                if (col.source != factor.column) continue;
                const std::string want = factor.column + "_" + value;
                col.values.push_back(col.name == want ? 1.0 : 0.0);
            }
        }
    }

    // Order: tested sources first (in the order given), remaining in spec order.
    std::vector<int> order;
    for (const auto& t : spec.tested) {
        bool found = false;
        for (std::size_t j = 0; j < produced.size(); ++j) {
            if (produced[j].source == t || produced[j].name == t) {
                order.push_back(static_cast<int>(j));
                found = true;
            }
        }
        if (!found) throw std::runtime_error("ingestion: tested variable '" + t + "' does not resolve");
    }
    const int k0 = static_cast<int>(order.size());
    for (std::size_t j = 0; j < produced.size(); ++j) {
        if (std::find(order.begin(), order.end(), static_cast<int>(j)) == order.end())
            order.push_back(static_cast<int>(j));
    }

    // Responses, with optional (events, trials) expansion.
    std::vector<int> response;
    std::vector<std::size_t> source_row;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (trials_idx >= 0) {
            const double ev = parse_number(table.rows[i][resp_idx], "events");
            const double tr = parse_number(table.rows[i][trials_idx], "trials");
            const long events = static_cast<long>(ev);
            const long trials = static_cast<long>(tr);
            if (ev != events || tr != trials || events < 0 || trials < 1)
                throw std::runtime_error("ingestion: bad (events, trials) at row " + std::to_string(i + 1));
            if (events > trials)
                throw std::runtime_error("ingestion: events > trials at row " + std::to_string(i + 1) +
                                         " column " + spec.response_column);
            for (long t = 0; t < trials; ++t) {
                response.push_back(t < events ? 1 : 0);
                source_row.push_back(i);
            }
        } else {
            const double v = parse_number(table.rows[i][resp_idx], "response");
            if (v != 0.0 && v != 1.0)
                throw std::runtime_error("ingestion: non-binary response at row " + std::to_string(i + 1) +
                                         " column " + spec.response_column);
            response.push_back(static_cast<int>(v));
            source_row.push_back(i);
        }
    }

    const Eigen::Index n = static_cast<Eigen::Index>(response.size());
    const Eigen::Index k = static_cast<Eigen::Index>(order.size()) + 1;
    Eigen::MatrixXd X(n, k);
    Eigen::VectorXi y(n);
    std::vector<std::string> names;
    for (int j : order) names.push_back(produced[j].name);
    names.push_back("intercept");
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::size_t src = source_row[i];
        for (Eigen::Index j = 0; j + 1 < k; ++j) X(i, j) = produced[order[j]].values[src];
        X(i, k - 1) = 1.0;
        y[i] = response[i];
    }

    DesignResult out{make_dataset(std::move(X), std::move(y), std::move(names)), HypothesisTest{k0}};
    if (k0 > 0) validate_hypothesis(out.test, out.data.k());
    return out;
}

std::vector<int> discretize_quantiles(const std::vector<double>& column,
                                      const std::vector<double>& breakpoints) {
    if (breakpoints.empty() || !std::isinf(breakpoints.back()))
        throw std::invalid_argument("discretize_quantiles: last breakpoint must be +infinity");
    for (std::size_t j = 1; j < breakpoints.size(); ++j) {
        if (!(breakpoints[j - 1] < breakpoints[j]))
            throw std::invalid_argument("discretize_quantiles: breakpoints must be strictly increasing");
    }
    std::vector<int> levels;
    levels.reserve(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) {
        const double v = column[i];
        if (!std::isfinite(v))
            throw std::runtime_error("ingestion: non-finite value at row " + std::to_string(i + 1));
        int level = 1;
        while (v > breakpoints[level - 1]) ++level;  // intervals have included upper endpoints
        levels.push_back(level);
    }
    return levels;
}

}  // namespace intprior
