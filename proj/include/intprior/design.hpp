#pragma once

#include <optional>
#include <string>
#include <vector>

#include "intprior/csv.hpp"
#include "intprior/dataset.hpp"

namespace intprior {

// Dummy encoding of a categorical column: one {0,1} indicator per non-reference
// level, named "<column>_<level>".
struct FactorSpec {
    std::string column;
    std::vector<std::string> levels;   // ordered; must cover every observed value
    std::string reference_level;
};

// How to assemble a design matrix from a CSV table. Variables listed in
// `tested` have their produced columns placed first (positions 1..k0); the
// intercept is appended last.
struct DesignSpec {
    std::string response_column;
    std::optional<std::string> trials_column;  // aggregated (events, trials) input
    std::vector<std::string> numeric_columns;  // used as-is
    std::vector<FactorSpec> factors;
    std::vector<std::string> tested;           // source-variable names under H0
};

struct DesignResult {
    Dataset data;
    HypothesisTest test;
};

// Builds the Dataset (expanding aggregated rows to Bernoulli rows when a
// trials column is given) and the hypothesis ordering. Throws on unknown
// levels, non-binary responses, events > trials, or unresolvable names.
DesignResult load_dataset(const CsvTable& table, const DesignSpec& spec);

// Maps each value to the first interval with value <= endpoint; the last
// breakpoint must be +infinity. Returns 1-based levels.
std::vector<int> discretize_quantiles(const std::vector<double>& column,
                                      const std::vector<double>& breakpoints);

}  // namespace intprior
