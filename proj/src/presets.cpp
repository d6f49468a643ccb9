#include "intprior/presets.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace intprior::embedded {
extern const char* kBreastCancerCsv;
extern const char* kBirthwtCsv;
}  // namespace intprior::embedded

namespace intprior {

namespace {

DesignResult breast_cancer(std::vector<std::string> tested) {
    CsvTable table = read_csv_text(embedded::kBreastCancerCsv);
    DesignSpec spec;
    spec.response_column = "deaths";
    spec.trials_column = "total";
    spec.factors = {
        {"receptor", {"1", "2"}, "2"},  // indicator of the low receptor level
        {"stage", {"1", "2", "3"}, "1"},
    };
    spec.tested = tested.empty() ? std::vector<std::string>{"receptor"} : std::move(tested);
    return load_dataset(table, spec);
}

DesignResult birthwt(std::vector<std::string> tested) {
    CsvTable table = read_csv_text(embedded::kBirthwtCsv);
    // Derived columns: age in five bands (upper endpoints 18, 20, 25, 30, inf)
    // and previous premature labours dichotomized at >= 1.
    const int age_idx = table.column_index("age");
    const int ptl_idx = table.column_index("ptl");
    if (age_idx < 0 || ptl_idx < 0) throw std::logic_error("birthwt preset: missing columns");
    std::vector<double> age;
    for (const auto& row : table.rows) age.push_back(std::stod(row[age_idx]));
    const std::vector<int> age_group =
        discretize_quantiles(age, {18.0, 20.0, 25.0, 30.0, std::numeric_limits<double>::infinity()});
    table.header.push_back("age_group");
    table.header.push_back("ptl_any");
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        table.rows[i].push_back(std::to_string(age_group[i]));
        table.rows[i].push_back(std::stod(table.rows[i][ptl_idx]) >= 1.0 ? "1" : "0");
    }

    DesignSpec spec;
    spec.response_column = "low";
    spec.factors = {
        {"smoke", {"0", "1"}, "0"},
        {"race", {"1", "2", "3"}, "1"},
        {"ptl_any", {"0", "1"}, "0"},
        {"age_group", {"1", "2", "3", "4", "5"}, "1"},
    };
    spec.tested = tested.empty() ? std::vector<std::string>{"smoke"} : std::move(tested);
    return load_dataset(table, spec);
}

}  // namespace

DesignResult preset_dataset(const std::string& name, std::vector<std::string> tested) {
    if (name == "breast_cancer") return breast_cancer(std::move(tested));
    if (name == "birthwt") return birthwt(std::move(tested));
    throw std::invalid_argument("unknown preset '" + name + "'; available: breast_cancer, birthwt");
}

std::vector<std::string> preset_names() { return {"breast_cancer", "birthwt"}; }

}  // namespace intprior
