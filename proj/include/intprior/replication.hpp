#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "intprior/dataset.hpp"

namespace intprior {

// Multiplicity index N(x): how many times each distinct sub-row (restricted to
// column_subset) appears in the design matrix. Keys compare exactly; factor
// designs produce exact small integers, continuous columns get N(x) = 1.
struct ReplicationIndex {
    std::vector<int> column_subset;
    std::map<std::vector<double>, int> counts;

    // Count for the sub-row of X's row `row`; the row must have been indexed.
    int count_for_row(const Eigen::MatrixXd& X, Eigen::Index row) const;
};

ReplicationIndex count_replications(const Dataset& data, std::vector<int> column_subset);
ReplicationIndex count_replications(const Eigen::MatrixXd& X, std::vector<int> column_subset);

}  // namespace intprior
