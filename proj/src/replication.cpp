#include "intprior/replication.hpp"

#include <stdexcept>

namespace intprior {

namespace {

std::vector<double> sub_row(const Eigen::MatrixXd& X, Eigen::Index row,
                            const std::vector<int>& cols) {
    std::vector<double> key(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) key[j] = X(row, cols[j]);
    return key;
}

}  // namespace

int ReplicationIndex::count_for_row(const Eigen::MatrixXd& X, Eigen::Index row) const {
    const auto it = counts.find(sub_row(X, row, column_subset));
    if (it == counts.end())
        throw std::logic_error("replication index: row was not indexed");
    return it->second;
}

ReplicationIndex count_replications(const Eigen::MatrixXd& X, std::vector<int> column_subset) {
    if (column_subset.empty())
        throw std::invalid_argument("count_replications: empty column subset");
    for (int c : column_subset) {
        if (c < 0 || c >= X.cols())
            throw std::invalid_argument("count_replications: column index out of range");
    }
    ReplicationIndex index;
    index.column_subset = std::move(column_subset);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        ++index.counts[sub_row(X, i, index.column_subset)];
    }
    return index;
}

ReplicationIndex count_replications(const Dataset& data, std::vector<int> column_subset) {
    return count_replications(data.X, std::move(column_subset));
}

}  // namespace intprior
