#include "intprior/kde.hpp"

#include <cmath>
#include <stdexcept>

namespace intprior {

KdeModel kde_fit(const Eigen::MatrixXd& draws, Eigen::Index max_support) {
    const Eigen::Index total = draws.rows();
    const Eigen::Index d = draws.cols();
    if (total < 100) throw std::invalid_argument("kde_fit: need at least 100 draws");

    KdeModel model;
    if (total <= max_support) {
        model.support = draws;
    } else {
        model.support.resize(max_support, d);
        for (Eigen::Index i = 0; i < max_support; ++i) {
            model.support.row(i) = draws.row((i * total) / max_support);
        }
    }

    const Eigen::Index T = model.support.rows();
    const Eigen::VectorXd mean = model.support.colwise().mean();
    model.bandwidths.resize(d);
    // Scott/Silverman exponent, floored at 1/4: in low dimension the kernel
    // smoothing bias would otherwise decay more slowly than the importance
    // sampler's Monte Carlo error and dominate it at large T.
    const double exponent = std::max(1.0 / double(d + 4), 0.25);
    const double factor = std::pow(4.0 / (double(d + 2) * double(T)), exponent);
    for (Eigen::Index j = 0; j < d; ++j) {
        const double var =
            (model.support.col(j).array() - mean[j]).square().sum() / double(T - 1);
        if (!(var > 0.0))
            throw std::runtime_error("kde_fit: degenerate trace (zero variance in coordinate " +
                                     std::to_string(j) + ")");
        model.bandwidths[j] = std::sqrt(var) * factor;
    }
    return model;
}

double kde_log_pdf(const KdeModel& model, const Eigen::VectorXd& x) {
    const Eigen::Index T = model.support.rows();
    const Eigen::Index d = model.support.cols();
    if (x.size() != d) throw std::invalid_argument("kde_log_pdf: dimension mismatch");

    // Streaming log-sum-exp over the kernel exponents.
    double running_max = -std::numeric_limits<double>::infinity();
    double running_sum = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) {
        double e = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) {
            const double z = (x[j] - model.support(t, j)) / model.bandwidths[j];
            e -= 0.5 * z * z;
        }
        if (e > running_max) {
            running_sum = running_sum * std::exp(running_max - e) + 1.0;
            running_max = e;
        } else {
            running_sum += std::exp(e - running_max);
        }
    }
    static const double kLog2Pi = 1.8378770664093454836;
    return running_max + std::log(running_sum) - std::log(double(T)) -
           model.bandwidths.array().log().sum() - 0.5 * double(d) * kLog2Pi;
}

}  // namespace intprior
