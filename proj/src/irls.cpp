#include "intprior/irls.hpp"

#include <cmath>

#include "intprior/likelihood.hpp"
#include "intprior/math.hpp"

namespace intprior {

namespace {

constexpr int kMaxIterations = 100;
constexpr double kGradTol = 1e-8;
constexpr double kSeparationBound = 1e3;
constexpr double kVarFloor = 1e-12;

bool eta_admissible(const Eigen::VectorXd& eta, const LinkSpec& link) {
    if (!link.has_restriction()) return true;
    return link.eta_in_domain(eta);
}

Eigen::VectorXd initial_theta(const Eigen::MatrixXd& X, const Eigen::VectorXi& y, LinkSpec link) {
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(X.cols());
    const double ybar = (y.cast<double>().sum() + 0.5) / (double(X.rows()) + 1.0);
    // Works for every link only because the intercept is the last column.
    theta[X.cols() - 1] = link.forward(ybar);
    return theta;
}

}  // namespace

Eigen::VectorXd irls_score(const Eigen::MatrixXd& X, const Eigen::VectorXi& y,
                           const Eigen::VectorXd& theta, LinkSpec link) {
    const Eigen::VectorXd eta = X * theta;
    Eigen::VectorXd score = Eigen::VectorXd::Zero(X.cols());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const double p = link.inverse(eta[i]);
        const double d = link.inverse_derivative(eta[i]);
        const double var = std::max(p * (1.0 - p), kVarFloor);
        score += ((y[i] - p) * d / var) * X.row(i).transpose();
    }
    return score;
}

IrlsFit irls_fit(const Eigen::MatrixXd& X, const Eigen::VectorXi& y, LinkSpec link) {
    const Eigen::Index k = X.cols();
    if (y.size() != X.rows()) throw std::invalid_argument("irls_fit: response length mismatch");

    Eigen::VectorXd theta = initial_theta(X, y, link);
    double ll = log_likelihood(X, y, theta, link);
    Eigen::MatrixXd info(k, k);

    for (int iter = 1; iter <= kMaxIterations; ++iter) {
        const Eigen::VectorXd eta = X * theta;
        Eigen::VectorXd score = Eigen::VectorXd::Zero(k);
        info.setZero();
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            const double p = link.inverse(eta[i]);
            const double d = link.inverse_derivative(eta[i]);
            const double var = std::max(p * (1.0 - p), kVarFloor);
            score += ((y[i] - p) * d / var) * X.row(i).transpose();
            info.noalias() += (d * d / var) * (X.row(i).transpose() * X.row(i));
        }
        if (score.lpNorm<Eigen::Infinity>() < kGradTol) {
            Eigen::FullPivLU<Eigen::MatrixXd> lu(info);
            if (!lu.isInvertible()) throw irls_error("irls: singular information matrix");
            IrlsFit fit;
            fit.theta = theta;
            fit.covariance = lu.inverse();
            fit.log_lik = ll;
            fit.iterations = iter - 1;
            return fit;
        }

        Eigen::FullPivLU<Eigen::MatrixXd> lu(info);
        if (!lu.isInvertible()) throw irls_error("irls: singular information matrix");
        const Eigen::VectorXd direction = lu.solve(score);

        // Step halving keeps the iterate inside the link domain and ascending.
        double step = 1.0;
        bool moved = false;
        for (int h = 0; h < 40; ++h, step *= 0.5) {
            const Eigen::VectorXd candidate = theta + step * direction;
            if (!eta_admissible(X * candidate, link)) continue;
            const double cand_ll = log_likelihood(X, y, candidate, link);
            if (cand_ll >= ll - 1e-12) {
                theta = candidate;
                ll = cand_ll;
                moved = true;
                break;
            }
        }
        if (!moved) throw irls_error("irls: line search failed to make progress");
        if (theta.cwiseAbs().maxCoeff() > kSeparationBound)
            throw irls_error("irls: non-identifiable MLE (coefficients diverging; separation?)");
    }
    throw irls_error("irls: no convergence within 100 iterations");
}

Eigen::VectorXd wald_p_values(const IrlsFit& fit) {
    Eigen::VectorXd p(fit.theta.size());
    for (Eigen::Index j = 0; j < fit.theta.size(); ++j) {
        const double se = std::sqrt(fit.covariance(j, j));
        const double z = std::abs(fit.theta[j]) / se;
        p[j] = 2.0 * standard_normal_cdf(-z);
    }
    return p;
}

}  // namespace intprior
