#include "intprior/link.hpp"

#include <cmath>

#include "intprior/math.hpp"

namespace intprior {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double LinkSpec::forward(double p) const {
    switch (kind) {
        case LinkKind::logit:
            return std::log(p) - std::log1p(-p);
        case LinkKind::probit:
            return standard_normal_quantile(p);
        case LinkKind::cloglog:
            return std::log(-std::log1p(-p));
        case LinkKind::cauchit:
            return std::tan(kPi * (p - 0.5));
        case LinkKind::log:
            return std::log(p);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double LinkSpec::inverse(double eta) const {
    switch (kind) {
        case LinkKind::logit:
            return logistic(eta);
        case LinkKind::probit:
            return standard_normal_cdf(eta);
        case LinkKind::cloglog:
            return -std::expm1(-std::exp(eta));
        case LinkKind::cauchit:
            return std::atan(eta) / kPi + 0.5;
        case LinkKind::log:
            if (eta >= 0.0) return std::numeric_limits<double>::quiet_NaN();
            return std::exp(eta);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double LinkSpec::inverse_derivative(double eta) const {
    switch (kind) {
        case LinkKind::logit: {
            const double p = logistic(eta);
            return p * (1.0 - p);
        }
        case LinkKind::probit:
            return standard_normal_pdf(eta);
        case LinkKind::cloglog:
            return std::exp(eta - std::exp(eta));
        case LinkKind::cauchit:
            return 1.0 / (kPi * (1.0 + eta * eta));
        case LinkKind::log:
            if (eta >= 0.0) return std::numeric_limits<double>::quiet_NaN();
            return std::exp(eta);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

bool LinkSpec::eta_in_domain(const Eigen::VectorXd& eta) const {
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        if (!eta_in_domain(eta[i])) return false;
    }
    return true;
}

const char* LinkSpec::name() const {
    switch (kind) {
        case LinkKind::logit: return "logit";
        case LinkKind::probit: return "probit";
        case LinkKind::cloglog: return "cloglog";
        case LinkKind::cauchit: return "cauchit";
        case LinkKind::log: return "log";
    }
    return "?";
}

LinkSpec LinkSpec::parse(std::string_view name) {
    if (name == "logit") return {LinkKind::logit};
    if (name == "probit") return {LinkKind::probit};
    if (name == "cloglog") return {LinkKind::cloglog};
    if (name == "cauchit") return {LinkKind::cauchit};
    if (name == "log") return {LinkKind::log};
    throw std::invalid_argument("unknown link function: " + std::string(name));
}

}  // namespace intprior
