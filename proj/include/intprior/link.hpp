#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace intprior {

enum class LinkKind { logit, probit, cloglog, cauchit, log };

// A binomial-regression link g with its inverse and the derivative of the
// inverse. The log link restricts the linear predictor to eta < 0; the other
// links accept any finite eta.
struct LinkSpec {
    LinkKind kind = LinkKind::logit;

    // g(p). p must lie in (0,1).
    double forward(double p) const;

    // g^{-1}(eta), in (0,1). For the log link with eta >= 0 returns NaN;
    // callers treat that as a restriction violation, not an error.
    double inverse(double eta) const;

    // d/d eta g^{-1}(eta), positive on the link's domain.
    double inverse_derivative(double eta) const;

    // Restriction predicate: is eta an admissible linear predictor?
    bool eta_in_domain(double eta) const {
        return kind == LinkKind::log ? eta < 0.0 : std::isfinite(eta);
    }

    bool has_restriction() const { return kind == LinkKind::log; }

    // True when every entry of eta is admissible.
    bool eta_in_domain(const Eigen::VectorXd& eta) const;

    const char* name() const;
    static LinkSpec parse(std::string_view name);
};

}  // namespace intprior
