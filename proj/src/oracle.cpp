#include "intprior/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "intprior/math.hpp"

namespace intprior {

namespace {

// z1 collapsed state: (q1, s1) with q1 in 1..n. The selected row's identity
// does not enter the kernel (the step-2 posterior depends on z1 only through
// its Beta parameters), so it is marginalized out.
struct Z1State {
    int q1, s1;
};

std::vector<Z1State> z1_state_space(int n) {
    std::vector<Z1State> states;
    for (int q = 1; q <= n; ++q) {
        for (int s = 0; s <= q; ++s) states.push_back({q, s});
    }
    return states;
}

double log_betabin(int s, int q, double a, double b) {
    return log_choose(q, s) + log_beta(a + s, b + q - s) - log_beta(a, b);
}

double betabin(int s, int q, double a, double b) { return std::exp(log_betabin(s, q, a, b)); }

// P(z1 | z2): select a row type (n_r/n), q1 ~ U{1..n} (the M1 design has a
// single distinct sub-row, so N1 = n), s1 ~ BetaBin against that row's
// posterior Beta parameters.
Eigen::MatrixXd z1_given_z2(const FiniteChainSpec& spec, const std::vector<Z2State>& Z2,
                            const std::vector<Z1State>& Z1) {
    const int n = spec.n_a + spec.n_b;
    Eigen::MatrixXd P(Z2.size(), Z1.size());
    for (std::size_t j = 0; j < Z2.size(); ++j) {
        const auto& z2 = Z2[j];
        const double aa = z2.s_a + 0.5, ba = z2.q_a - z2.s_a + 0.5;
        const double ab = z2.s_b + 0.5, bb = z2.q_b - z2.s_b + 0.5;
        for (std::size_t i = 0; i < Z1.size(); ++i) {
            const auto& z1 = Z1[i];
            P(j, i) = (1.0 / n) * ((double(spec.n_a) / n) * betabin(z1.s1, z1.q1, aa, ba) +
                                   (double(spec.n_b) / n) * betabin(z1.s1, z1.q1, ab, bb));
        }
    }
    return P;
}

// P(z2 | z1): q_a ~ U{1..n_a}, q_b ~ U{1..n_b}; both success counts share the
// single Beta draw behind theta1, giving a correlated Beta-binomial pair.
Eigen::MatrixXd z2_given_z1(const FiniteChainSpec& spec, const std::vector<Z1State>& Z1,
                            const std::vector<Z2State>& Z2) {
    Eigen::MatrixXd P(Z1.size(), Z2.size());
    const double lq = std::log(double(spec.n_a)) + std::log(double(spec.n_b));
    for (std::size_t i = 0; i < Z1.size(); ++i) {
        const double a1 = Z1[i].s1 + 0.5, b1 = Z1[i].q1 - Z1[i].s1 + 0.5;
        for (std::size_t j = 0; j < Z2.size(); ++j) {
            const auto& z = Z2[j];
            const double lp = log_choose(z.q_a, z.s_a) + log_choose(z.q_b, z.s_b) +
                              log_beta(a1 + z.s_a + z.s_b,
                                       b1 + (z.q_a - z.s_a) + (z.q_b - z.s_b)) -
                              log_beta(a1, b1) - lq;
            P(i, j) = std::exp(lp);
        }
    }
    return P;
}

}  // namespace

void validate_spec(const FiniteChainSpec& spec) {
    if (spec.x_a == spec.x_b)
        throw std::invalid_argument("oracle: the two distinct rows must differ");
    if (spec.n_a < 1 || spec.n_a > 10 || spec.n_b < 1 || spec.n_b > 10)
        throw std::invalid_argument("oracle: replication counts must lie in 1..10");
    if (spec.successes_a < 0 || spec.successes_a > spec.n_a || spec.successes_b < 0 ||
        spec.successes_b > spec.n_b)
        throw std::invalid_argument("oracle: success counts out of range");
    if (spec.link == LinkKind::log)
        throw std::invalid_argument("oracle: the log link's restricted support is not covered");
}

std::vector<Z2State> z2_state_space(const FiniteChainSpec& spec) {
    validate_spec(spec);
    std::vector<Z2State> states;
    for (int qa = 1; qa <= spec.n_a; ++qa)
        for (int sa = 0; sa <= qa; ++sa)
            for (int qb = 1; qb <= spec.n_b; ++qb)
                for (int sb = 0; sb <= qb; ++sb) states.push_back({qa, sa, qb, sb});
    return states;
}

int z2_state_index(const FiniteChainSpec& spec, const TrainingSample& z2) {
    if (z2.m() != 2) throw std::invalid_argument("z2_state_index: expected 2 rows");
    int qa = -1, sa = -1, qb = -1, sb = -1;
    for (int i = 0; i < 2; ++i) {
        if (z2.row_indices[i] < spec.n_a) {
            qa = z2.q[i];
            sa = z2.successes[i];
        } else {
            qb = z2.q[i];
            sb = z2.successes[i];
        }
    }
    if (qa < 0 || qb < 0) throw std::invalid_argument("z2_state_index: rows do not cover both types");
    // lexicographic position in z2_state_space order
    auto block_a = [&](int q) {  // states with q_a < q
        int c = 0;
        for (int qq = 1; qq < q; ++qq) c += qq + 1;
        return c;
    };
    int per_b = 0;
    for (int qq = 1; qq <= spec.n_b; ++qq) per_b += qq + 1;
    return (block_a(qa) + sa) * per_b + block_a(qb) + sb;
}

Eigen::MatrixXd exact_transition_matrix(const FiniteChainSpec& spec) {
    validate_spec(spec);
    const auto Z2 = z2_state_space(spec);
    const auto Z1 = z1_state_space(spec.n_a + spec.n_b);
    return z1_given_z2(spec, Z2, Z1) * z2_given_z1(spec, Z1, Z2);
}

Eigen::VectorXd exact_stationary_vector(const FiniteChainSpec& spec) {
    validate_spec(spec);
    const auto Z2 = z2_state_space(spec);
    const auto Z1 = z1_state_space(spec.n_a + spec.n_b);
    const Eigen::MatrixXd P21 = z1_given_z2(spec, Z2, Z1);
    const Eigen::MatrixXd P12 = z2_given_z1(spec, Z1, Z2);
    const Eigen::VectorXd w1 = stationary_distribution(P12 * P21);
    Eigen::VectorXd w2 = P12.transpose() * w1;
    return w2 / w2.sum();
}

double exact_log_bayes_factor(const FiniteChainSpec& spec) {
    validate_spec(spec);
    const auto Z2 = z2_state_space(spec);
    const auto Z1 = z1_state_space(spec.n_a + spec.n_b);
    const Eigen::MatrixXd P21 = z1_given_z2(spec, Z2, Z1);
    const Eigen::MatrixXd P12 = z2_given_z1(spec, Z1, Z2);
    const Eigen::VectorXd w1 = stationary_distribution(P12 * P21);
    const Eigen::VectorXd w2 = P12.transpose() * w1;

    // m2(y): each mixture component factorizes over the two rows, and the
    // data likelihood at a row is a Beta-binomial marginal in the component's
    // Beta parameters.
    std::vector<double> terms2;
    terms2.reserve(Z2.size());
    for (std::size_t j = 0; j < Z2.size(); ++j) {
        const auto& z = Z2[j];
        const double aa = z.s_a + 0.5, ba = z.q_a - z.s_a + 0.5;
        const double ab = z.s_b + 0.5, bb = z.q_b - z.s_b + 0.5;
        double lt = std::log(w2[j]);
        lt += log_beta(aa + spec.successes_a, ba + spec.n_a - spec.successes_a) - log_beta(aa, ba);
        lt += log_beta(ab + spec.successes_b, bb + spec.n_b - spec.successes_b) - log_beta(ab, bb);
        terms2.push_back(lt);
    }
    // m1(y): under M1 both rows share the step-2 Beta draw.
    const int c = spec.successes_a + spec.successes_b;
    const int m = spec.n_a + spec.n_b;
    std::vector<double> terms1;
    terms1.reserve(Z1.size());
    for (std::size_t i = 0; i < Z1.size(); ++i) {
        const double a1 = Z1[i].s1 + 0.5, b1 = Z1[i].q1 - Z1[i].s1 + 0.5;
        terms1.push_back(std::log(w1[i]) + log_beta(a1 + c, b1 + m - c) - log_beta(a1, b1));
    }

    auto lse = [](const std::vector<double>& v) {
        double mx = -std::numeric_limits<double>::infinity();
        for (double x : v) mx = std::max(mx, x);
        double s = 0.0;
        for (double x : v) s += std::exp(x - mx);
        return mx + std::log(s);
    };
    return lse(terms2) - lse(terms1);
}

Dataset oracle_dataset(const FiniteChainSpec& spec) {
    validate_spec(spec);
    const int n = spec.n_a + spec.n_b;
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXi y(n);
    for (int i = 0; i < n; ++i) {
        const bool is_a = i < spec.n_a;
        X(i, 0) = is_a ? spec.x_a : spec.x_b;
        X(i, 1) = 1.0;
        if (is_a) {
            y[i] = i < spec.successes_a ? 1 : 0;
        } else {
            y[i] = (i - spec.n_a) < spec.successes_b ? 1 : 0;
        }
    }
    return make_dataset(std::move(X), std::move(y), {"x", "intercept"});
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& P) {
    const Eigen::Index n = P.rows();
    if (P.cols() != n) throw std::invalid_argument("stationary_distribution: matrix not square");
    // (P^T - I) w = 0 with sum(w) = 1, solved as a least-squares system with
    // the normalization row appended.
    Eigen::MatrixXd A(n + 1, n);
    A.topRows(n) = P.transpose() - Eigen::MatrixXd::Identity(n, n);
    A.row(n).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
    b[n] = 1.0;
    Eigen::VectorXd w = A.colPivHouseholderQr().solve(b);
    return w / w.sum();
}

}  // namespace intprior
