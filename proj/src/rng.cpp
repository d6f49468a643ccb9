#include "intprior/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace intprior {

double StdRandomSource::uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

std::uint64_t StdRandomSource::uniform_int(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_int: n must be positive");
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

double StdRandomSource::normal() {
    return std::normal_distribution<double>(0.0, 1.0)(engine_);
}

double StdRandomSource::beta(double a, double b) {
    std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
    const double x = ga(engine_);
    const double y = gb(engine_);
    double p = x / (x + y);
    // Gamma draws can underflow to 0 for tiny shapes; keep p inside (0,1).
    if (!(p > 0.0)) p = 1e-300;
    if (!(p < 1.0)) p = 1.0 - 1e-16;
    return p;
}

long StdRandomSource::binomial(long n, double p) {
    if (n < 0) throw std::invalid_argument("binomial: negative count");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial: p outside [0,1]");
    if (n == 0) {
        return 0;
    }
    // Inversion: walk the CDF with a single uniform. n is small (bounded by
    // the replication counts), so the O(n) walk is cheap.
    const double u = uniform();
    double cdf = 0.0;
    double pmf = std::pow(1.0 - p, static_cast<double>(n));  // P(S = 0)
    const double odds = p / (1.0 - p);
    if (p >= 1.0) return n;
    if (pmf == 0.0) {
        // Deep tail; recompute in log space.
        double log_pmf = n * std::log1p(-p);
        double log_odds = std::log(p) - std::log1p(-p);
        double best = 0.0;
        long arg = 0;
        for (long s = 0; s <= n; ++s) {
            if (s > 0) log_pmf += log_odds + std::log(double(n - s + 1) / double(s));
            const double val = std::exp(log_pmf);
            cdf += val;
            if (u <= cdf) return s;
            if (val > best) { best = val; arg = s; }
        }
        return arg;
    }
    for (long s = 0; s <= n; ++s) {
        cdf += pmf;
        if (u <= cdf) return s;
        pmf *= odds * double(n - s) / double(s + 1);
    }
    return n;  // u fell in the rounding slack past the last mass point
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z = z ^ (z >> 31);
    return z;
}

}  // namespace intprior
