#pragma once

#include <functional>

#include "intprior/rng.hpp"

namespace intprior::testing {

// Mirrors a base source under the success/failure flip: binomial counts come
// back as n - base(n, 1-p), Beta draws as the complement with swapped shape
// parameters. A chain run on flipped data (y -> 1-y) with this source consumes
// the base engine identically to the original run, so its trace is the
// negation of the original one under the logit link (up to final rounding).
class MirrorRandomSource final : public RandomSource {
  public:
    explicit MirrorRandomSource(std::uint64_t seed) : base_(seed) {}

    double uniform() override { return base_.uniform(); }
    std::uint64_t uniform_int(std::uint64_t n) override { return base_.uniform_int(n); }
    double normal() override { return base_.normal(); }
    double beta(double a, double b) override { return 1.0 - base_.beta(b, a); }
    long binomial(long n, double p) override { return n - base_.binomial(n, 1.0 - p); }

  private:
    StdRandomSource base_;
};

// Composite Simpson's rule on [a, b] with n (even) panels.
double simpson(const std::function<double(double)>& f, double a, double b, int n);

}  // namespace intprior::testing
