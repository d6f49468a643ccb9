#pragma once

#include <cstdint>
#include <random>

namespace intprior {

// Source of randomness for the samplers. The indirection exists so tests can
// substitute recording/mirroring harnesses; production code uses StdRandomSource.
class RandomSource {
  public:
    virtual ~RandomSource() = default;

    virtual double uniform() = 0;                        // U[0,1)
    virtual std::uint64_t uniform_int(std::uint64_t n) = 0;  // U{0,...,n-1}
    virtual double normal() = 0;                         // N(0,1)
    virtual double beta(double a, double b) = 0;
    virtual long binomial(long n, double p) = 0;
};

// mt19937_64-backed source. beta draws use the two-gamma construction;
// binomial draws use CDF inversion with exactly one uniform per call, so a
// call sequence with identical arguments consumes an identical engine stream.
class StdRandomSource final : public RandomSource {
  public:
    explicit StdRandomSource(std::uint64_t seed) : engine_(seed) {}

    double uniform() override;
    std::uint64_t uniform_int(std::uint64_t n) override;
    double normal() override;
    double beta(double a, double b) override;
    long binomial(long n, double p) override;

  private:
    std::mt19937_64 engine_;
};

// splitmix64 of (master + (stream+1) * golden-gamma). This rule is the
// documented seed-derivation contract: chain i draws from stream 2i, its
// importance-sampling stage from stream 2i+1, and importance-sampling chunk c
// derives again with stream c from the stage seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace intprior
