#pragma once

#include <cstdint>
#include <vector>

#include "unisum/coupling.hpp"
#include "unisum/distribution.hpp"

namespace unisum {

/// One Monte Carlo draw from a coupling: X, Y = phi(X), and the sum.
struct SampleTriple {
  double x;
  double y;
  double s;
};

/// Deterministic sampler: a fixed seed yields a fixed stream on every
/// platform (xoshiro-free, plain splitmix64 + 53-bit uniforms).
class CouplingSampler {
 public:
  CouplingSampler(const Coupling& c, std::uint64_t seed);
  SampleTriple next();

 private:
  struct FlatSegment {
    double x_lo, x_hi, intercept;
    int slope;
  };
  double uniform01();
  std::uint64_t state_;
  double mix_weight_ = 2.0;  // >1: no mixture
  std::vector<FlatSegment> first_, second_;
  double x_lo_, x_len_;
};

/// Two-sided Kolmogorov-Smirnov distance between the empirical law of
/// `samples` (sorted in place) and `target`, atoms handled exactly.
double ks_statistic(std::vector<double>& samples, const MixtureDistribution& target);

/// DKW band half-width: sqrt(ln(2/alpha) / (2n)).
double dkw_epsilon(std::uint64_t n, double alpha);

}  // namespace unisum
