#pragma once

#include <optional>

#include "unisum/distribution.hpp"

namespace unisum {

/// Outcome of the convex-order test F vs U[0,n]. `member` holds exactly
/// when mean(F) = n/2, Supp(F) in [0,n] and the stop-loss gap
/// g(k) = E[(X-k)+] - (n-k)^2/(2n) stays <= 0 on [0,n]. On a stop-loss
/// failure, `witness_k`/`witness_gap` carry a point with g > 0.
struct CxCheck {
  enum class Fail { None, Mean, Support, StopLoss };
  bool member = false;
  Fail fail = Fail::None;
  std::optional<Rat> witness_k;
  std::optional<Rat> witness_gap;
};

/// Exact decision of F <=_cx U[0,n] for n >= 1. The gap function is
/// piecewise quadratic with breakpoints at atom locations and piece
/// endpoints; it is evaluated at every breakpoint and at the rational root
/// of its derivative inside each segment, which is complete for mixtures.
CxCheck convex_order_vs_uniform(const MixtureDistribution& f, int n);

}  // namespace unisum
