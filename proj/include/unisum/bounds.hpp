#pragma once

#include "unisum/distribution.hpp"

namespace unisum {

enum class AttainingKind { PointMass, BiAtomic, TriAtomic };

/// A sharp bound value together with a distribution of the sum that
/// attains it exactly (always a member of the n >= 3 aggregation set).
struct BoundResult {
  Rat value;
  MixtureDistribution attaining;
  AttainingKind kind;
};

/// Sharp minimum of P(S in (a, a+b)) over all sums of n U[0,1] variables,
/// n >= 3: (2b/n - 1)+. The attaining law is F_{u,u} off the interval when
/// b <= n/2 (largest feasible u), else F_{2a, 2(a+b)-n}.
BoundResult min_open_interval(int n, const Rat& a, const Rat& b);

/// Sharp maximum of P(S in [a, a+b]), n >= 3:
/// min{2(a+b)/n, 2(n-a)/n, 1}, attained by the point mass at n/2 when the
/// interval straddles it and by F_{u,u} on the matching side otherwise.
BoundResult max_closed_interval(int n, const Rat& a, const Rat& b);

struct CdfBounds {
  Rat upper_cdf;   // sharp upper bound on P(S <= x)
  Rat upper_tail;  // sharp upper bound on P(S >= x)
};

/// P(S <= x) <= 2x/n and P(S >= x) <= 2(n-x)/n, valid for every n >= 2.
CdfBounds cdf_bounds(int n, const Rat& x);

const char* to_string(AttainingKind k);

}  // namespace unisum
