#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unisum/distribution.hpp"

namespace unisum {

enum class Slope : int { Plus = 1, Minus = -1 };

/// Y = intercept + slope*X on [x_lo, x_hi). Slope +-1 keeps the pushforward
/// of a uniform X exactly uniform segment by segment.
struct CouplingSegment {
  Rat x_lo;
  Rat x_hi;
  Slope slope;
  Rat intercept;
};

/// Margins of the two coordinates: X ~ U[x_lo, x_hi], Y ~ U[y_lo, y_hi].
struct Frame {
  Rat x_lo;
  Rat x_hi;
  Rat y_lo;
  Rat y_hi;
};

/// Deterministic coupling Y = phi(X): slope +-1 segments partitioning the
/// X margin up to a null set. Sum law and Y margin are exactly computable.
struct PiecewiseCoupling {
  Frame frame;
  std::vector<CouplingSegment> segments;
};

/// A coupling artifact: a deterministic map, or a binary mixture of two
/// maps over the same frame (weight applies to `first`). Mixtures realize
/// interior target masses between two extreme constructions. `target`
/// optionally records the sum law the coupling was built for.
struct Coupling {
  PiecewiseCoupling first;
  std::optional<Rat> mix_weight;
  std::optional<PiecewiseCoupling> second;
  std::optional<MixtureDistribution> target;

  bool is_mixture() const { return mix_weight.has_value(); }
};

struct VerifyReport {
  bool margin_x_ok = false;
  bool margin_y_ok = false;
  bool sum_law_ok = false;
  std::vector<std::string> discrepancies;
  bool all_ok() const { return margin_x_ok && margin_y_ok && sum_law_ok; }
};

/// Exact sum law of X + phi(X): slope -1 segments contribute atoms, slope
/// +1 segments contribute uniform pieces.
MixtureDistribution sum_law(const PiecewiseCoupling& c);
MixtureDistribution sum_law(const Coupling& c);

/// Exact verification of both margins and the sum law against `target`.
/// Overlapping or gapped segment partitions are reported, never accepted.
VerifyReport verify_coupling(const Coupling& c, const MixtureDistribution& target);

/// Coupling for the unique mean-1 bi-atomic target on {a, a+1/b_inv},
/// emitted on U[0,1] margins. Requires b_inv >= 1 and 1 - 1/b_inv < a < 1.
Coupling synthesize_biatomic(long b_inv, const Rat& a);

/// Same, with the spacing given as a rational; rejects 1/b not in N.
Coupling synthesize_biatomic_spacing(const Rat& b, const Rat& a);

/// Constructive cases for tri-atomic sums in the ladder frame
/// (X ~ U[0,T], Y ~ U[-T,0], Z = X + Y on {b-2, b-1, b}):
///   A: b = 1, T = 2m +- r; achievable p1 down to r/T.
///   B: T even, b in (0,1) or (1,2); p1 in [0, min(b, 2-b)].
///   C: T odd, b in (0,1) or (1,2); p1 in [min(b,2-b)/T, min(b, 2-b)].
/// Interior p1 values come out as mixtures of the two extreme couplings.
enum class TriCase { A, B, C };
Coupling synthesize_triatomic(TriCase which, const Rat& T, const Rat& b, const Rat& p1);

/// F_{u,v}: the law of E[U | sigma({U<=u},{U<=v})] for U ~ U[0,n];
/// tri-atomic with atoms u/2, (u+v)/2, (n+v)/2 and always a member for
/// n >= 3. Requires 0 <= u <= v <= n.
MixtureDistribution extremal_sum_distribution(int n, const Rat& u, const Rat& v);

/// Affine change to U[0,1]/U[0,1] margins; the embedded target (if any) is
/// rescaled along: Z' = Z/T + 1 in ladder-frame conventions.
Coupling to_unit_frame(const Coupling& c);

/// The coupling of (-Y, -X): swaps the roles of the margins and realizes
/// the reflected sum law -Z.
PiecewiseCoupling mirror(const PiecewiseCoupling& c);

}  // namespace unisum
