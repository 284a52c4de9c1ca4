#pragma once

#include <utility>
#include <vector>

#include "unisum/rational.hpp"

namespace unisum {

/// Point mass: `mass` probability at `loc` (sum units).
struct Atom {
  Rat loc;
  Rat mass;
};

/// Uniform block carrying `weight` probability spread over [lo, hi];
/// density on the interval is weight/(hi-lo).
struct UniformPiece {
  Rat lo;
  Rat hi;
  Rat weight;
  Rat density() const { return weight / (hi - lo); }
};

/// Stop-loss transform value E[(X-k)+] at threshold k.
struct StopLossValue {
  Rat k;
  Rat value;
};

/// Step density of a mixture: density() is constant on each cell
/// [cuts[i], cuts[i+1]); cells jointly span the closed support hull.
struct StepDensity {
  std::vector<Rat> cuts;     // size k+1, strictly increasing
  std::vector<Rat> density;  // size k
};

/// A probability law made of finitely many atoms plus weighted uniform
/// pieces, all parameters exact rationals. Pieces may overlap; every
/// operation integrates additively, so convex mixtures stay representable
/// without resampling. Total mass is exactly 1. Immutable once built.
class MixtureDistribution {
 public:
  /// Canonicalizes (atoms sorted/merged by location, zero-mass parts
  /// dropped, pieces sorted) and validates. Throws InvariantError when a
  /// mass is negative, a piece has lo >= hi, or total mass != 1.
  static MixtureDistribution from_parts(std::vector<Atom> atoms,
                                        std::vector<UniformPiece> pieces);
  static MixtureDistribution point_mass(const Rat& loc);
  static MixtureDistribution uniform(const Rat& lo, const Rat& hi);
  /// w*f + (1-w)*g, w in [0,1].
  static MixtureDistribution mix(const Rat& w, const MixtureDistribution& f,
                                 const MixtureDistribution& g);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<UniformPiece>& pieces() const { return pieces_; }

  Rat mean() const;
  StopLossValue stop_loss(const Rat& k) const;
  /// Left-continuous generalized inverse inf{x : F(x) >= t}, t in (0,1].
  /// Throws std::domain_error outside that range.
  Rat quantile(const Rat& t) const;
  Rat cdf(const Rat& x) const;
  Rat cdf_left(const Rat& x) const;  // P(X < x)

  /// Law of scale*X + shift; negative scale reflects. Throws on scale == 0.
  MixtureDistribution scale_shift(const Rat& scale, const Rat& shift) const;

  /// Closed support hull [min, max].
  std::pair<Rat, Rat> support() const;

  /// P(X in (a,b)) when closed == false, P(X in [a,b]) when closed == true.
  Rat interval_probability(const Rat& a, const Rat& b, bool closed) const;

  /// Step density induced by the pieces alone (atoms are reported
  /// separately by atoms()). Empty when there are no pieces.
  StepDensity step_density() const;

  /// Equality as measures (canonical atoms equal and step densities agree
  /// cell by cell), not representation equality.
  friend bool operator==(const MixtureDistribution& a, const MixtureDistribution& b);
  friend bool operator!=(const MixtureDistribution& a, const MixtureDistribution& b) {
    return !(a == b);
  }

 private:
  MixtureDistribution() = default;
  std::vector<Atom> atoms_;
  std::vector<UniformPiece> pieces_;
};

}  // namespace unisum
