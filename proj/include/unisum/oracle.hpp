#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "unisum/distribution.hpp"
#include "unisum/rational.hpp"

namespace unisum {

/// Discrete problem size: n margins (2 or 3), each the uniform law on the
/// m midpoints {(j+1/2)/m}. Sum-index cells run over s = 0..n(m-1); cell s
/// carries the sum value (s + n/2)/m.
struct GridSpec {
  int n = 2;
  int m = 2;
  int num_sum_cells() const { return n * (m - 1) + 1; }
  int num_vars() const;               // m^n
  Rat sum_value(int s) const { return (Rat(s) + Rat(n, 2)) / Rat(m); }
  void validate() const;              // n in {2,3}, m >= 2
};

/// Target law on the sum grid. Feasibility additionally needs the mean
/// index n(m-1)/2 (the margins force it), which the solver discovers with
/// a certificate rather than rejecting up front.
struct GridTarget {
  std::vector<Rat> masses;
  void validate(const GridSpec& spec) const;  // sizes, masses >= 0, sum 1
};

/// Nonnegative joint with row-major entries over index tuples.
struct GridJoint {
  GridSpec spec;
  std::vector<Rat> entries;
  const Rat& at2(int i, int j) const { return entries[i * spec.m + j]; }
  const Rat& at3(int i, int j, int k) const {
    return entries[(i * spec.m + j) * spec.m + k];
  }
};

enum class Feasibility { Feasible, Infeasible };

/// Farkas vector over the constraint rows (margins first, then sum cells):
/// nonnegative combination proof that no joint exists.
struct DualCertificate {
  std::vector<Rat> y;
};

struct FeasibilityResult {
  Feasibility verdict = Feasibility::Infeasible;
  std::optional<GridJoint> witness;
  std::optional<DualCertificate> certificate;
  long pivots = 0;
};

/// Mean-preserving binning of F onto the sum grid: atoms on a grid point
/// stay there, anything else splits between the two adjacent cells; mass
/// outside the grid hull [n/(2m), n - n/(2m)] is clamped to the edge cell.
/// Throws std::domain_error when Supp(F) leaves [0, n].
GridTarget discretize(const MixtureDistribution& f, int n, int m);

/// Exact rational feasibility of {pi >= 0 : uniform margins, sum law =
/// target}. Feasible answers carry a witness joint, infeasible answers a
/// dual certificate; both are re-verified internally before returning.
FeasibilityResult feasible(const GridTarget& target, const GridSpec& spec,
                           std::optional<std::chrono::steady_clock::time_point> deadline = {});

/// Independent checkers (no solver state involved).
bool verify_witness(const GridJoint& joint, const GridTarget& target, const GridSpec& spec);
bool verify_certificate(const DualCertificate& cert, const GridTarget& target,
                        const GridSpec& spec);

enum class Sense { Min, Max };

/// Exact optimum of P(sum index in [lo_cell, hi_cell]) over all joints
/// with uniform margins (no sum constraints).
Rat grid_extreme_prob(const GridSpec& spec, int lo_cell, int hi_cell, Sense sense,
                      std::optional<std::chrono::steady_clock::time_point> deadline = {});

/// Mean-preserving refinement of a target from grid m to grid 2m;
/// feasibility is preserved under this refinement.
GridTarget refine_double(const GridTarget& target, const GridSpec& spec);

}  // namespace unisum
