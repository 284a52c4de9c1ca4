#pragma once

// Shared helpers for the test suites: seeded generators for random
// mixtures and grid laws, plus brute-force reference checks kept
// independent of the library's decision paths.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "unisum/convex_order.hpp"
#include "unisum/distribution.hpp"
#include "unisum/oracle.hpp"

namespace testutil {

using unisum::Atom;
using unisum::MixtureDistribution;
using unisum::Rat;
using unisum::UniformPiece;

inline Rat R(const char* s) { return Rat::parse(s); }

using Rng = std::mt19937_64;

inline long rand_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Random rational in [0, hi] with denominator <= max_den.
inline Rat rand_rat(Rng& rng, long hi, long max_den) {
  const long den = rand_int(rng, 1, max_den);
  return Rat(rand_int(rng, 0, hi * den), den);
}

// Random mixture supported in [0, n]; if center_mean, the law is shrunk
// toward n/2 so the mean lands exactly on n/2 while support stays put.
inline MixtureDistribution random_mixture(Rng& rng, int n, bool center_mean) {
  while (true) {
    const long n_atoms = rand_int(rng, 0, 3);
    const long n_pieces = rand_int(rng, 0, 2);
    if (n_atoms + n_pieces == 0) continue;
    std::vector<Rat> weights;
    for (long i = 0; i < n_atoms + n_pieces; ++i) weights.push_back(Rat(rand_int(rng, 1, 12)));
    Rat total = 0;
    for (const auto& w : weights) total += w;

    std::vector<Atom> atoms;
    std::vector<UniformPiece> pieces;
    std::size_t wi = 0;
    for (long i = 0; i < n_atoms; ++i)
      atoms.push_back({rand_rat(rng, n, 8), weights[wi++] / total});
    for (long i = 0; i < n_pieces; ++i) {
      Rat a = rand_rat(rng, n, 8), b = rand_rat(rng, n, 8);
      if (a == b) continue;
      if (b < a) std::swap(a, b);
      pieces.push_back({a, b, weights[wi++] / total});
    }
    Rat placed = 0;
    for (const auto& a : atoms) placed += a.mass;
    for (const auto& p : pieces) placed += p.weight;
    if (placed != Rat(1)) {  // a degenerate piece was skipped; retry
      continue;
    }
    MixtureDistribution f = MixtureDistribution::from_parts(atoms, pieces);
    if (!center_mean) return f;
    // X' = c + s*(X - mu) with s in (0,1] keeps support in [0,n] and mean c
    const Rat c(n, 2);
    const Rat mu = f.mean();
    if (mu == c) return f;
    const auto [lo, hi] = f.support();
    // pick s small enough that c + s*(x - mu) stays inside [0, n]
    Rat s(1, 2);
    for (int guard = 0; guard < 40; ++guard) {
      const Rat new_lo = c + s * (lo - mu);
      const Rat new_hi = c + s * (hi - mu);
      if (new_lo.sign() >= 0 && new_hi <= Rat(n)) break;
      s = s / Rat(2);
    }
    return f.scale_shift(s, c - s * mu);
  }
}

// Necessary-only reference check: stop-loss gap on a uniform rational grid.
// A grid violation must imply the exact check fails too.
inline bool brute_force_cx_grid(const MixtureDistribution& f, int n, int points) {
  if (f.mean() != Rat(n, 2)) return false;
  const auto [lo, hi] = f.support();
  if (lo.sign() < 0 || hi > Rat(n)) return false;
  for (int i = 0; i <= points; ++i) {
    const Rat k(static_cast<long>(i) * n, points);
    const Rat gap = f.stop_loss(k).value - (Rat(n) - k) * (Rat(n) - k) / Rat(2 * n);
    if (gap.sign() > 0) return false;
  }
  return true;
}

// Sum law of a uniform mixture of `count` random permutation couplings on
// the (n, m) grid: margins are exactly discrete uniform, so the law is
// grid-feasible by construction. Returned on the sum-value scale.
inline unisum::GridTarget random_permutation_mixture(Rng& rng, const unisum::GridSpec& spec,
                                                     int count) {
  std::vector<Rat> masses(spec.num_sum_cells(), Rat(0));
  const Rat w(1, count);
  std::vector<int> perm(spec.m), perm2(spec.m);
  std::iota(perm.begin(), perm.end(), 0);
  std::iota(perm2.begin(), perm2.end(), 0);
  for (int c = 0; c < count; ++c) {
    std::shuffle(perm.begin(), perm.end(), rng);
    if (spec.n == 3) std::shuffle(perm2.begin(), perm2.end(), rng);
    for (int j = 0; j < spec.m; ++j) {
      const int s = spec.n == 2 ? j + perm[j] : j + perm[j] + perm2[j];
      masses[s] += w * Rat(1, spec.m);
    }
  }
  return unisum::GridTarget{std::move(masses)};
}

// The same law as a MixtureDistribution on sum values (s + n/2)/m.
inline MixtureDistribution grid_law_to_mixture(const unisum::GridTarget& t,
                                               const unisum::GridSpec& spec) {
  std::vector<Atom> atoms;
  for (int s = 0; s < spec.num_sum_cells(); ++s)
    if (t.masses[s].sign() > 0) atoms.push_back({spec.sum_value(s), t.masses[s]});
  return MixtureDistribution::from_parts(std::move(atoms), {});
}

}  // namespace testutil
