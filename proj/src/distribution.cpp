#include "unisum/distribution.hpp"

#include <algorithm>
#include <stdexcept>

#include "unisum/errors.hpp"

namespace unisum {

MixtureDistribution MixtureDistribution::from_parts(std::vector<Atom> atoms,
                                                    std::vector<UniformPiece> pieces) {
  for (const auto& a : atoms)
    if (a.mass.sign() < 0) throw InvariantError("atom with negative mass");
  for (const auto& p : pieces) {
    if (p.weight.sign() < 0) throw InvariantError("piece with negative weight");
    if (!(p.lo < p.hi) && p.weight.sign() != 0)
      throw InvariantError("piece with lo >= hi");
  }
  std::erase_if(atoms, [](const Atom& a) { return a.mass.sign() == 0; });
  std::erase_if(pieces, [](const UniformPiece& p) { return p.weight.sign() == 0; });

  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.loc < b.loc; });
  std::vector<Atom> merged;
  for (auto& a : atoms) {
    if (!merged.empty() && merged.back().loc == a.loc)
      merged.back().mass += a.mass;
    else
      merged.push_back(std::move(a));
  }
  std::sort(pieces.begin(), pieces.end(), [](const UniformPiece& a, const UniformPiece& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
  });

  Rat total = 0;
  for (const auto& a : merged) total += a.mass;
  for (const auto& p : pieces) total += p.weight;
  if (total != Rat(1)) throw InvariantError("total mass is " + total.str() + ", expected 1");

  MixtureDistribution d;
  d.atoms_ = std::move(merged);
  d.pieces_ = std::move(pieces);
  return d;
}

MixtureDistribution MixtureDistribution::point_mass(const Rat& loc) {
  return from_parts({Atom{loc, 1}}, {});
}

MixtureDistribution MixtureDistribution::uniform(const Rat& lo, const Rat& hi) {
  return from_parts({}, {UniformPiece{lo, hi, 1}});
}

MixtureDistribution MixtureDistribution::mix(const Rat& w, const MixtureDistribution& f,
                                             const MixtureDistribution& g) {
  if (w.sign() < 0 || w > Rat(1)) throw std::domain_error("mixture weight outside [0,1]");
  std::vector<Atom> atoms;
  std::vector<UniformPiece> pieces;
  const Rat cw = Rat(1) - w;
  for (const auto& a : f.atoms_) atoms.push_back({a.loc, w * a.mass});
  for (const auto& a : g.atoms_) atoms.push_back({a.loc, cw * a.mass});
  for (const auto& p : f.pieces_) pieces.push_back({p.lo, p.hi, w * p.weight});
  for (const auto& p : g.pieces_) pieces.push_back({p.lo, p.hi, cw * p.weight});
  return from_parts(std::move(atoms), std::move(pieces));
}

Rat MixtureDistribution::mean() const {
  Rat m = 0;
  for (const auto& a : atoms_) m += a.loc * a.mass;
  for (const auto& p : pieces_) m += p.weight * (p.lo + p.hi) / Rat(2);
  return m;
}

StopLossValue MixtureDistribution::stop_loss(const Rat& k) const {
  Rat v = 0;
  for (const auto& a : atoms_)
    if (a.loc > k) v += a.mass * (a.loc - k);
  for (const auto& p : pieces_) {
    if (k <= p.lo) {
      v += p.weight * ((p.lo + p.hi) / Rat(2) - k);
    } else if (k < p.hi) {
      // integral of (x-k) * weight/(hi-lo) over [k, hi]
      v += p.weight * (p.hi - k) * (p.hi - k) / (Rat(2) * (p.hi - p.lo));
    }
  }
  return StopLossValue{k, v};
}

Rat MixtureDistribution::cdf(const Rat& x) const {
  Rat v = 0;
  for (const auto& a : atoms_)
    if (a.loc <= x) v += a.mass;
  for (const auto& p : pieces_) {
    if (x >= p.hi)
      v += p.weight;
    else if (x > p.lo)
      v += p.weight * (x - p.lo) / (p.hi - p.lo);
  }
  return v;
}

Rat MixtureDistribution::cdf_left(const Rat& x) const {
  Rat v = cdf(x);
  for (const auto& a : atoms_)
    if (a.loc == x) v -= a.mass;
  return v;
}

Rat MixtureDistribution::quantile(const Rat& t) const {
  if (t.sign() <= 0 || t > Rat(1)) throw std::domain_error("quantile level outside (0,1]");

  std::vector<Rat> bps;
  for (const auto& a : atoms_) bps.push_back(a.loc);
  for (const auto& p : pieces_) {
    bps.push_back(p.lo);
    bps.push_back(p.hi);
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  auto atom_mass_at = [&](const Rat& x) {
    Rat m = 0;
    for (const auto& a : atoms_)
      if (a.loc == x) m += a.mass;
    return m;
  };
  auto density_on = [&](const Rat& lo, const Rat& hi) {
    Rat d = 0;
    for (const auto& p : pieces_)
      if (p.lo <= lo && hi <= p.hi) d += p.density();
    return d;
  };

  Rat f_prev = 0;  // F at previous breakpoint (atom included)
  for (std::size_t i = 0; i < bps.size(); ++i) {
    Rat f_left;
    if (i == 0) {
      f_left = 0;
    } else {
      const Rat d = density_on(bps[i - 1], bps[i]);
      f_left = f_prev + d * (bps[i] - bps[i - 1]);
      if (d.sign() > 0 && t > f_prev && t <= f_left)
        return bps[i - 1] + (t - f_prev) / d;
    }
    const Rat f_right = f_left + atom_mass_at(bps[i]);
    if (t <= f_right) return bps[i];
    f_prev = f_right;
  }
  throw std::logic_error("quantile walk exhausted support with t <= 1");
}

MixtureDistribution MixtureDistribution::scale_shift(const Rat& scale, const Rat& shift) const {
  if (scale.sign() == 0) throw std::domain_error("scale must be nonzero");
  std::vector<Atom> atoms;
  std::vector<UniformPiece> pieces;
  for (const auto& a : atoms_) atoms.push_back({scale * a.loc + shift, a.mass});
  for (const auto& p : pieces_) {
    Rat lo = scale * p.lo + shift, hi = scale * p.hi + shift;
    if (scale.sign() < 0) std::swap(lo, hi);
    pieces.push_back({lo, hi, p.weight});
  }
  return from_parts(std::move(atoms), std::move(pieces));
}

std::pair<Rat, Rat> MixtureDistribution::support() const {
  bool first = true;
  Rat lo = 0, hi = 0;
  auto extend = [&](const Rat& a, const Rat& b) {
    if (first) {
      lo = a;
      hi = b;
      first = false;
    } else {
      lo = min(lo, a);
      hi = max(hi, b);
    }
  };
  for (const auto& a : atoms_) extend(a.loc, a.loc);
  for (const auto& p : pieces_) extend(p.lo, p.hi);
  if (first) throw std::logic_error("empty distribution");
  return {lo, hi};
}

Rat MixtureDistribution::interval_probability(const Rat& a, const Rat& b, bool closed) const {
  if (b < a) throw std::domain_error("interval with b < a");
  Rat v = 0;
  for (const auto& at : atoms_) {
    const bool inside = closed ? (a <= at.loc && at.loc <= b) : (a < at.loc && at.loc < b);
    if (inside) v += at.mass;
  }
  for (const auto& p : pieces_) {
    const Rat lo = max(p.lo, a), hi = min(p.hi, b);
    if (lo < hi) v += p.weight * (hi - lo) / (p.hi - p.lo);
  }
  return v;
}

StepDensity MixtureDistribution::step_density() const {
  StepDensity sd;
  if (pieces_.empty()) return sd;
  for (const auto& p : pieces_) {
    sd.cuts.push_back(p.lo);
    sd.cuts.push_back(p.hi);
  }
  std::sort(sd.cuts.begin(), sd.cuts.end());
  sd.cuts.erase(std::unique(sd.cuts.begin(), sd.cuts.end()), sd.cuts.end());
  for (std::size_t i = 0; i + 1 < sd.cuts.size(); ++i) {
    Rat d = 0;
    for (const auto& p : pieces_)
      if (p.lo <= sd.cuts[i] && sd.cuts[i + 1] <= p.hi) d += p.density();
    sd.density.push_back(d);
  }
  return sd;
}

bool operator==(const MixtureDistribution& a, const MixtureDistribution& b) {
  if (a.atoms_.size() != b.atoms_.size()) return false;
  for (std::size_t i = 0; i < a.atoms_.size(); ++i)
    if (a.atoms_[i].loc != b.atoms_[i].loc || a.atoms_[i].mass != b.atoms_[i].mass) return false;

  // Compare piece parts as measures on the merged cell grid.
  std::vector<Rat> cuts;
  for (const auto& p : a.pieces_) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  for (const auto& p : b.pieces_) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto density_on = [](const MixtureDistribution& f, const Rat& lo, const Rat& hi) {
    Rat d = 0;
    for (const auto& p : f.pieces_)
      if (p.lo <= lo && hi <= p.hi) d += p.density();
    return d;
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (density_on(a, cuts[i], cuts[i + 1]) != density_on(b, cuts[i], cuts[i + 1])) return false;
  return true;
}

}  // namespace unisum
