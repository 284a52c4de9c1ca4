#include "unisum/bounds.hpp"

#include <stdexcept>

#include "unisum/coupling.hpp"

namespace unisum {

namespace {

void check_interval(int n, const Rat& a, const Rat& b, int min_n) {
  if (n < min_n) throw std::domain_error("bounds need n >= " + std::to_string(min_n));
  if (a.sign() < 0 || b.sign() < 0 || a + b > Rat(n))
    throw std::domain_error("interval [a, a+b] must sit inside [0,n]");
}

AttainingKind classify(const MixtureDistribution& f) {
  switch (f.atoms().size()) {
    case 1: return AttainingKind::PointMass;
    case 2: return AttainingKind::BiAtomic;
    default: return AttainingKind::TriAtomic;
  }
}

BoundResult make(const Rat& value, MixtureDistribution f) {
  const AttainingKind k = classify(f);
  return BoundResult{value, std::move(f), k};
}

}  // namespace

BoundResult min_open_interval(int n, const Rat& a, const Rat& b) {
  check_interval(n, a, b, 3);
  const Rat nn(n);
  const Rat value = max(Rat(2) * b / nn - Rat(1), Rat(0));
  if (Rat(2) * b <= nn) {
    // any u in [2a+2b-2n, 2a] cap [0,n] keeps both atoms of F_{u,u} off
    // the open interval; take the largest feasible one
    const Rat u = min(Rat(2) * a, nn);
    return make(value, extremal_sum_distribution(n, u, u));
  }
  const Rat u = Rat(2) * a;
  const Rat v = Rat(2) * (a + b) - nn;
  return make(value, extremal_sum_distribution(n, u, v));
}

BoundResult max_closed_interval(int n, const Rat& a, const Rat& b) {
  check_interval(n, a, b, 3);
  const Rat nn(n);
  const Rat half = nn / Rat(2);
  const Rat value = min(min(Rat(2) * (a + b) / nn, Rat(2) * (nn - a) / nn), Rat(1));
  if (a <= half && half <= a + b)
    return make(value, MixtureDistribution::point_mass(half));
  if (a + b < half) {
    const Rat u = Rat(2) * (a + b);
    return make(value, extremal_sum_distribution(n, u, u));
  }
  const Rat u = Rat(2) * a - nn;
  return make(value, extremal_sum_distribution(n, u, u));
}

CdfBounds cdf_bounds(int n, const Rat& x) {
  if (n < 2) throw std::domain_error("cdf_bounds needs n >= 2");
  if (x.sign() < 0 || x > Rat(n)) throw std::domain_error("x outside [0,n]");
  const Rat nn(n);
  return CdfBounds{min(Rat(2) * x / nn, Rat(1)), min(Rat(2) * (nn - x) / nn, Rat(1))};
}

const char* to_string(AttainingKind k) {
  switch (k) {
    case AttainingKind::PointMass: return "PointMass";
    case AttainingKind::BiAtomic: return "BiAtomic";
    case AttainingKind::TriAtomic: return "TriAtomic";
  }
  return "?";
}

}  // namespace unisum
