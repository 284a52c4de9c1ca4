#include "unisum/convex_order.hpp"

#include <algorithm>
#include <stdexcept>

namespace unisum {

namespace {

Rat uniform_stop_loss(int n, const Rat& k) {
  // E[(U-k)+] for U ~ U[0,n], k in [0,n]
  return (Rat(n) - k) * (Rat(n) - k) / Rat(2 * n);
}

}  // namespace

CxCheck convex_order_vs_uniform(const MixtureDistribution& f, int n) {
  if (n < 1) throw std::domain_error("convex_order_vs_uniform requires n >= 1");
  CxCheck out;

  const Rat half_n(n, 2);
  if (f.mean() != half_n) {
    out.fail = CxCheck::Fail::Mean;
    return out;
  }
  const auto [lo, hi] = f.support();
  if (lo.sign() < 0 || hi > Rat(n)) {
    out.fail = CxCheck::Fail::Support;
    return out;
  }

  std::vector<Rat> cand;
  cand.push_back(0);
  cand.push_back(n);
  for (const auto& a : f.atoms()) cand.push_back(a.loc);
  for (const auto& p : f.pieces()) {
    cand.push_back(p.lo);
    cand.push_back(p.hi);
  }
  std::erase_if(cand, [&](const Rat& k) { return k.sign() < 0 || k > Rat(n); });
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  Rat worst_gap = 0;
  std::optional<Rat> worst_k;
  auto consider = [&](const Rat& k) {
    const Rat gap = f.stop_loss(k).value - uniform_stop_loss(n, k);
    if (!worst_k || gap > worst_gap) {
      worst_gap = gap;
      worst_k = k;
    }
  };

  for (const auto& k : cand) consider(k);

  // Interior critical points: on each open segment the gap derivative
  // F(k) - 1 + (n-k)/n is affine with slope d - 1/n, d the segment density.
  for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
    const Rat& u = cand[i];
    const Rat& v = cand[i + 1];
    Rat d = 0;
    for (const auto& p : f.pieces())
      if (p.lo <= u && v <= p.hi) d += p.density();
    const Rat slope = d - Rat(1, n);
    if (slope.sign() == 0) continue;
    const Rat fu = f.cdf(u);
    // solve fu + d*(k-u) - k/n = 0
    const Rat k_star = (d * u - fu) / slope;
    if (u < k_star && k_star < v) consider(k_star);
  }

  if (worst_gap.sign() > 0) {
    out.fail = CxCheck::Fail::StopLoss;
    out.witness_k = worst_k;
    out.witness_gap = worst_gap;
    return out;
  }
  out.member = true;
  return out;
}

}  // namespace unisum
