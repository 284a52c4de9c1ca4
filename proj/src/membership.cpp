#include "unisum/membership.hpp"

#include <algorithm>
#include <stdexcept>

namespace unisum {

namespace {

Decision member(Rule rule, Certificate cert = std::monostate{}) {
  return Decision{Verdict::Member, rule, std::move(cert)};
}
Decision non_member(Rule rule, Certificate cert = std::monostate{}) {
  return Decision{Verdict::NonMember, rule, std::move(cert)};
}
Decision unknown() {
  return Decision{Verdict::Unknown, Rule::NoRuleApplies, std::monostate{}};
}

// Necessary conditions for any n: fixed mean n/2 and support inside [0,n].
std::optional<Decision> mean_support_violation(const MixtureDistribution& f, int n) {
  if (f.mean() != Rat(n, 2))
    return non_member(Rule::SupportOrMeanViolation,
                      ViolationCert{"mean", "mean is " + f.mean().str() + ", needs " + Rat(n, 2).str()});
  const auto [lo, hi] = f.support();
  if (lo.sign() < 0 || hi > Rat(n))
    return non_member(Rule::SupportOrMeanViolation,
                      ViolationCert{"support", "support [" + lo.str() + "," + hi.str() +
                                                   "] not inside [0," + std::to_string(n) + "]"});
  return std::nullopt;
}

bool density_unimodal(const std::vector<Rat>& d, std::size_t* peak = nullptr) {
  std::size_t i = 0;
  while (i + 1 < d.size() && d[i] <= d[i + 1]) ++i;
  if (peak) *peak = i;
  while (i + 1 < d.size() && d[i] >= d[i + 1]) ++i;
  return i + 1 == d.size();
}

bool density_monotone(const std::vector<Rat>& d, bool increasing) {
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (increasing && d[i] > d[i + 1]) return false;
    if (!increasing && d[i] < d[i + 1]) return false;
  }
  return true;
}

// Symmetry of the step density about the midpoint of the support hull.
bool density_symmetric(const StepDensity& sd) {
  const Rat c = (sd.cuts.front() + sd.cuts.back()) / Rat(2);
  // mirrored cut set must coincide, and mirrored cells carry equal density
  std::vector<Rat> mirrored;
  for (auto it = sd.cuts.rbegin(); it != sd.cuts.rend(); ++it) mirrored.push_back(Rat(2) * c - *it);
  if (mirrored != sd.cuts) return false;
  const std::size_t k = sd.density.size();
  for (std::size_t i = 0; i < k; ++i)
    if (sd.density[i] != sd.density[k - 1 - i]) return false;
  return true;
}

bool hint_matches(const MixtureDistribution& f, const ShapeHint& hint, bool* monotone_rule) {
  const StepDensity sd = f.step_density();
  if (sd.density.empty()) return false;
  *monotone_rule = false;
  switch (hint.kind) {
    case ShapeHint::Kind::None:
      return false;
    case ShapeHint::Kind::MonotoneDensity: {
      *monotone_rule = true;
      if (hint.direction)
        return density_monotone(sd.density, *hint.direction == ShapeHint::Direction::Increasing);
      return density_monotone(sd.density, true) || density_monotone(sd.density, false);
    }
    case ShapeHint::Kind::UnimodalDensity: {
      std::size_t peak = 0;
      if (!density_unimodal(sd.density, &peak)) return false;
      if (hint.mode) {
        // declared mode must sit inside some cell of maximal density
        const Rat& m = *hint.mode;
        for (std::size_t i = 0; i < sd.density.size(); ++i)
          if (sd.cuts[i] <= m && m <= sd.cuts[i + 1] && sd.density[i] == sd.density[peak])
            return true;
        return false;
      }
      return true;
    }
    case ShapeHint::Kind::UnimodalSymmetricDensity:
      return density_unimodal(sd.density) && density_symmetric(sd);
  }
  return false;
}

}  // namespace

Rat non_integrity(const Rat& x) {
  if (x.sign() <= 0) throw std::domain_error("non_integrity requires x > 0");
  const Rat up = Rat(x.ceil()) / x - Rat(1);
  const Rat down = Rat(1) - Rat(x.floor()) / x;
  return min(up, down);
}

Decision decide_n_ge_3(const MixtureDistribution& f, int n) {
  if (n < 3) throw std::domain_error("decide_n_ge_3 requires n >= 3; use the n = 2 deciders");
  if (auto v = mean_support_violation(f, n)) return *v;
  const CxCheck cx = convex_order_vs_uniform(f, n);
  if (cx.member) return member(Rule::CxCharacterizationNGe3);
  return non_member(Rule::CxCharacterizationNGe3, CxWitnessCert{*cx.witness_k, *cx.witness_gap});
}

Decision decide_biatomic_n2(const MixtureDistribution& f) {
  if (f.atoms().size() != 2 || !f.pieces().empty())
    throw std::invalid_argument("decide_biatomic_n2 requires exactly two atoms");
  if (auto v = mean_support_violation(f, 2)) return *v;
  const Rat b = f.atoms()[1].loc - f.atoms()[0].loc;
  const Rat b_inv = b.inverse();
  if (!b_inv.is_positive_integer())
    return non_member(Rule::BiAtomicRule,
                      ViolationCert{"unit_fraction", "1/b = " + b_inv.str() + " is not a positive integer"});
  return member(Rule::BiAtomicRule, UnitFractionCert{b_inv.num().get_si()});
}

Decision decide_triatomic_equidistant_n2(const MixtureDistribution& f) {
  if (f.atoms().size() != 3 || !f.pieces().empty())
    throw std::invalid_argument("decide_triatomic_equidistant_n2 requires exactly three atoms");
  const auto& as = f.atoms();
  if (as[1].loc - as[0].loc != as[2].loc - as[1].loc)
    throw std::invalid_argument("tri-atomic support is not equidistant");
  if (f.mean() != Rat(1)) throw std::domain_error("tri-atomic decider requires mean 1");

  // the case a > 1 is symmetric: reflect about 1
  MixtureDistribution g = as[1].loc > Rat(1) ? f.scale_shift(Rat(-1), Rat(2)) : f;
  if (auto v = mean_support_violation(g, 2)) return *v;

  const auto& atoms = g.atoms();
  const Rat a = atoms[1].loc;
  const Rat b = atoms[1].loc - atoms[0].loc;
  const Rat f2 = atoms[1].mass;
  const Rat half_inv = (Rat(2) * b).inverse();  // 1/(2b)

  if (a == Rat(1)) {
    const Rat threshold = non_integrity(half_inv);
    TriAtomicCert cert{"i", half_inv, threshold, f2};
    return f2 >= threshold ? member(Rule::TriAtomicRule, cert)
                           : non_member(Rule::TriAtomicRule, cert);
  }
  if (half_inv.is_positive_integer())
    return member(Rule::TriAtomicRule, TriAtomicCert{"ii", half_inv, Rat(0), f2});
  if ((half_inv - Rat(1, 2)).is_positive_integer()) {
    // The minimal middle mass achievable on an odd ladder of length
    // T = 1/b is (a+b-1)/b / T = a + b - 1; below it no coupling exists.
    const Rat threshold = a + b - Rat(1);
    TriAtomicCert cert{"iii", half_inv, threshold, f2};
    return f2 >= threshold ? member(Rule::TriAtomicRule, cert)
                           : non_member(Rule::TriAtomicRule, cert);
  }
  return non_member(Rule::TriAtomicRule,
                    ViolationCert{"spacing", "1/(2b) = " + half_inv.str() +
                                                 " is neither an integer nor a half-integer"});
}

Decision decide_unimodal_n2(const MixtureDistribution& f, const ShapeHint& hint) {
  if (!f.atoms().empty())
    throw std::invalid_argument("decide_unimodal_n2 requires an atomless distribution");
  if (auto v = mean_support_violation(f, 2)) return *v;
  bool monotone_rule = false;
  if (hint.kind == ShapeHint::Kind::None || !hint_matches(f, hint, &monotone_rule))
    return unknown();
  return member(monotone_rule ? Rule::MonotoneSufficient : Rule::UnimodalSufficient);
}

Decision decide_density_dominance_n2(const MixtureDistribution& f) {
  if (!f.atoms().empty())
    throw std::invalid_argument("decide_density_dominance_n2 requires an atomless distribution");
  if (auto v = mean_support_violation(f, 2)) return *v;

  const StepDensity sd = f.step_density();
  const Rat b = sd.cuts.back() - sd.cuts.front();  // support length
  const Rat one(1);
  const Rat h_max = min(one - sd.cuts.front(), sd.cuts.back() - one);
  if (h_max.sign() <= 0) return unknown();

  // Candidate window sizes: the min density over [1-h, 1+h] is constant in
  // h between breakpoint distances, so checking the largest h of each
  // constancy level is complete.
  std::vector<Rat> hs;
  for (const auto& c : sd.cuts) {
    const Rat d = (c - one).abs();
    if (d.sign() > 0 && d <= h_max) hs.push_back(d);
  }
  hs.push_back(h_max);
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());

  for (const auto& h : hs) {
    Rat min_d;
    bool seen = false;
    for (std::size_t i = 0; i < sd.density.size(); ++i) {
      // cells with positive-length overlap with (1-h, 1+h)
      if (sd.cuts[i] < one + h && sd.cuts[i + 1] > one - h) {
        if (!seen || sd.density[i] < min_d) min_d = sd.density[i];
        seen = true;
      }
    }
    if (!seen) continue;
    const Rat required = Rat(3) * b / (Rat(4) * h);
    if (min_d > required)
      return member(Rule::DensityDominance, DominanceCert{h, min_d, required});
  }
  return unknown();
}

Decision decide(const MixtureDistribution& f, int n, const ShapeHint& hint) {
  if (n < 2) throw std::domain_error("decide requires n >= 2");
  if (n >= 3) return decide_n_ge_3(f, n);

  if (auto v = mean_support_violation(f, 2)) return *v;
  const CxCheck cx = convex_order_vs_uniform(f, 2);
  if (!cx.member)
    return non_member(Rule::CxViolation, CxWitnessCert{*cx.witness_k, *cx.witness_gap});

  if (f.pieces().empty()) {
    // point mass at 1: U[0,1] is 2-CM via the antithetic coupling
    if (f.atoms().size() == 1) return member(Rule::BiAtomicRule);
    if (f.atoms().size() == 2) return decide_biatomic_n2(f);
    if (f.atoms().size() == 3) {
      const auto& as = f.atoms();
      if (as[1].loc - as[0].loc == as[2].loc - as[1].loc)
        return decide_triatomic_equidistant_n2(f);
      return unknown();
    }
    return unknown();
  }
  if (f.atoms().empty()) {
    if (hint.kind != ShapeHint::Kind::None) {
      const Decision d = decide_unimodal_n2(f, hint);
      if (d.verdict != Verdict::Unknown) return d;
    }
    const Decision d = decide_density_dominance_n2(f);
    if (d.verdict != Verdict::Unknown) return d;
    return unknown();
  }
  return unknown();  // mixed atom/piece laws have no n = 2 rule
}

Decision scaling_closure_check(const MixtureDistribution& f, int n, const Rat& a) {
  if (a.sign() < 0 || a > Rat(1)) throw std::domain_error("scaling factor outside [0,1]");
  // f lives in the centered frame (sum of n U[-1,1]); map a*X to the
  // standard frame via X_std = (a*X + n)/2.
  MixtureDistribution scaled =
      a.sign() == 0 ? MixtureDistribution::point_mass(Rat(0)) : f.scale_shift(a, Rat(0));
  return decide(scaled.scale_shift(Rat(1, 2), Rat(n, 2)), n);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Member: return "Member";
    case Verdict::NonMember: return "NonMember";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(Rule r) {
  switch (r) {
    case Rule::CxCharacterizationNGe3: return "CxCharacterization_nGe3";
    case Rule::BiAtomicRule: return "BiAtomicRule";
    case Rule::TriAtomicRule: return "TriAtomicRule";
    case Rule::UnimodalSufficient: return "UnimodalSufficient";
    case Rule::MonotoneSufficient: return "MonotoneSufficient";
    case Rule::DensityDominance: return "DensityDominance";
    case Rule::SupportOrMeanViolation: return "SupportOrMeanViolation";
    case Rule::CxViolation: return "CxViolation";
    case Rule::NoRuleApplies: return "NoRuleApplies";
  }
  return "?";
}

}  // namespace unisum
