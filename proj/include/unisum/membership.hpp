#pragma once

#include <optional>
#include <string>
#include <variant>

#include "unisum/convex_order.hpp"
#include "unisum/distribution.hpp"

namespace unisum {

enum class Verdict { Member, NonMember, Unknown };

enum class Rule {
  CxCharacterizationNGe3,
  BiAtomicRule,
  TriAtomicRule,
  UnimodalSufficient,
  MonotoneSufficient,
  DensityDominance,
  SupportOrMeanViolation,
  CxViolation,
  NoRuleApplies,
};

/// Stop-loss gap witness: g(k) > 0 at k.
struct CxWitnessCert {
  Rat k;
  Rat gap;
};

/// Bi-atomic rule fired with spacing b = 1/q.
struct UnitFractionCert {
  long q;
};

/// Equidistant tri-atomic rule: which case fired and the binding
/// inequality. `half_spacing_inv` is 1/(2b).
struct TriAtomicCert {
  std::string tri_case;  // "i", "ii", "iii"
  Rat half_spacing_inv;
  Rat threshold;
  Rat f2;
};

/// Density-dominance window: min step density on [1-h, 1+h] exceeds the
/// required level 3b/(4h).
struct DominanceCert {
  Rat h;
  Rat min_density;
  Rat required;
};

/// Named necessary-condition failure (mean, support, spacing, ...).
struct ViolationCert {
  std::string clause;
  std::string detail;
};

using Certificate = std::variant<std::monostate, CxWitnessCert, UnitFractionCert,
                                 TriAtomicCert, DominanceCert, ViolationCert>;

struct Decision {
  Verdict verdict = Verdict::Unknown;
  Rule rule = Rule::NoRuleApplies;
  Certificate certificate;
};

/// Declared density shape, checked against the step density before any
/// shape-based rule is trusted.
struct ShapeHint {
  enum class Kind { None, UnimodalDensity, MonotoneDensity, UnimodalSymmetricDensity };
  enum class Direction { Increasing, Decreasing };
  Kind kind = Kind::None;
  std::optional<Rat> mode;            // optional for UnimodalDensity
  std::optional<Direction> direction; // optional for MonotoneDensity
};

/// Measure of non-integrity min{ceil(x)/x - 1, 1 - floor(x)/x} in [0,1];
/// zero exactly at positive integers. Throws std::domain_error for x <= 0.
Rat non_integrity(const Rat& x);

/// n >= 3: membership is exactly the convex-order test against U[0,n].
Decision decide_n_ge_3(const MixtureDistribution& f, int n);

/// Bi-atomic law with mean 1 on {a, a+b}: member iff 1/b is a positive
/// integer (support and mean violations yield NonMember with the clause).
/// Throws std::invalid_argument unless f is exactly two atoms.
Decision decide_biatomic_n2(const MixtureDistribution& f);

/// Equidistant tri-atomic law {a-b, a, a+b} with mean 1; inputs with a > 1
/// are reflected about 1 first. Throws std::invalid_argument for
/// non-tri-atomic or non-equidistant input and std::domain_error for
/// mean != 1.
Decision decide_triatomic_equidistant_n2(const MixtureDistribution& f);

/// Atomless law with a verified unimodal/monotone step density: member when
/// Supp(F) in [0,2] and mean 1; NonMember when mean/support fail; Unknown
/// when the declared shape does not match the step density.
Decision decide_unimodal_n2(const MixtureDistribution& f, const ShapeHint& hint);

/// Atomless law dominating a proportion of a uniform: member when some
/// window [1-h, 1+h] has step density strictly above 3b/(4h), b the support
/// length. Sufficient only: fails to Unknown.
Decision decide_density_dominance_n2(const MixtureDistribution& f);

/// Dispatcher. n >= 3 delegates to decide_n_ge_3; n = 2 runs necessary
/// checks, then the exact bi-/tri-atomic rules, then the sufficient shape
/// rules; first conclusive verdict wins, otherwise Unknown.
Decision decide(const MixtureDistribution& f, int n, const ShapeHint& hint = {});

/// Scaling-closure harness: f is given in the centered frame (sum
/// of n U[-1,1], mean 0); returns decide() on the law of a*X mapped back to
/// the standard frame. a in [0,1].
Decision scaling_closure_check(const MixtureDistribution& f, int n, const Rat& a);

const char* to_string(Verdict v);
const char* to_string(Rule r);

}  // namespace unisum
