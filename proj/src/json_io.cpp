#include "unisum/json_io.hpp"

#include "unisum/errors.hpp"

namespace unisum {

namespace {

const Json& require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

Json rat_to_json(const Rat& r) { return Json(r.str()); }

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
  throw ParseError("rational must be a string \"p/q\" or an integer, got " + j.dump());
}

Json dist_to_json(const MixtureDistribution& f) {
  Json atoms = Json::array();
  for (const auto& a : f.atoms())
    atoms.push_back(Json{{"loc", rat_to_json(a.loc)}, {"mass", rat_to_json(a.mass)}});
  Json pieces = Json::array();
  for (const auto& p : f.pieces())
    pieces.push_back(Json{{"lo", rat_to_json(p.lo)},
                          {"hi", rat_to_json(p.hi)},
                          {"weight", rat_to_json(p.weight)}});
  return Json{{"atoms", std::move(atoms)}, {"pieces", std::move(pieces)}};
}

MixtureDistribution dist_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("distribution must be a JSON object");
  std::vector<Atom> atoms;
  std::vector<UniformPiece> pieces;
  if (auto it = j.find("atoms"); it != j.end())
    for (const auto& a : *it)
      atoms.push_back({rat_from_json(require(a, "loc")), rat_from_json(require(a, "mass"))});
  if (auto it = j.find("pieces"); it != j.end())
    for (const auto& p : *it)
      pieces.push_back({rat_from_json(require(p, "lo")), rat_from_json(require(p, "hi")),
                        rat_from_json(require(p, "weight"))});
  return MixtureDistribution::from_parts(std::move(atoms), std::move(pieces));
}

Json decision_to_json(const Decision& d) {
  Json cert;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          cert = Json{{"type", "none"}};
        } else if constexpr (std::is_same_v<T, CxWitnessCert>) {
          cert = Json{{"type", "cx_witness"}, {"k", rat_to_json(c.k)}, {"gap", rat_to_json(c.gap)}};
        } else if constexpr (std::is_same_v<T, UnitFractionCert>) {
          cert = Json{{"type", "unit_fraction"}, {"q", c.q}};
        } else if constexpr (std::is_same_v<T, TriAtomicCert>) {
          cert = Json{{"type", "tri_atomic"},
                      {"case", c.tri_case},
                      {"half_spacing_inv", rat_to_json(c.half_spacing_inv)},
                      {"threshold", rat_to_json(c.threshold)},
                      {"f2", rat_to_json(c.f2)}};
        } else if constexpr (std::is_same_v<T, DominanceCert>) {
          cert = Json{{"type", "dominance_window"},
                      {"h", rat_to_json(c.h)},
                      {"min_density", rat_to_json(c.min_density)},
                      {"required", rat_to_json(c.required)}};
        } else if constexpr (std::is_same_v<T, ViolationCert>) {
          cert = Json{{"type", "violation"}, {"clause", c.clause}, {"detail", c.detail}};
        }
      },
      d.certificate);
  return Json{{"verdict", to_string(d.verdict)},
              {"rule", to_string(d.rule)},
              {"certificate", std::move(cert)}};
}

namespace {

Verdict verdict_from_string(const std::string& s) {
  if (s == "Member") return Verdict::Member;
  if (s == "NonMember") return Verdict::NonMember;
  if (s == "Unknown") return Verdict::Unknown;
  throw ParseError("unknown verdict '" + s + "'");
}

Rule rule_from_string(const std::string& s) {
  for (Rule r : {Rule::CxCharacterizationNGe3, Rule::BiAtomicRule, Rule::TriAtomicRule,
                 Rule::UnimodalSufficient, Rule::MonotoneSufficient, Rule::DensityDominance,
                 Rule::SupportOrMeanViolation, Rule::CxViolation, Rule::NoRuleApplies})
    if (s == to_string(r)) return r;
  throw ParseError("unknown rule '" + s + "'");
}

}  // namespace

Decision decision_from_json(const Json& j) {
  Decision d;
  d.verdict = verdict_from_string(require(j, "verdict").get<std::string>());
  d.rule = rule_from_string(require(j, "rule").get<std::string>());
  const Json& cert = require(j, "certificate");
  const std::string type = require(cert, "type").get<std::string>();
  if (type == "none") {
    d.certificate = std::monostate{};
  } else if (type == "cx_witness") {
    d.certificate =
        CxWitnessCert{rat_from_json(require(cert, "k")), rat_from_json(require(cert, "gap"))};
  } else if (type == "unit_fraction") {
    d.certificate = UnitFractionCert{require(cert, "q").get<long>()};
  } else if (type == "tri_atomic") {
    d.certificate = TriAtomicCert{require(cert, "case").get<std::string>(),
                                  rat_from_json(require(cert, "half_spacing_inv")),
                                  rat_from_json(require(cert, "threshold")),
                                  rat_from_json(require(cert, "f2"))};
  } else if (type == "dominance_window") {
    d.certificate = DominanceCert{rat_from_json(require(cert, "h")),
                                  rat_from_json(require(cert, "min_density")),
                                  rat_from_json(require(cert, "required"))};
  } else if (type == "violation") {
    d.certificate =
        ViolationCert{require(cert, "clause").get<std::string>(),
                      cert.contains("detail") ? cert["detail"].get<std::string>() : ""};
  } else {
    throw ParseError("unknown certificate type '" + type + "'");
  }
  return d;
}

Json hint_to_json(const ShapeHint& h) {
  switch (h.kind) {
    case ShapeHint::Kind::None:
      return Json{{"kind", "none"}};
    case ShapeHint::Kind::UnimodalDensity: {
      Json j{{"kind", "unimodal"}};
      if (h.mode) j["mode"] = rat_to_json(*h.mode);
      return j;
    }
    case ShapeHint::Kind::MonotoneDensity: {
      Json j{{"kind", "monotone"}};
      if (h.direction)
        j["direction"] =
            *h.direction == ShapeHint::Direction::Increasing ? "increasing" : "decreasing";
      return j;
    }
    case ShapeHint::Kind::UnimodalSymmetricDensity:
      return Json{{"kind", "unimodal_symmetric"}};
  }
  throw std::logic_error("unreachable");
}

ShapeHint hint_from_json(const Json& j) {
  ShapeHint h;
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "none") {
    h.kind = ShapeHint::Kind::None;
  } else if (kind == "unimodal") {
    h.kind = ShapeHint::Kind::UnimodalDensity;
    if (j.contains("mode")) h.mode = rat_from_json(j["mode"]);
  } else if (kind == "monotone") {
    h.kind = ShapeHint::Kind::MonotoneDensity;
    if (j.contains("direction")) {
      const std::string d = j["direction"].get<std::string>();
      if (d == "increasing")
        h.direction = ShapeHint::Direction::Increasing;
      else if (d == "decreasing")
        h.direction = ShapeHint::Direction::Decreasing;
      else
        throw ParseError("unknown direction '" + d + "'");
    }
  } else if (kind == "unimodal_symmetric") {
    h.kind = ShapeHint::Kind::UnimodalSymmetricDensity;
  } else {
    throw ParseError("unknown hint kind '" + kind + "'");
  }
  return h;
}

namespace {

Json map_to_json(const PiecewiseCoupling& m) {
  Json segs = Json::array();
  for (const auto& s : m.segments)
    segs.push_back(Json{{"x_lo", rat_to_json(s.x_lo)},
                        {"x_hi", rat_to_json(s.x_hi)},
                        {"slope", static_cast<int>(s.slope)},
                        {"intercept", rat_to_json(s.intercept)}});
  return segs;
}

Json frame_to_json(const Frame& f) {
  return Json{{"x", Json::array({rat_to_json(f.x_lo), rat_to_json(f.x_hi)})},
              {"y", Json::array({rat_to_json(f.y_lo), rat_to_json(f.y_hi)})}};
}

Frame frame_from_json(const Json& j) {
  const Json& x = require(j, "x");
  const Json& y = require(j, "y");
  if (!x.is_array() || x.size() != 2 || !y.is_array() || y.size() != 2)
    throw ParseError("frame axes must be [lo, hi] pairs");
  return Frame{rat_from_json(x[0]), rat_from_json(x[1]), rat_from_json(y[0]),
               rat_from_json(y[1])};
}

std::vector<CouplingSegment> segments_from_json(const Json& j) {
  std::vector<CouplingSegment> out;
  for (const auto& s : j) {
    const int slope = require(s, "slope").get<int>();
    if (slope != 1 && slope != -1) throw ParseError("slope must be 1 or -1");
    out.push_back({rat_from_json(require(s, "x_lo")), rat_from_json(require(s, "x_hi")),
                   slope == 1 ? Slope::Plus : Slope::Minus,
                   rat_from_json(require(s, "intercept"))});
  }
  return out;
}

}  // namespace

Json coupling_to_json(const Coupling& c) {
  Json j{{"frame", frame_to_json(c.first.frame)}};
  if (c.is_mixture()) {
    j["mixture"] = Json{{"weight", rat_to_json(*c.mix_weight)},
                        {"first", Json{{"segments", map_to_json(c.first)}}},
                        {"second", Json{{"segments", map_to_json(*c.second)}}}};
  } else {
    j["segments"] = map_to_json(c.first);
  }
  if (c.target) j["target"] = dist_to_json(*c.target);
  return j;
}

Coupling coupling_from_json(const Json& j) {
  Coupling c;
  const Frame frame = frame_from_json(require(j, "frame"));
  if (j.contains("mixture")) {
    const Json& m = j["mixture"];
    c.mix_weight = rat_from_json(require(m, "weight"));
    c.first = PiecewiseCoupling{frame, segments_from_json(require(require(m, "first"), "segments"))};
    c.second =
        PiecewiseCoupling{frame, segments_from_json(require(require(m, "second"), "segments"))};
  } else {
    c.first = PiecewiseCoupling{frame, segments_from_json(require(j, "segments"))};
  }
  if (j.contains("target")) c.target = dist_from_json(j["target"]);
  return c;
}

Json grid_target_to_json(const GridTarget& t, const GridSpec& spec) {
  Json masses = Json::array();
  for (const auto& v : t.masses) masses.push_back(rat_to_json(v));
  return Json{{"n", spec.n}, {"m", spec.m}, {"masses", std::move(masses)}};
}

GridTarget grid_target_from_json(const Json& j, const GridSpec& spec) {
  if (j.contains("n") && j["n"].get<int>() != spec.n)
    throw ParseError("target file n disagrees with the requested spec");
  if (j.contains("m") && j["m"].get<int>() != spec.m)
    throw ParseError("target file m disagrees with the requested spec");
  GridTarget t;
  for (const auto& v : require(j, "masses")) t.masses.push_back(rat_from_json(v));
  t.validate(spec);
  return t;
}

Json grid_joint_to_json(const GridJoint& joint) {
  Json entries = Json::array();
  for (const auto& v : joint.entries) entries.push_back(rat_to_json(v));
  return Json{{"n", joint.spec.n},
              {"m", joint.spec.m},
              {"layout", "row-major"},
              {"entries", std::move(entries)}};
}

Json feasibility_to_json(const FeasibilityResult& r, bool include_witness) {
  Json j{{"verdict", r.verdict == Feasibility::Feasible ? "Feasible" : "Infeasible"},
         {"pivots", r.pivots}};
  if (r.verdict == Feasibility::Feasible && include_witness && r.witness)
    j["witness"] = grid_joint_to_json(*r.witness);
  if (r.verdict == Feasibility::Infeasible && r.certificate) {
    Json y = Json::array();
    for (const auto& v : r.certificate->y) y.push_back(rat_to_json(v));
    j["certificate"] = Json{{"rows", "margins then sum cells"}, {"y", std::move(y)}};
  }
  return j;
}

Json verify_report_to_json(const VerifyReport& r) {
  Json d = Json::array();
  for (const auto& s : r.discrepancies) d.push_back(s);
  return Json{{"margin_x_ok", r.margin_x_ok},
              {"margin_y_ok", r.margin_y_ok},
              {"sum_law_ok", r.sum_law_ok},
              {"all_ok", r.all_ok()},
              {"discrepancies", std::move(d)}};
}

Json bound_result_to_json(const BoundResult& r) {
  return Json{{"value", rat_to_json(r.value)},
              {"attaining_kind", to_string(r.kind)},
              {"attaining", dist_to_json(r.attaining)}};
}

}  // namespace unisum
