#include "unisum.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "unisum/errors.hpp"
#include "unisum/json_io.hpp"
#include "unisum/sampling.hpp"

using namespace unisum;

struct unisum_dist {
  MixtureDistribution value;
};
struct unisum_coupling {
  Coupling value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
unisum_status guarded(Fn&& fn) {
  try {
    fn();
    return UNISUM_OK;
  } catch (const ParseError& e) {
    g_last_error = e.what();
    return UNISUM_ERR_PARSE;
  } catch (const InvariantError& e) {
    g_last_error = e.what();
    return UNISUM_ERR_INVARIANT;
  } catch (const TimeoutError& e) {
    g_last_error = e.what();
    return UNISUM_ERR_TIMEOUT;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return UNISUM_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return UNISUM_ERR_DOMAIN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return UNISUM_ERR_INTERNAL;
  }
}

void require_ptr(const void* p, const char* what) {
  if (!p) throw std::invalid_argument(std::string("null ") + what);
}

std::optional<std::chrono::steady_clock::time_point> deadline_from_ms(uint64_t ms) {
  if (ms == 0) return std::nullopt;
  return std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
}

Sense sense_from_string(const char* s) {
  require_ptr(s, "sense");
  const std::string v(s);
  if (v == "min") return Sense::Min;
  if (v == "max") return Sense::Max;
  throw std::domain_error("sense must be \"min\" or \"max\"");
}

}  // namespace

extern "C" {

const char* unisum_version(void) { return "1.0.0"; }

const char* unisum_last_error(void) { return g_last_error.c_str(); }

void unisum_string_free(char* s) { std::free(s); }

unisum_status unisum_dist_parse_json(const char* json, unisum_dist** out) {
  return guarded([&] {
    require_ptr(json, "json");
    require_ptr(out, "out");
    *out = new unisum_dist{dist_from_json(parse_json_text(json))};
  });
}

unisum_status unisum_dist_to_json(const unisum_dist* d, char** out_json) {
  return guarded([&] {
    require_ptr(d, "dist");
    require_ptr(out_json, "out");
    *out_json = dup_string(dist_to_json(d->value).dump());
  });
}

void unisum_dist_free(unisum_dist* d) { delete d; }

unisum_status unisum_dist_mean(const unisum_dist* d, char** out_rat) {
  return guarded([&] {
    require_ptr(d, "dist");
    require_ptr(out_rat, "out");
    *out_rat = dup_string(d->value.mean().str());
  });
}

unisum_status unisum_dist_stop_loss(const unisum_dist* d, const char* k, char** out_rat) {
  return guarded([&] {
    require_ptr(d, "dist");
    require_ptr(k, "k");
    require_ptr(out_rat, "out");
    *out_rat = dup_string(d->value.stop_loss(Rat::parse(k)).value.str());
  });
}

unisum_status unisum_dist_quantile(const unisum_dist* d, const char* t, char** out_rat) {
  return guarded([&] {
    require_ptr(d, "dist");
    require_ptr(t, "t");
    require_ptr(out_rat, "out");
    *out_rat = dup_string(d->value.quantile(Rat::parse(t)).str());
  });
}

unisum_status unisum_dist_scale_shift(const unisum_dist* d, const char* scale,
                                      const char* shift, unisum_dist** out) {
  return guarded([&] {
    require_ptr(d, "dist");
    require_ptr(scale, "scale");
    require_ptr(shift, "shift");
    require_ptr(out, "out");
    *out = new unisum_dist{d->value.scale_shift(Rat::parse(scale), Rat::parse(shift))};
  });
}

unisum_status unisum_decide(const unisum_dist* d, int n, const char* hint_json,
                            char** decision_json) {
  return guarded([&] {
    require_ptr(d, "dist");
    require_ptr(decision_json, "out");
    ShapeHint hint;
    if (hint_json) hint = hint_from_json(parse_json_text(hint_json));
    *decision_json = dup_string(decision_to_json(decide(d->value, n, hint)).dump());
  });
}

unisum_status unisum_convex_order_vs_uniform(const unisum_dist* d, int n,
                                             char** decision_json) {
  return guarded([&] {
    require_ptr(d, "dist");
    require_ptr(decision_json, "out");
    const CxCheck cx = convex_order_vs_uniform(d->value, n);
    Decision dec;
    if (cx.member) {
      dec = Decision{Verdict::Member, Rule::CxCharacterizationNGe3, std::monostate{}};
    } else if (cx.fail == CxCheck::Fail::StopLoss) {
      dec = Decision{Verdict::NonMember, Rule::CxViolation,
                     CxWitnessCert{*cx.witness_k, *cx.witness_gap}};
    } else {
      dec = Decision{Verdict::NonMember, Rule::SupportOrMeanViolation,
                     ViolationCert{cx.fail == CxCheck::Fail::Mean ? "mean" : "support", ""}};
    }
    *decision_json = dup_string(decision_to_json(dec).dump());
  });
}

unisum_status unisum_non_integrity(const char* x, char** out_rat) {
  return guarded([&] {
    require_ptr(x, "x");
    require_ptr(out_rat, "out");
    *out_rat = dup_string(non_integrity(Rat::parse(x)).str());
  });
}

unisum_status unisum_synthesize_biatomic(long b_inv, const char* a, unisum_coupling** out) {
  return guarded([&] {
    require_ptr(a, "a");
    require_ptr(out, "out");
    *out = new unisum_coupling{synthesize_biatomic(b_inv, Rat::parse(a))};
  });
}

unisum_status unisum_synthesize_triatomic(char tri_case, const char* T, const char* b,
                                          const char* p1, unisum_coupling** out) {
  return guarded([&] {
    require_ptr(T, "T");
    require_ptr(b, "b");
    require_ptr(p1, "p1");
    require_ptr(out, "out");
    TriCase which;
    switch (tri_case) {
      case 'a': which = TriCase::A; break;
      case 'b': which = TriCase::B; break;
      case 'c': which = TriCase::C; break;
      default: throw std::domain_error("tri_case must be 'a', 'b' or 'c'");
    }
    *out = new unisum_coupling{
        synthesize_triatomic(which, Rat::parse(T), Rat::parse(b), Rat::parse(p1))};
  });
}

unisum_status unisum_extremal_sum_distribution(int n, const char* u, const char* v,
                                               unisum_dist** out) {
  return guarded([&] {
    require_ptr(u, "u");
    require_ptr(v, "v");
    require_ptr(out, "out");
    *out = new unisum_dist{extremal_sum_distribution(n, Rat::parse(u), Rat::parse(v))};
  });
}

unisum_status unisum_coupling_parse_json(const char* json, unisum_coupling** out) {
  return guarded([&] {
    require_ptr(json, "json");
    require_ptr(out, "out");
    *out = new unisum_coupling{coupling_from_json(parse_json_text(json))};
  });
}

unisum_status unisum_coupling_to_json(const unisum_coupling* c, int unit_frame,
                                      char** out_json) {
  return guarded([&] {
    require_ptr(c, "coupling");
    require_ptr(out_json, "out");
    const Coupling& v = c->value;
    *out_json = dup_string(coupling_to_json(unit_frame ? to_unit_frame(v) : v).dump());
  });
}

void unisum_coupling_free(unisum_coupling* c) { delete c; }

unisum_status unisum_verify_coupling(const unisum_coupling* c, const unisum_dist* target,
                                     char** report_json) {
  return guarded([&] {
    require_ptr(c, "coupling");
    require_ptr(report_json, "out");
    const MixtureDistribution* t = target ? &target->value
                                          : (c->value.target ? &*c->value.target : nullptr);
    if (!t) throw std::domain_error("no target: pass one or embed it in the coupling");
    *report_json = dup_string(verify_report_to_json(verify_coupling(c->value, *t)).dump());
  });
}

unisum_status unisum_coupling_sample(const unisum_coupling* c, uint64_t count, uint64_t seed,
                                     double* xs, double* ys) {
  return guarded([&] {
    require_ptr(c, "coupling");
    require_ptr(xs, "xs");
    require_ptr(ys, "ys");
    CouplingSampler sampler(c->value, seed);
    for (uint64_t i = 0; i < count; ++i) {
      const SampleTriple t = sampler.next();
      xs[i] = t.x;
      ys[i] = t.y;
    }
  });
}

unisum_status unisum_coupling_ks(const unisum_coupling* c, const unisum_dist* target,
                                 uint64_t count, uint64_t seed, double* ks_out,
                                 double* dkw99_out) {
  return guarded([&] {
    require_ptr(c, "coupling");
    require_ptr(ks_out, "ks_out");
    if (count == 0) throw std::domain_error("count must be positive");
    const MixtureDistribution* t = target ? &target->value
                                          : (c->value.target ? &*c->value.target : nullptr);
    if (!t) throw std::domain_error("no target: pass one or embed it in the coupling");
    CouplingSampler sampler(c->value, seed);
    std::vector<double> sums(count);
    for (uint64_t i = 0; i < count; ++i) sums[i] = sampler.next().s;
    *ks_out = ks_statistic(sums, *t);
    if (dkw99_out) *dkw99_out = dkw_epsilon(count, 0.01);
  });
}

unisum_status unisum_bounds(int n, const char* a, const char* b, const char* sense,
                            char** result_json) {
  return guarded([&] {
    require_ptr(a, "a");
    require_ptr(b, "b");
    require_ptr(result_json, "out");
    const Sense s = sense_from_string(sense);
    const BoundResult r = s == Sense::Min ? min_open_interval(n, Rat::parse(a), Rat::parse(b))
                                          : max_closed_interval(n, Rat::parse(a), Rat::parse(b));
    Json j = bound_result_to_json(r);
    j["sense"] = s == Sense::Min ? "min" : "max";
    j["interval"] = s == Sense::Min ? "open" : "closed";
    *result_json = dup_string(j.dump());
  });
}

unisum_status unisum_cdf_bounds(int n, const char* x, char** result_json) {
  return guarded([&] {
    require_ptr(x, "x");
    require_ptr(result_json, "out");
    const CdfBounds b = cdf_bounds(n, Rat::parse(x));
    *result_json = dup_string(Json{{"upper_cdf", rat_to_json(b.upper_cdf)},
                                   {"upper_tail", rat_to_json(b.upper_tail)}}
                                  .dump());
  });
}

unisum_status unisum_oracle_discretize(const unisum_dist* d, int n, int m,
                                       char** target_json) {
  return guarded([&] {
    require_ptr(d, "dist");
    require_ptr(target_json, "out");
    const GridSpec spec{n, m};
    spec.validate();
    *target_json = dup_string(grid_target_to_json(discretize(d->value, n, m), spec).dump());
  });
}

unisum_status unisum_oracle_feasible(const char* target_json, int n, int m, int emit_witness,
                                     uint64_t timeout_ms, char** report_json) {
  return guarded([&] {
    require_ptr(target_json, "target");
    require_ptr(report_json, "out");
    const GridSpec spec{n, m};
    spec.validate();
    const GridTarget target = grid_target_from_json(parse_json_text(target_json), spec);
    const FeasibilityResult r = feasible(target, spec, deadline_from_ms(timeout_ms));
    *report_json = dup_string(feasibility_to_json(r, emit_witness != 0).dump());
  });
}

unisum_status unisum_oracle_extreme_prob(int n, int m, int lo_cell, int hi_cell,
                                         const char* sense, uint64_t timeout_ms,
                                         char** value_out) {
  return guarded([&] {
    require_ptr(value_out, "out");
    const GridSpec spec{n, m};
    spec.validate();
    const Rat v = grid_extreme_prob(spec, lo_cell, hi_cell, sense_from_string(sense),
                                    deadline_from_ms(timeout_ms));
    *value_out = dup_string(v.str());
  });
}

}  // extern "C"
