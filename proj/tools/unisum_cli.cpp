// Command-line front end. Links only the extern-C API from unisum.h; all
// math stays behind the shared library.

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "unisum.h"

namespace {

constexpr uint64_t kDefaultSeed = 42;  // documented default; see README

// exit codes: 0..2 verdicts, 64 parse/usage, 65 invariant, 66 domain,
// 69 timeout, 70 internal
int exit_code_for(unisum_status s) {
  switch (s) {
    case UNISUM_OK: return 0;
    case UNISUM_ERR_PARSE: return 64;
    case UNISUM_ERR_INVARIANT: return 65;
    case UNISUM_ERR_DOMAIN: return 66;
    case UNISUM_ERR_TIMEOUT: return 69;
    case UNISUM_ERR_INTERNAL: return 70;
  }
  return 70;
}

[[noreturn]] void fail(unisum_status s) {
  std::fprintf(stderr, "error: %s\n", unisum_last_error());
  std::exit(exit_code_for(s));
}

void check(unisum_status s) {
  if (s != UNISUM_OK) fail(s);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot read '%s'\n", path.c_str());
    std::exit(64);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot write '%s'\n", path.c_str());
    std::exit(70);
  }
  out << body << "\n";
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { unisum_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct OwnedDist {
  unisum_dist* p = nullptr;
  ~OwnedDist() { unisum_dist_free(p); }
};

struct OwnedCoupling {
  unisum_coupling* p = nullptr;
  ~OwnedCoupling() { unisum_coupling_free(p); }
};

void load_dist(const std::string& path, OwnedDist& out) {
  check(unisum_dist_parse_json(read_file(path).c_str(), &out.p));
}

void load_coupling(const std::string& path, OwnedCoupling& out) {
  check(unisum_coupling_parse_json(read_file(path).c_str(), &out.p));
}

bool json_field_is(const std::string& json, const char* key, const char* value) {
  // verdict extraction without a JSON dependency: the payloads are flat
  const std::string needle = std::string("\"") + key + "\":\"" + value + "\"";
  return json.find(needle) != std::string::npos;
}

// Carves the object value of `key` out of library-produced JSON (no string
// values containing braces appear in these payloads).
std::string json_extract_object(const std::string& json, const char* key) {
  const std::string needle = std::string("\"") + key + "\":{";
  const auto at = json.find(needle);
  if (at == std::string::npos) return {};
  std::size_t i = at + needle.size() - 1;
  int depth = 0;
  for (std::size_t j = i; j < json.size(); ++j) {
    if (json[j] == '{') ++depth;
    if (json[j] == '}' && --depth == 0) return json.substr(i, j - i + 1);
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unisum: laws of sums of standard uniforms under arbitrary dependence"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  uint64_t seed = kDefaultSeed;
  bool quiet = false;
  bool json_output = true;
  app.add_option("--seed", seed, "seed for every randomized path (default 42)");
  app.add_flag("--quiet", quiet, "suppress progress notes on stderr");
  app.add_flag("--json", json_output, "machine-readable output (default; kept for scripts)");

  // ---- check -------------------------------------------------------------
  auto* cmd_check = app.add_subcommand("check", "decide membership of a distribution");
  std::string check_file;
  int check_n = 2;
  std::string hint_unimodal, hint_monotone;
  bool hint_symmetric = false;
  cmd_check->add_option("dist", check_file, "distribution JSON file")->required();
  cmd_check->add_option("--n", check_n, "number of uniform margins")->required();
  cmd_check->add_option("--assume-unimodal", hint_unimodal,
                        "declare a unimodal density, optionally with its mode p/q")
      ->expected(0, 1);
  cmd_check->add_option("--assume-monotone", hint_monotone,
                        "declare a monotone density: increasing|decreasing|any");
  cmd_check->add_flag("--assume-symmetric", hint_symmetric,
                      "declare a unimodal symmetric density");

  // ---- synthesize ----------------------------------------------------------
  auto* cmd_synth = app.add_subcommand("synthesize", "emit an explicit coupling or extremal law");
  auto* synth_bi = cmd_synth->add_subcommand("biatomic", "coupling for a mean-1 bi-atomic target");
  long bi_binv = 0;
  std::string bi_b, bi_a, synth_out, synth_frame = "native";
  synth_bi->add_option("--b-inv", bi_binv, "spacing reciprocal 1/b (positive integer)");
  synth_bi->add_option("--b", bi_b, "spacing as a rational (must be a unit fraction)");
  synth_bi->add_option("--a", bi_a, "lower atom a, 1-b < a < 1")->required();

  auto* synth_tri = cmd_synth->add_subcommand("triatomic", "ladder-frame tri-atomic coupling");
  std::string tri_case, tri_T, tri_b, tri_p1;
  synth_tri->add_option("--case", tri_case, "a|b|c")->required();
  synth_tri->add_option("--T", tri_T, "margin length (X ~ U[0,T])")->required();
  synth_tri->add_option("--b", tri_b, "top support point (sum on {b-2,b-1,b})")->required();
  synth_tri->add_option("--p1", tri_p1, "middle mass P(Z = b-1)")->required();

  auto* synth_ext = cmd_synth->add_subcommand("extremal", "tri-atomic extremal law F_{u,v}");
  int ext_n = 3;
  std::string ext_u, ext_v;
  synth_ext->add_option("--n", ext_n)->required();
  synth_ext->add_option("--u", ext_u)->required();
  synth_ext->add_option("--v", ext_v)->required();

  cmd_synth->add_option("-o,--out", synth_out, "write the artifact to this file");
  cmd_synth->add_option("--frame", synth_frame, "coupling frame: native|unit|both");

  // ---- bounds --------------------------------------------------------------
  auto* cmd_bounds = app.add_subcommand("bounds", "sharp interval-probability bounds, n >= 3");
  int bounds_n = 3;
  std::string bounds_a, bounds_b, bounds_sense = "both", bounds_attaining;
  std::string bounds_cdf_x;
  cmd_bounds->add_option("--n", bounds_n)->required();
  cmd_bounds->add_option("--a", bounds_a, "left endpoint");
  cmd_bounds->add_option("--b", bounds_b, "interval length");
  cmd_bounds->add_option("--sense", bounds_sense, "min|max|both (default both)");
  cmd_bounds->add_option("--emit-attaining", bounds_attaining, "write the attaining law here");
  cmd_bounds->add_option("--cdf-at", bounds_cdf_x, "also print CDF/tail bounds at x");

  // ---- oracle ----------------------------------------------------------------
  auto* cmd_oracle = app.add_subcommand("oracle", "exact grid feasibility / extreme probabilities");
  int oracle_n = 2, oracle_m = 2;
  std::string oracle_target, oracle_dist, oracle_witness, oracle_sense, oracle_range;
  uint64_t oracle_timeout_ms = 0;
  cmd_oracle->add_option("--n", oracle_n, "margins: 2 or 3")->required();
  cmd_oracle->add_option("--m", oracle_m, "cells per margin")->required();
  cmd_oracle->add_option("--target", oracle_target, "grid target JSON file");
  cmd_oracle->add_option("--dist", oracle_dist, "distribution JSON file (discretized first)");
  cmd_oracle->add_option("--emit-witness", oracle_witness, "write the witness joint here");
  cmd_oracle->add_option("--sense", oracle_sense, "min|max: optimize P(sum cell in range)");
  cmd_oracle->add_option("--range", oracle_range, "LO:HI sum-cell window for --sense");
  cmd_oracle->add_option("--timeout-ms", oracle_timeout_ms, "abort the solve after this budget");
  bool oracle_force = false;
  cmd_oracle->add_flag("--force-large", oracle_force,
                       "allow n=3 grids beyond the desk-scale default m <= 24");

  // ---- verify -----------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "exact coupling verification (+ optional MC)");
  std::string verify_file, verify_target;
  uint64_t verify_mc = 0;
  cmd_verify->add_option("coupling", verify_file, "coupling JSON file")->required();
  cmd_verify->add_option("--target", verify_target, "target law (defaults to embedded)");
  cmd_verify->add_option("--mc", verify_mc, "also run a Monte Carlo KS check with N samples");

  // ---- sample -----------------------------------------------------------------
  auto* cmd_sample = app.add_subcommand("sample", "stream (x, y, x+y) draws from a coupling");
  std::string sample_file, sample_target;
  uint64_t sample_count = 1000;
  cmd_sample->add_option("coupling", sample_file, "coupling JSON file")->required();
  cmd_sample->add_option("--count", sample_count, "number of draws");
  cmd_sample->add_option("--target", sample_target, "target law (defaults to embedded)");

  CLI11_PARSE(app, argc, argv);

  if (cmd_check->parsed()) {
    OwnedDist d;
    load_dist(check_file, d);
    std::string hint;
    if (!hint_monotone.empty()) {
      hint = "{\"kind\":\"monotone\"";
      if (hint_monotone == "increasing" || hint_monotone == "decreasing")
        hint += std::string(",\"direction\":\"") + hint_monotone + "\"";
      else if (hint_monotone != "any") {
        std::fprintf(stderr, "error: --assume-monotone takes increasing|decreasing|any\n");
        return 64;
      }
      hint += "}";
    } else if (hint_symmetric) {
      hint = "{\"kind\":\"unimodal_symmetric\"}";
    } else if (cmd_check->count("--assume-unimodal") > 0) {
      hint = hint_unimodal.empty()
                 ? std::string("{\"kind\":\"unimodal\"}")
                 : std::string("{\"kind\":\"unimodal\",\"mode\":\"") + hint_unimodal + "\"}";
    }
    OwnedString decision;
    check(unisum_decide(d.p, check_n, hint.empty() ? nullptr : hint.c_str(), &decision.p));
    std::printf("%s\n", decision.p);
    if (json_field_is(decision.str(), "verdict", "Member")) return 0;
    if (json_field_is(decision.str(), "verdict", "NonMember")) return 1;
    return 2;
  }

  if (cmd_synth->parsed()) {
    if (synth_ext->parsed()) {
      OwnedDist d;
      check(unisum_extremal_sum_distribution(ext_n, ext_u.c_str(), ext_v.c_str(), &d.p));
      OwnedString js;
      check(unisum_dist_to_json(d.p, &js.p));
      if (!synth_out.empty()) write_file(synth_out, js.str());
      std::printf("%s\n", js.p);
      return 0;
    }
    OwnedCoupling c;
    if (synth_bi->parsed()) {
      if (bi_binv == 0 && bi_b.empty()) {
        std::fprintf(stderr, "error: synthesize biatomic needs --b-inv or --b\n");
        return 64;
      }
      if (bi_binv == 0) {
        // reject a non-unit-fraction spacing before synthesis
        const auto slash = bi_b.find('/');
        long num = 0, den = 1;
        try {
          num = std::stol(bi_b.substr(0, slash));
          if (slash != std::string::npos) den = std::stol(bi_b.substr(slash + 1));
        } catch (...) {
          std::fprintf(stderr, "error: bad rational '%s'\n", bi_b.c_str());
          return 64;
        }
        if (num != 1 || den < 1) {
          std::fprintf(stderr,
                       "error: bi-atomic target with spacing %s admits no coupling (1/b not in N)\n",
                       bi_b.c_str());
          return 66;
        }
        bi_binv = den;
      }
      check(unisum_synthesize_biatomic(bi_binv, bi_a.c_str(), &c.p));
    } else if (synth_tri->parsed()) {
      if (tri_case.size() != 1) {
        std::fprintf(stderr, "error: --case must be a, b or c\n");
        return 64;
      }
      check(unisum_synthesize_triatomic(tri_case[0], tri_T.c_str(), tri_b.c_str(),
                                        tri_p1.c_str(), &c.p));
    } else {
      std::fprintf(stderr, "error: synthesize needs a subcommand (biatomic|triatomic|extremal)\n");
      return 64;
    }
    OwnedString native, unit;
    check(unisum_coupling_to_json(c.p, 0, &native.p));
    check(unisum_coupling_to_json(c.p, 1, &unit.p));
    std::string body;
    if (synth_frame == "unit")
      body = unit.str();
    else if (synth_frame == "both")
      body = std::string("{\"native\":") + native.str() + ",\"unit\":" + unit.str() + "}";
    else
      body = native.str();
    if (!synth_out.empty()) write_file(synth_out, body);
    std::printf("%s\n", body.c_str());
    return 0;
  }

  if (cmd_bounds->parsed()) {
    std::string out = "{";
    bool first = true;
    auto append = [&](const std::string& key, const std::string& payload) {
      if (!first) out += ",";
      out += "\"" + key + "\":" + payload;
      first = false;
    };
    if (!bounds_a.empty() || !bounds_b.empty()) {
      if (bounds_a.empty() || bounds_b.empty()) {
        std::fprintf(stderr, "error: bounds needs both --a and --b\n");
        return 64;
      }
      OwnedString attaining_payload;
      if (bounds_sense == "min" || bounds_sense == "both") {
        OwnedString r;
        check(unisum_bounds(bounds_n, bounds_a.c_str(), bounds_b.c_str(), "min", &r.p));
        append("min_open", r.str());
        if (!bounds_attaining.empty() && bounds_sense == "min")
          write_file(bounds_attaining, json_extract_object(r.str(), "attaining"));
      }
      if (bounds_sense == "max" || bounds_sense == "both") {
        OwnedString r;
        check(unisum_bounds(bounds_n, bounds_a.c_str(), bounds_b.c_str(), "max", &r.p));
        append("max_closed", r.str());
        if (!bounds_attaining.empty() && bounds_sense != "min")
          write_file(bounds_attaining, json_extract_object(r.str(), "attaining"));
      }
      if (bounds_sense != "min" && bounds_sense != "max" && bounds_sense != "both") {
        std::fprintf(stderr, "error: --sense must be min, max or both\n");
        return 64;
      }
    }
    if (!bounds_cdf_x.empty()) {
      OwnedString r;
      check(unisum_cdf_bounds(bounds_n, bounds_cdf_x.c_str(), &r.p));
      append("cdf", r.str());
    }
    if (first) {
      std::fprintf(stderr, "error: bounds needs --a/--b or --cdf-at\n");
      return 64;
    }
    out += "}";
    std::printf("%s\n", out.c_str());
    return 0;
  }

  if (cmd_oracle->parsed()) {
    if (oracle_n == 3 && oracle_m > 24 && !oracle_force) {
      std::fprintf(stderr,
                   "error: n=3 grids above m=24 get large; pass --force-large to proceed\n");
      return 66;
    }
    if (!oracle_sense.empty()) {
      if (oracle_range.empty()) {
        std::fprintf(stderr, "error: --sense needs --range LO:HI\n");
        return 64;
      }
      const auto colon = oracle_range.find(':');
      if (colon == std::string::npos) {
        std::fprintf(stderr, "error: --range must be LO:HI\n");
        return 64;
      }
      int lo = 0, hi = 0;
      try {
        lo = std::stoi(oracle_range.substr(0, colon));
        hi = std::stoi(oracle_range.substr(colon + 1));
      } catch (...) {
        std::fprintf(stderr, "error: --range must be LO:HI with integer cells\n");
        return 64;
      }
      OwnedString v;
      check(unisum_oracle_extreme_prob(oracle_n, oracle_m, lo, hi, oracle_sense.c_str(),
                                       oracle_timeout_ms, &v.p));
      std::printf("{\"sense\":\"%s\",\"range\":[%d,%d],\"value\":\"%s\"}\n",
                  oracle_sense.c_str(), lo, hi, v.p);
      return 0;
    }

    std::string target_json;
    if (!oracle_target.empty()) {
      target_json = read_file(oracle_target);
    } else if (!oracle_dist.empty()) {
      OwnedDist d;
      load_dist(oracle_dist, d);
      OwnedString t;
      check(unisum_oracle_discretize(d.p, oracle_n, oracle_m, &t.p));
      target_json = t.str();
      if (!quiet) std::fprintf(stderr, "discretized target: %s\n", t.p);
    } else {
      std::fprintf(stderr, "error: oracle needs --target, --dist, or --sense/--range\n");
      return 64;
    }
    OwnedString report;
    check(unisum_oracle_feasible(target_json.c_str(), oracle_n, oracle_m,
                                 oracle_witness.empty() ? 0 : 1, oracle_timeout_ms, &report.p));
    if (!oracle_witness.empty() && json_field_is(report.str(), "verdict", "Feasible")) {
      const std::string witness = json_extract_object(report.str(), "witness");
      write_file(oracle_witness, witness.empty() ? report.str() : witness);
    }
    std::printf("%s\n", report.p);
    return json_field_is(report.str(), "verdict", "Feasible") ? 0 : 1;
  }

  if (cmd_verify->parsed()) {
    OwnedCoupling c;
    load_coupling(verify_file, c);
    OwnedDist target;
    if (!verify_target.empty()) load_dist(verify_target, target);
    OwnedString report;
    check(unisum_verify_coupling(c.p, target.p, &report.p));
    std::string out = report.str();
    bool ok = out.find("\"all_ok\":true") != std::string::npos;
    if (verify_mc > 0) {
      double ks = 0, band = 0;
      check(unisum_coupling_ks(c.p, target.p, verify_mc, seed, &ks, &band));
      const bool mc_ok = ks <= band;
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    ",\"mc\":{\"n\":%" PRIu64 ",\"seed\":%" PRIu64
                    ",\"ks\":%.6e,\"dkw99\":%.6e,\"pass\":%s}",
                    verify_mc, seed, ks, band, mc_ok ? "true" : "false");
      out.insert(out.rfind('}'), buf);
      ok = ok && mc_ok;
    }
    std::printf("%s\n", out.c_str());
    return ok ? 0 : 1;
  }

  if (cmd_sample->parsed()) {
    OwnedCoupling c;
    load_coupling(sample_file, c);
    OwnedDist target;
    if (!sample_target.empty()) load_dist(sample_target, target);
    std::vector<double> xs(sample_count), ys(sample_count);
    check(unisum_coupling_sample(c.p, sample_count, seed, xs.data(), ys.data()));
    for (uint64_t i = 0; i < sample_count; ++i)
      std::printf("%.17g %.17g %.17g\n", xs[i], ys[i], xs[i] + ys[i]);
    double ks = 0, band = 0;
    const unisum_status s =
        unisum_coupling_ks(c.p, target.p, sample_count, seed, &ks, &band);
    if (s == UNISUM_OK) {
      std::printf("{\"ks\":%.6e,\"dkw99\":%.6e,\"n\":%" PRIu64 ",\"seed\":%" PRIu64
                  ",\"pass\":%s}\n",
                  ks, band, sample_count, seed, ks <= band ? "true" : "false");
    } else if (!quiet) {
      std::fprintf(stderr, "note: no target declared, skipping the KS report\n");
    }
    return 0;
  }

  return 64;
}
