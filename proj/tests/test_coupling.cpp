#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "support/test_util.hpp"
#include "unisum/coupling.hpp"
#include "unisum/json_io.hpp"
#include "unisum/membership.hpp"
#include "unisum/oracle.hpp"
#include "unisum/sampling.hpp"

using namespace unisum;
using testutil::R;

namespace {

void check_exact(const Coupling& c) {
  REQUIRE(c.target.has_value());
  const auto report = verify_coupling(c, *c.target);
  INFO("discrepancies: ", report.discrepancies.empty() ? "" : report.discrepancies.front());
  CHECK(report.margin_x_ok);
  CHECK(report.margin_y_ok);
  CHECK(report.sum_law_ok);
}

}  // namespace

TEST_CASE("bi-atomic coupling, unit spacing") {
  const auto c = synthesize_biatomic(1, R("1/2"));
  // Y = 1/2 - X on [0,1/2), Y = 3/2 - X on [1/2,1)
  REQUIRE(c.first.segments.size() == 2);
  CHECK(c.first.segments[0].intercept == R("1/2"));
  CHECK(c.first.segments[0].x_hi == R("1/2"));
  CHECK(c.first.segments[1].intercept == R("3/2"));
  CHECK(c.first.frame.x_hi == Rat(1));
  CHECK(*c.target == MixtureDistribution::from_parts(
                         {{R("1/2"), R("1/2")}, {R("3/2"), R("1/2")}}, {}));
  check_exact(c);
}

TEST_CASE("bi-atomic couplings across the family") {
  for (const auto& [k, a] : std::vector<std::pair<long, const char*>>{
           {2, "3/4"}, {3, "5/6"}, {4, "9/10"}, {2, "2/3"}, {5, "17/20"}}) {
    const auto c = synthesize_biatomic(k, R(a));
    check_exact(c);
    // target is the unique mean-1 law on {a, a+1/k}
    CHECK(c.target->mean() == Rat(1));
    CHECK(decide(*c.target, 2).verdict == Verdict::Member);
  }
}

TEST_CASE("bi-atomic synthesis rejections") {
  CHECK_THROWS_AS(synthesize_biatomic(0, R("1/2")), std::domain_error);
  CHECK_THROWS_AS(synthesize_biatomic(2, R("1/4")), std::domain_error);  // a <= 1 - b
  CHECK_THROWS_AS(synthesize_biatomic(2, Rat(1)), std::domain_error);
  CHECK_THROWS_AS(synthesize_biatomic_spacing(R("2/5"), R("4/5")), std::domain_error);
  CHECK_NOTHROW(synthesize_biatomic_spacing(R("1/3"), R("5/6")));
}

TEST_CASE("tri-atomic case (a): integer center") {
  // T = 5/2 = 2*1 + 1/2, minimal middle mass r/T = 1/5
  const auto c = synthesize_triatomic(TriCase::A, R("5/2"), Rat(1), R("1/5"));
  CHECK_FALSE(c.is_mixture());
  CHECK(*c.target == MixtureDistribution::from_parts(
                         {{Rat(-1), R("2/5")}, {Rat(0), R("1/5")}, {Rat(1), R("2/5")}}, {}));
  check_exact(c);

  // interior p1 comes out as a mixture with the antithetic map
  const auto mix = synthesize_triatomic(TriCase::A, R("5/2"), Rat(1), R("3/5"));
  CHECK(mix.is_mixture());
  check_exact(mix);

  // T = 2m - r branch
  check_exact(synthesize_triatomic(TriCase::A, R("3/2"), Rat(1), R("1/3")));
  check_exact(synthesize_triatomic(TriCase::A, R("7/2"), Rat(1), R("1/7")));
  // even T: zero middle mass achievable
  check_exact(synthesize_triatomic(TriCase::A, Rat(4), Rat(1), Rat(0)));
  check_exact(synthesize_triatomic(TriCase::A, Rat(4), Rat(1), R("1/2")));
  // odd T decomposes with r = 1: minimum 1/T
  check_exact(synthesize_triatomic(TriCase::A, Rat(3), Rat(1), R("1/3")));
  check_exact(synthesize_triatomic(TriCase::A, Rat(1), Rat(1), Rat(1)));

  CHECK_THROWS_AS(synthesize_triatomic(TriCase::A, R("5/2"), Rat(1), R("1/6")),
                  std::domain_error);  // below r/T
  CHECK_THROWS_AS(synthesize_triatomic(TriCase::A, Rat(3), Rat(1), R("1/4")),
                  std::domain_error);  // below 1/T on odd T
  CHECK_THROWS_AS(synthesize_triatomic(TriCase::A, R("1/2"), Rat(1), Rat(1)),
                  std::domain_error);  // no 2m +- r decomposition
  CHECK_THROWS_AS(synthesize_triatomic(TriCase::A, Rat(2), R("1/2"), Rat(0)),
                  std::domain_error);  // b must be 1
}

TEST_CASE("tri-atomic case (b): even ladder length") {
  const auto c = synthesize_triatomic(TriCase::B, Rat(2), R("1/2"), Rat(0));
  CHECK(*c.target == MixtureDistribution::from_parts(
                         {{R("-3/2"), R("1/4")}, {R("1/2"), R("3/4")}}, {}));
  check_exact(c);

  check_exact(synthesize_triatomic(TriCase::B, Rat(2), R("1/2"), R("1/4")));  // mixture
  check_exact(synthesize_triatomic(TriCase::B, Rat(4), R("3/4"), R("3/4")));  // max p1
  check_exact(synthesize_triatomic(TriCase::B, Rat(6), R("1/3"), R("1/6")));
  // mirrored range b in (1,2)
  check_exact(synthesize_triatomic(TriCase::B, Rat(2), R("3/2"), R("1/4")));
  check_exact(synthesize_triatomic(TriCase::B, Rat(4), R("5/4"), Rat(0)));

  CHECK_THROWS_AS(synthesize_triatomic(TriCase::B, Rat(3), R("1/2"), Rat(0)),
                  std::domain_error);  // odd T
  CHECK_THROWS_AS(synthesize_triatomic(TriCase::B, Rat(2), R("1/2"), R("3/5")),
                  std::domain_error);  // p1 > b
  CHECK_THROWS_AS(synthesize_triatomic(TriCase::B, Rat(2), Rat(1), Rat(0)),
                  std::domain_error);  // b = 1 belongs to case (a)
}

TEST_CASE("tri-atomic case (c): odd ladder length") {
  const auto c = synthesize_triatomic(TriCase::C, Rat(3), R("1/2"), R("1/6"));
  CHECK_FALSE(c.is_mixture());
  check_exact(c);
  CHECK(c.target->atoms()[1].mass == R("1/6"));  // b/T, the smallest value

  check_exact(synthesize_triatomic(TriCase::C, Rat(3), R("1/2"), R("1/3")));  // mixture
  check_exact(synthesize_triatomic(TriCase::C, Rat(3), R("1/2"), R("1/2")));  // max
  check_exact(synthesize_triatomic(TriCase::C, Rat(5), R("2/3"), R("2/15")));
  check_exact(synthesize_triatomic(TriCase::C, Rat(1), R("1/2"), R("1/2")));
  // mirrored b in (1,2)
  check_exact(synthesize_triatomic(TriCase::C, Rat(3), R("4/3"), R("2/9")));
  check_exact(synthesize_triatomic(TriCase::C, Rat(5), R("3/2"), R("1/10")));

  CHECK_THROWS_AS(synthesize_triatomic(TriCase::C, Rat(2), R("1/2"), R("1/4")),
                  std::domain_error);  // even T
  CHECK_THROWS_AS(synthesize_triatomic(TriCase::C, Rat(3), R("1/2"), R("1/7")),
                  std::domain_error);  // below b/T
}

TEST_CASE("the minimal case-(a) coupling matches the tri-atomic threshold") {
  // in the unit frame a case-(a) coupling realizes the equidistant law
  // with center 1 and spacing 1/T, whose middle-mass threshold is the
  // measure of non-integrity of T/2; synthesis must cut off exactly there
  for (const char* Ts : {"5/2", "3", "7/2", "4", "9/2"}) {
    const Rat T = R(Ts);
    const Rat threshold = non_integrity(T / Rat(2));
    if (threshold.sign() > 0)
      CHECK_THROWS_AS(synthesize_triatomic(TriCase::A, T, Rat(1), threshold - R("1/1000")),
                      std::domain_error);
    const auto c = synthesize_triatomic(TriCase::A, T, Rat(1), threshold);
    CHECK(verify_coupling(c, *c.target).all_ok());
    const auto unit = to_unit_frame(c);
    CHECK(verify_coupling(unit, *unit.target).all_ok());
    if (threshold.sign() > 0)
      CHECK(decide(*unit.target, 2).verdict == Verdict::Member);
  }
}

TEST_CASE("unit-frame rescaling") {
  // ladder-frame tri-atomic becomes an equidistant mean-1 law on U[0,1]^2
  const auto c = synthesize_triatomic(TriCase::C, Rat(3), R("1/2"), R("1/6"));
  const auto u = to_unit_frame(c);
  CHECK(u.first.frame.x_lo == Rat(0));
  CHECK(u.first.frame.x_hi == Rat(1));
  CHECK(u.first.frame.y_lo == Rat(0));
  CHECK(u.first.frame.y_hi == Rat(1));
  REQUIRE(u.target.has_value());
  CHECK(u.target->mean() == Rat(1));
  // atoms {a-b, a, a+b} with b = 1/T = 1/3 and a = 1 + (b~-1)/T = 5/6
  CHECK(u.target->atoms()[1].loc == R("5/6"));
  CHECK(u.target->atoms()[1].loc - u.target->atoms()[0].loc == R("1/3"));
  check_exact(u);
  CHECK(decide(*u.target, 2).verdict == Verdict::Member);

  // mixtures rescale component-wise
  const auto mix = to_unit_frame(synthesize_triatomic(TriCase::B, Rat(2), R("1/2"), R("1/4")));
  check_exact(mix);
}

TEST_CASE("mirror realizes the reflected sum law") {
  const auto c = synthesize_triatomic(TriCase::B, Rat(2), R("1/2"), Rat(0));
  const auto m = mirror(c.first);
  Coupling mc;
  mc.first = m;
  const auto reflected = c.target->scale_shift(Rat(-1), Rat(0));
  CHECK(verify_coupling(mc, reflected).all_ok());
}

TEST_CASE("verify_coupling flags broken couplings") {
  // overlapping segments: not a partition
  PiecewiseCoupling broken{Frame{Rat(0), Rat(1), Rat(0), Rat(1)},
                           {{Rat(0), R("2/3"), Slope::Minus, Rat(1)},
                            {R("1/3"), Rat(1), Slope::Minus, Rat(2)}}};
  Coupling bc;
  bc.first = broken;
  const auto report = verify_coupling(bc, MixtureDistribution::point_mass(1));
  CHECK_FALSE(report.margin_x_ok);
  CHECK_FALSE(report.all_ok());
  CHECK_FALSE(report.discrepancies.empty());

  // comonotone map: correct margins, sum is U[0,2], not delta_1
  PiecewiseCoupling identity{Frame{Rat(0), Rat(1), Rat(0), Rat(1)},
                             {{Rat(0), Rat(1), Slope::Plus, Rat(0)}}};
  Coupling ic;
  ic.first = identity;
  CHECK(verify_coupling(ic, MixtureDistribution::uniform(0, 2)).all_ok());
  const auto bad = verify_coupling(ic, MixtureDistribution::point_mass(1));
  CHECK(bad.margin_x_ok);
  CHECK(bad.margin_y_ok);
  CHECK_FALSE(bad.sum_law_ok);

  // antithetic map realizes the point mass
  PiecewiseCoupling anti{Frame{Rat(0), Rat(1), Rat(0), Rat(1)},
                         {{Rat(0), Rat(1), Slope::Minus, Rat(1)}}};
  Coupling ac;
  ac.first = anti;
  CHECK(verify_coupling(ac, MixtureDistribution::point_mass(1)).all_ok());

  // y margin failure: map leaves the frame
  PiecewiseCoupling off{Frame{Rat(0), Rat(1), Rat(0), Rat(1)},
                        {{Rat(0), Rat(1), Slope::Plus, R("1/2")}}};
  Coupling oc;
  oc.first = off;
  CHECK_FALSE(verify_coupling(oc, MixtureDistribution::uniform(1, 3)).margin_y_ok);
}

TEST_CASE("synthesis rejection agrees with the grid oracle") {
  // p1 below r/T: the construction refuses, and the matching unit-frame
  // target is infeasible on a compatible grid
  CHECK_THROWS_AS(synthesize_triatomic(TriCase::A, Rat(3), Rat(1), R("3/10")),
                  std::domain_error);
  const auto target = MixtureDistribution::from_parts(
      {{R("2/3"), R("7/20")}, {Rat(1), R("3/10")}, {R("4/3"), R("7/20")}}, {});
  CHECK(feasible(discretize(target, 2, 12), GridSpec{2, 12}).verdict ==
        Feasibility::Infeasible);
  // at the minimum the target is feasible and the coupling exists
  const auto ok_target = MixtureDistribution::from_parts(
      {{R("2/3"), R("1/3")}, {Rat(1), R("1/3")}, {R("4/3"), R("1/3")}}, {});
  CHECK(feasible(discretize(ok_target, 2, 12), GridSpec{2, 12}).verdict ==
        Feasibility::Feasible);
  CHECK_NOTHROW(synthesize_triatomic(TriCase::A, Rat(3), Rat(1), R("1/3")));
}

TEST_CASE("extremal sum distributions F_{u,v}") {
  CHECK(extremal_sum_distribution(3, R("3/2"), R("3/2")) ==
        MixtureDistribution::from_parts({{R("3/4"), R("1/2")}, {R("9/4"), R("1/2")}}, {}));
  CHECK(extremal_sum_distribution(3, Rat(0), Rat(3)) ==
        MixtureDistribution::point_mass(R("3/2")));
  CHECK(extremal_sum_distribution(4, Rat(1), Rat(2)) ==
        MixtureDistribution::from_parts(
            {{R("1/2"), R("1/4")}, {R("3/2"), R("1/4")}, {Rat(3), R("1/2")}}, {}));
  CHECK(extremal_sum_distribution(4, Rat(1), Rat(2)).mean() == Rat(2));
  CHECK_THROWS_AS(extremal_sum_distribution(3, Rat(2), Rat(1)), std::domain_error);
  CHECK_THROWS_AS(extremal_sum_distribution(3, Rat(0), Rat(4)), std::domain_error);

  testutil::Rng rng(24601);
  for (int it = 0; it < 40; ++it) {
    const int n = 3 + static_cast<int>(testutil::rand_int(rng, 0, 1));
    Rat u = testutil::rand_rat(rng, n, 6);
    Rat v = testutil::rand_rat(rng, n, 6);
    if (v < u) std::swap(u, v);
    const auto f = extremal_sum_distribution(n, u, v);
    CHECK(f.mean() == Rat(n, 2));
    CHECK(decide_n_ge_3(f, n).verdict == Verdict::Member);
  }
}

TEST_CASE("synthesized couplings discretize to feasible grid instances") {
  // a slope +-1 coupling whose unit-frame breakpoints sit on the 1/m grid
  // maps grid cells to grid cells, so the discretized target must be
  // feasible; the LP oracle confirms it through an independent route
  const std::vector<Coupling> batch = {
      synthesize_biatomic(1, R("1/2")),
      synthesize_biatomic(2, R("3/4")),
      synthesize_biatomic(3, R("5/6")),
      synthesize_triatomic(TriCase::A, R("5/2"), Rat(1), R("1/5")),
      synthesize_triatomic(TriCase::A, R("3/2"), Rat(1), R("1/3")),
      synthesize_triatomic(TriCase::A, Rat(3), Rat(1), R("1/3")),
      synthesize_triatomic(TriCase::B, Rat(2), R("1/2"), Rat(0)),
      synthesize_triatomic(TriCase::B, Rat(2), R("1/2"), R("1/4")),
      synthesize_triatomic(TriCase::C, Rat(3), R("1/2"), R("1/6")),
      synthesize_triatomic(TriCase::C, Rat(3), R("4/3"), R("2/9")),
  };
  for (const auto& c : batch) {
    const auto unit = to_unit_frame(c);
    mpz_class l(1);
    auto fold = [&l](const Rat& r) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.den().get_mpz_t()); };
    for (const auto* map : {&unit.first, unit.second ? &*unit.second : &unit.first})
      for (const auto& s : map->segments) {
        fold(s.x_lo);
        fold(s.x_hi);
      }
    for (const auto& a : unit.target->atoms()) fold(a.loc);
    REQUIRE(l.fits_sint_p());
    int m = static_cast<int>(l.get_si());
    if (m < 2) m *= 2;
    REQUIRE(m <= 60);
    const auto r = feasible(discretize(*unit.target, 2, m), GridSpec{2, m});
    CHECK(r.verdict == Feasibility::Feasible);
  }
}

TEST_CASE("coupling JSON round-trip") {
  const auto couplings = {
      synthesize_biatomic(2, R("3/4")),
      synthesize_triatomic(TriCase::A, R("5/2"), Rat(1), R("3/5")),
      synthesize_triatomic(TriCase::C, Rat(3), R("1/2"), R("1/6")),
  };
  for (const auto& c : couplings) {
    const auto j = coupling_to_json(c);
    const auto back = coupling_from_json(j);
    CHECK(coupling_to_json(back) == j);
    CHECK(verify_coupling(back, *c.target).all_ok());
  }
}

TEST_CASE("deterministic sampling and the DKW band") {
  const auto c = synthesize_triatomic(TriCase::A, R("5/2"), Rat(1), R("3/5"));
  CouplingSampler s1(c, 42), s2(c, 42), s3(c, 43);
  bool all_same = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const auto a = s1.next(), b = s2.next(), d = s3.next();
    all_same = all_same && a.x == b.x && a.y == b.y;
    any_diff = any_diff || a.x != d.x;
  }
  CHECK(all_same);
  CHECK(any_diff);

  const std::uint64_t n = 100000;
  CouplingSampler sampler(c, 42);
  std::vector<double> sums(n);
  for (auto& v : sums) v = sampler.next().s;
  const double ks = ks_statistic(sums, *c.target);
  CHECK(ks <= dkw_epsilon(n, 0.01));  // 5.15e-3 at this sample size
}
