#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "support/test_util.hpp"
#include "unisum/bounds.hpp"
#include "unisum/coupling.hpp"
#include "unisum/membership.hpp"
#include "unisum/oracle.hpp"

using namespace unisum;
using testutil::R;

TEST_CASE("sharp minimum over open intervals") {
  const auto r = min_open_interval(3, Rat(1), Rat(2));
  CHECK(r.value == R("1/3"));
  CHECK(r.attaining.interval_probability(Rat(1), Rat(3), false) == R("1/3"));
  CHECK(decide_n_ge_3(r.attaining, 3).verdict == Verdict::Member);

  // b <= n/2: probability zero, atoms land off the open interval
  const auto z = min_open_interval(3, Rat(0), Rat(1));
  CHECK(z.value == Rat(0));
  CHECK(z.attaining == MixtureDistribution::point_mass(R("3/2")));
  CHECK(z.attaining.interval_probability(Rat(0), Rat(1), false) == Rat(0));

  const auto whole = min_open_interval(4, Rat(0), Rat(4));
  CHECK(whole.value == Rat(1));

  CHECK_THROWS_AS(min_open_interval(2, Rat(0), Rat(1)), std::domain_error);
  CHECK_THROWS_AS(min_open_interval(3, Rat(2), Rat(2)), std::domain_error);
}

TEST_CASE("sharp maximum over closed intervals") {
  const auto mid = max_closed_interval(3, Rat(1), Rat(1));
  CHECK(mid.value == Rat(1));
  CHECK(mid.kind == AttainingKind::PointMass);
  CHECK(mid.attaining == MixtureDistribution::point_mass(R("3/2")));

  const auto low = max_closed_interval(3, Rat(0), R("1/2"));
  CHECK(low.value == R("1/3"));
  CHECK(low.attaining == MixtureDistribution::from_parts(
                             {{R("1/2"), R("1/3")}, {Rat(2), R("2/3")}}, {}));
  CHECK(low.attaining.interval_probability(Rat(0), R("1/2"), true) == R("1/3"));

  const auto high = max_closed_interval(4, Rat(3), Rat(1));
  CHECK(high.value == R("1/2"));
  CHECK(high.attaining == MixtureDistribution::from_parts(
                              {{Rat(1), R("1/2")}, {Rat(3), R("1/2")}}, {}));
  CHECK(high.attaining.interval_probability(Rat(3), Rat(4), true) == R("1/2"));
}

TEST_CASE("attaining laws are members and hit the value exactly") {
  testutil::Rng rng(515);
  for (int it = 0; it < 60; ++it) {
    const int n = 3 + static_cast<int>(testutil::rand_int(rng, 0, 2));
    Rat a = testutil::rand_rat(rng, n, 8);
    Rat b = testutil::rand_rat(rng, n, 8);
    if (a + b > Rat(n)) continue;
    const auto mn = min_open_interval(n, a, b);
    CHECK(decide_n_ge_3(mn.attaining, n).verdict == Verdict::Member);
    CHECK(mn.attaining.interval_probability(a, a + b, false) == mn.value);
    const auto mx = max_closed_interval(n, a, b);
    CHECK(decide_n_ge_3(mx.attaining, n).verdict == Verdict::Member);
    CHECK(mx.attaining.interval_probability(a, a + b, true) == mx.value);
    CHECK(mn.value <= mx.value);
  }
}

TEST_CASE("cdf and tail bounds") {
  const auto b1 = cdf_bounds(2, R("1/2"));
  CHECK(b1.upper_cdf == R("1/2"));
  CHECK(b1.upper_tail == Rat(1));
  const auto b2 = cdf_bounds(3, Rat(0));
  CHECK(b2.upper_cdf == Rat(0));
  CHECK(b2.upper_tail == Rat(1));
  const auto b3 = cdf_bounds(3, Rat(3));
  CHECK(b3.upper_cdf == Rat(1));
  CHECK(b3.upper_tail == Rat(0));
  CHECK_THROWS_AS(cdf_bounds(1, R("1/2")), std::domain_error);
  CHECK_THROWS_AS(cdf_bounds(3, Rat(4)), std::domain_error);
}

TEST_CASE("duality between tail bounds and the open-interval minimum") {
  // for b > n/2: 1 - 2a/n - 2(n-a-b)/n = 2b/n - 1
  testutil::Rng rng(606);
  for (int it = 0; it < 40; ++it) {
    const int n = 3 + static_cast<int>(testutil::rand_int(rng, 0, 1));
    Rat a = testutil::rand_rat(rng, n, 6);
    Rat b = testutil::rand_rat(rng, n, 6);
    if (a + b > Rat(n) || Rat(2) * b <= Rat(n)) continue;
    const Rat lhs = Rat(1) - cdf_bounds(n, a).upper_cdf - cdf_bounds(n, a + b).upper_tail;
    CHECK(lhs == min_open_interval(n, a, b).value);
  }
}

TEST_CASE("quantile form of the tail bound on a member corpus") {
  // members at n = 3: quantile(alpha) >= 3*alpha/2
  testutil::Rng rng(707);
  for (int it = 0; it < 20; ++it) {
    Rat u = testutil::rand_rat(rng, 3, 6), v = testutil::rand_rat(rng, 3, 6);
    if (v < u) std::swap(u, v);
    const auto f = extremal_sum_distribution(3, u, v);
    for (long tenth = 1; tenth <= 9; ++tenth)
      CHECK(f.quantile(Rat(tenth, 10)) >= Rat(3 * tenth, 20));
  }
}

TEST_CASE("grid oracle brackets the closed-form bounds at small scale") {
  // n = 2 tail bound at x = 1/2: P(S <= 1/2) <= 1/2; the grid maximum of
  // the matching window approaches it from below
  const GridSpec spec{2, 20};
  // cells with value <= 1/2: (s+1)/20 <= 1/2 -> s <= 9
  const Rat mx = grid_extreme_prob(spec, 0, 9, Sense::Max);
  CHECK(mx <= R("1/2"));
  CHECK(mx >= R("2/5"));  // within 2n/m of the bound
}
