#include "unisum/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace unisum {

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CouplingSampler::CouplingSampler(const Coupling& c, std::uint64_t seed) : state_(seed) {
  auto flatten = [](const PiecewiseCoupling& m) {
    std::vector<FlatSegment> out;
    auto segs = m.segments;
    std::sort(segs.begin(), segs.end(),
              [](const CouplingSegment& a, const CouplingSegment& b) { return a.x_lo < b.x_lo; });
    for (const auto& s : segs)
      out.push_back({s.x_lo.to_double(), s.x_hi.to_double(), s.intercept.to_double(),
                     static_cast<int>(s.slope)});
    return out;
  };
  first_ = flatten(c.first);
  if (c.is_mixture()) {
    second_ = flatten(*c.second);
    mix_weight_ = c.mix_weight->to_double();
  }
  x_lo_ = c.first.frame.x_lo.to_double();
  x_len_ = c.first.frame.x_hi.to_double() - x_lo_;
}

double CouplingSampler::uniform01() {
  return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
}

SampleTriple CouplingSampler::next() {
  const std::vector<FlatSegment>* segs = &first_;
  if (mix_weight_ <= 1.0 && uniform01() >= mix_weight_) segs = &second_;
  const double x = x_lo_ + uniform01() * x_len_;
  // segments are sorted and partition the margin; binary search by x_lo
  std::size_t lo = 0, hi = segs->size();
  while (lo + 1 < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if ((*segs)[mid].x_lo <= x)
      lo = mid;
    else
      hi = mid;
  }
  const FlatSegment& s = (*segs)[lo];
  const double y = s.intercept + s.slope * x;
  // slope -1 segments carry a constant sum; emit the atom value exactly so
  // the empirical law ties with the target's atoms in double precision
  const double sum = s.slope < 0 ? s.intercept : x + y;
  return {x, y, sum};
}

double ks_statistic(std::vector<double>& samples, const MixtureDistribution& target) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());

  // target cdf evaluated in doubles; atoms make F(v) and F(v-) differ
  struct Cdf {
    std::vector<std::pair<double, double>> atoms;  // loc, mass
    std::vector<std::array<double, 3>> pieces;     // lo, hi, weight
    double at(double x, bool left) const {
      double v = 0;
      for (const auto& [loc, m] : atoms)
        if (left ? loc < x : loc <= x) v += m;
      for (const auto& [lo, hi, w] : pieces) {
        if (x >= hi)
          v += w;
        else if (x > lo)
          v += w * (x - lo) / (hi - lo);
      }
      return v;
    }
  } cdf;
  for (const auto& a : target.atoms())
    cdf.atoms.push_back({a.loc.to_double(), a.mass.to_double()});
  for (const auto& p : target.pieces())
    cdf.pieces.push_back({p.lo.to_double(), p.hi.to_double(), p.weight.to_double()});

  double d = 0.0;
  std::size_t i = 0;
  while (i < samples.size()) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    const double v = samples[i];
    d = std::max(d, std::abs(static_cast<double>(i) / n - cdf.at(v, true)));
    d = std::max(d, std::abs(static_cast<double>(j) / n - cdf.at(v, false)));
    i = j;
  }
  return d;
}

double dkw_epsilon(std::uint64_t n, double alpha) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

}  // namespace unisum
