#include "unisum/coupling.hpp"

#include <algorithm>
#include <stdexcept>

#include "unisum/errors.hpp"

namespace unisum {

namespace {

Rat frame_len_x(const Frame& f) { return f.x_hi - f.x_lo; }
Rat frame_len_y(const Frame& f) { return f.y_hi - f.y_lo; }

void push_segment(std::vector<CouplingSegment>& out, const Rat& x_lo, const Rat& x_hi,
                  Slope slope, const Rat& intercept) {
  if (x_lo < x_hi) out.push_back({x_lo, x_hi, slope, intercept});
}

std::vector<CouplingSegment> sorted_segments(const PiecewiseCoupling& c) {
  auto segs = c.segments;
  std::sort(segs.begin(), segs.end(),
            [](const CouplingSegment& a, const CouplingSegment& b) { return a.x_lo < b.x_lo; });
  return segs;
}

// Normalized half-open Y image [lo, hi) of one segment.
std::pair<Rat, Rat> y_image(const CouplingSegment& s) {
  if (s.slope == Slope::Plus) return {s.intercept + s.x_lo, s.intercept + s.x_hi};
  return {s.intercept - s.x_hi, s.intercept - s.x_lo};
}

bool check_x_partition(const PiecewiseCoupling& c, std::vector<std::string>& notes) {
  if (c.segments.empty()) {
    notes.push_back("no segments");
    return false;
  }
  auto segs = sorted_segments(c);
  bool ok = true;
  for (const auto& s : segs)
    if (!(s.x_lo < s.x_hi)) {
      notes.push_back("segment with x_lo >= x_hi");
      ok = false;
    }
  if (segs.front().x_lo != c.frame.x_lo) {
    notes.push_back("segments start at " + segs.front().x_lo.str() + ", frame at " +
                    c.frame.x_lo.str());
    ok = false;
  }
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    if (segs[i].x_hi != segs[i + 1].x_lo) {
      notes.push_back("x gap/overlap at " + segs[i].x_hi.str());
      ok = false;
    }
  }
  if (segs.back().x_hi != c.frame.x_hi) {
    notes.push_back("segments end at " + segs.back().x_hi.str() + ", frame at " +
                    c.frame.x_hi.str());
    ok = false;
  }
  return ok;
}

bool check_y_uniform(const PiecewiseCoupling& c, std::vector<std::string>& notes) {
  const Rat lx = frame_len_x(c.frame), ly = frame_len_y(c.frame);
  const Rat mult = lx / ly;  // required cover count of every y point
  if (!mult.is_positive_integer()) {
    notes.push_back("margin lengths incompatible: |x|/|y| = " + mult.str());
    return false;
  }
  // Sweep the y axis; cover count must equal mult inside the frame.
  std::vector<std::pair<Rat, int>> events;
  for (const auto& s : c.segments) {
    auto [lo, hi] = y_image(s);
    events.push_back({lo, +1});
    events.push_back({hi, -1});
  }
  events.push_back({c.frame.y_lo, 0});
  events.push_back({c.frame.y_hi, 0});
  std::sort(events.begin(), events.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  long count = 0;
  const long want = mult.num().get_si();
  bool ok = true;
  for (std::size_t i = 0; i < events.size(); ++i) {
    count += events[i].second;
    if (i + 1 < events.size() && events[i].first < events[i + 1].first) {
      const Rat& a = events[i].first;
      const Rat& b = events[i + 1].first;
      const bool inside = a >= c.frame.y_lo && b <= c.frame.y_hi;
      const long expect = inside ? want : 0;
      if (count != expect) {
        notes.push_back("y density " + std::to_string(count) + "/" + std::to_string(want) +
                        " on [" + a.str() + "," + b.str() + ")");
        ok = false;
      }
    }
  }
  return ok;
}

// Ladder-frame constructions, all slope -1 (Y = c - X) on X ~ U[0,T].

Frame ladder_frame(const Rat& T) { return Frame{Rat(0), T, -T, Rat(0)}; }

// b = 1, minimal middle mass r/T; T = 2m + r or 2m - r, r in [0,1].
PiecewiseCoupling tri_a_min(const Rat& T, long m, const Rat& r, bool plus) {
  std::vector<CouplingSegment> segs;
  if (plus) {
    for (long j = 0; j < m; ++j) {
      push_segment(segs, Rat(2 * j), Rat(2 * j) + r, Slope::Minus, Rat(-1));
      push_segment(segs, Rat(2 * j + 1), Rat(2 * j + 1) + r, Slope::Minus, Rat(1));
      push_segment(segs, Rat(2 * j) + r, Rat(2 * j + 1), Slope::Minus, Rat(-1));
      push_segment(segs, Rat(2 * j + 1) + r, Rat(2 * j + 2), Slope::Minus, Rat(1));
    }
    push_segment(segs, Rat(2 * m), Rat(2 * m) + r, Slope::Minus, Rat(0));
  } else {
    for (long j = 0; j < m; ++j) {
      push_segment(segs, Rat(2 * j), Rat(2 * j + 1) - r, Slope::Minus, Rat(-1));
      push_segment(segs, Rat(2 * j + 1), Rat(2 * j + 2) - r, Slope::Minus, Rat(1));
    }
    for (long j = 0; j + 1 < m; ++j) {
      push_segment(segs, Rat(2 * j + 1) - r, Rat(2 * j + 1), Slope::Minus, Rat(-1));
      push_segment(segs, Rat(2 * j + 2) - r, Rat(2 * j + 2), Slope::Minus, Rat(1));
    }
    push_segment(segs, Rat(2 * m - 1) - r, Rat(2 * m - 1), Slope::Minus, Rat(0));
  }
  return {ladder_frame(T), std::move(segs)};
}

// Antithetic map: Z = 0 a.s.
PiecewiseCoupling antithetic(const Rat& T) {
  return {ladder_frame(T), {CouplingSegment{Rat(0), T, Slope::Minus, Rat(0)}}};
}

// Integer T, b in (0,1): the k = 1 ladder; realizes the maximal middle
// mass p1 = b (sum lives on {b-1, b}).
PiecewiseCoupling tri_max(long T, const Rat& b) {
  std::vector<CouplingSegment> segs;
  for (long j = 0; j < T; ++j) {
    push_segment(segs, Rat(j), Rat(j) + b, Slope::Minus, b - Rat(1));
    push_segment(segs, Rat(j) + b, Rat(j + 1), Slope::Minus, b);
  }
  return {ladder_frame(Rat(T)), std::move(segs)};
}

// Even T = 2m, b in (0,1): p1 = 0.
PiecewiseCoupling tri_b_min(long T, const Rat& b) {
  std::vector<CouplingSegment> segs;
  for (long j = 0; 2 * j < T; ++j) {
    push_segment(segs, Rat(2 * j), Rat(2 * j) + b, Slope::Minus, b - Rat(2));
    push_segment(segs, Rat(2 * j) + b, Rat(2 * j + 2), Slope::Minus, b);
  }
  return {ladder_frame(Rat(T)), std::move(segs)};
}

// Odd T = 2m+1, b in (0,1): p1 = b/T.
PiecewiseCoupling tri_c_min(long T, const Rat& b) {
  const long m = (T - 1) / 2;
  std::vector<CouplingSegment> segs;
  for (long j = 0; j < m; ++j) {
    push_segment(segs, Rat(2 * j), Rat(2 * j) + b, Slope::Minus, b - Rat(2));
    push_segment(segs, Rat(2 * j + 1), Rat(2 * j + 1) + b, Slope::Minus, b);
  }
  push_segment(segs, Rat(2 * m), Rat(2 * m) + b, Slope::Minus, b - Rat(1));
  for (long j = 0; j < T; ++j)
    push_segment(segs, Rat(j) + b, Rat(j + 1), Slope::Minus, b);
  return {ladder_frame(Rat(T)), std::move(segs)};
}

MixtureDistribution ladder_target(const Rat& b, const Rat& p1) {
  // masses forced by mean 0 on {b-2, b-1, b}
  const Rat p2 = (b - p1) / Rat(2);
  const Rat p0 = Rat(1) - (b + p1) / Rat(2);
  return MixtureDistribution::from_parts(
      {Atom{b - Rat(2), p2}, Atom{b - Rat(1), p1}, Atom{b, p0}}, {});
}

Coupling with_target(PiecewiseCoupling map, MixtureDistribution target) {
  Coupling c;
  c.first = std::move(map);
  c.target = std::move(target);
  return c;
}

Coupling mixture(PiecewiseCoupling first, PiecewiseCoupling second, const Rat& w_first,
                 MixtureDistribution target) {
  if (w_first.sign() == 0) return with_target(std::move(second), std::move(target));
  if (w_first == Rat(1)) return with_target(std::move(first), std::move(target));
  Coupling c;
  c.first = std::move(first);
  c.second = std::move(second);
  c.mix_weight = w_first;
  c.target = std::move(target);
  return c;
}

}  // namespace

MixtureDistribution sum_law(const PiecewiseCoupling& c) {
  const Rat lx = frame_len_x(c.frame);
  std::vector<Atom> atoms;
  std::vector<UniformPiece> pieces;
  for (const auto& s : c.segments) {
    const Rat w = (s.x_hi - s.x_lo) / lx;
    if (s.slope == Slope::Minus)
      atoms.push_back({s.intercept, w});
    else
      pieces.push_back({s.intercept + Rat(2) * s.x_lo, s.intercept + Rat(2) * s.x_hi, w});
  }
  return MixtureDistribution::from_parts(std::move(atoms), std::move(pieces));
}

MixtureDistribution sum_law(const Coupling& c) {
  if (!c.is_mixture()) return sum_law(c.first);
  return MixtureDistribution::mix(*c.mix_weight, sum_law(c.first), sum_law(*c.second));
}

VerifyReport verify_coupling(const Coupling& c, const MixtureDistribution& target) {
  VerifyReport r;
  std::vector<const PiecewiseCoupling*> maps{&c.first};
  if (c.is_mixture()) {
    maps.push_back(&*c.second);
    if (c.first.frame.x_lo != c.second->frame.x_lo || c.first.frame.x_hi != c.second->frame.x_hi ||
        c.first.frame.y_lo != c.second->frame.y_lo || c.first.frame.y_hi != c.second->frame.y_hi) {
      r.discrepancies.push_back("mixture components disagree on the frame");
      return r;
    }
    if (c.mix_weight->sign() < 0 || *c.mix_weight > Rat(1)) {
      r.discrepancies.push_back("mixture weight outside [0,1]");
      return r;
    }
  }
  r.margin_x_ok = true;
  r.margin_y_ok = true;
  for (const auto* m : maps) {
    r.margin_x_ok = check_x_partition(*m, r.discrepancies) && r.margin_x_ok;
    r.margin_y_ok = check_y_uniform(*m, r.discrepancies) && r.margin_y_ok;
  }
  if (!r.margin_x_ok) return r;  // sum law undefined without an X partition

  const MixtureDistribution law = sum_law(c);
  r.sum_law_ok = (law == target);
  if (!r.sum_law_ok) r.discrepancies.push_back("sum law differs from target");
  return r;
}

Coupling synthesize_biatomic(long b_inv, const Rat& a) {
  if (b_inv < 1) throw std::domain_error("b_inv must be a positive integer");
  const Rat b = Rat(1, b_inv);
  if (a.sign() < 0 || a >= Rat(1) || a + b <= Rat(1))
    throw std::domain_error("no mean-1 bi-atomic with positive masses on {a, a+b}: need 1-b < a < 1");

  // ladder frame with T = 1/b: Z_T two-atomic on {bt-1, bt}
  const Rat bt = Rat(1) - Rat(b_inv) * (Rat(1) - a);
  PiecewiseCoupling map = tri_max(b_inv, bt);

  const Rat upper_mass = (Rat(1) - a) * Rat(b_inv);
  MixtureDistribution target = MixtureDistribution::from_parts(
      {Atom{a, Rat(1) - upper_mass}, Atom{a + b, upper_mass}}, {});

  Coupling c;
  c.first = std::move(map);
  // hand the caller U[0,1] margins directly
  Coupling unit = to_unit_frame(c);
  unit.target = std::move(target);
  return unit;
}

Coupling synthesize_biatomic_spacing(const Rat& b, const Rat& a) {
  if (b.sign() <= 0) throw std::domain_error("spacing b must be positive");
  const Rat b_inv = b.inverse();
  if (!b_inv.is_positive_integer())
    throw std::domain_error("bi-atomic target with 1/b = " + b_inv.str() +
                            " not in N admits no coupling");
  return synthesize_biatomic(b_inv.num().get_si(), a);
}

Coupling synthesize_triatomic(TriCase which, const Rat& T, const Rat& b, const Rat& p1) {
  if (T.sign() <= 0) throw std::domain_error("T must be positive");
  if (p1.sign() < 0 || p1 > Rat(1)) throw std::domain_error("p1 outside [0,1]");

  if (which == TriCase::A) {
    if (b != Rat(1)) throw std::domain_error("case (a) requires b = 1");
    // canonical decomposition T = 2m +- r, m in N, r in [0,1]
    const mpz_class m_z = (T / Rat(2) + Rat(1, 2)).floor();
    if (m_z < 1) throw std::domain_error("case (a) requires T >= 1");
    const long m = m_z.get_si();
    const Rat diff = T - Rat(2 * m);
    const bool plus = diff.sign() >= 0;
    const Rat r = diff.abs();
    if (r > Rat(1)) throw std::domain_error("T admits no decomposition 2m +- r with r <= 1");
    const Rat p1_min = r / T;
    if (p1 < p1_min)
      throw std::domain_error("p1 = " + p1.str() + " below the minimum r/T = " + p1_min.str());
    MixtureDistribution target = ladder_target(b, p1);
    if (p1 == Rat(1)) return with_target(antithetic(T), std::move(target));
    PiecewiseCoupling extreme = tri_a_min(T, m, r, plus);
    if (p1 == p1_min) return with_target(std::move(extreme), std::move(target));
    const Rat w_first = (Rat(1) - p1) / (Rat(1) - p1_min);
    return mixture(std::move(extreme), antithetic(T), w_first, std::move(target));
  }

  if (!T.is_positive_integer()) throw std::domain_error("cases (b)/(c) require integer T");
  const long t = T.num().get_si();
  const bool even = t % 2 == 0;
  if (which == TriCase::B && !even) throw std::domain_error("case (b) requires even T");
  if (which == TriCase::C && even) throw std::domain_error("case (c) requires odd T");
  if (b.sign() <= 0 || b >= Rat(2) || b == Rat(1))
    throw std::domain_error("cases (b)/(c) require b in (0,1) or (1,2)");

  if (b > Rat(1)) {
    // symmetric transform: solve for 2-b, then mirror (X,Y) -> (-Y,-X)
    Coupling inner = synthesize_triatomic(which, T, Rat(2) - b, p1);
    Coupling out;
    out.first = mirror(inner.first);
    if (inner.is_mixture()) {
      out.second = mirror(*inner.second);
      out.mix_weight = inner.mix_weight;
    }
    out.target = ladder_target(b, p1);
    return out;
  }

  const Rat p1_max = b;  // = min{b, 2-b} for b < 1
  const Rat p1_min = which == TriCase::B ? Rat(0) : b / T;
  if (p1 < p1_min || p1 > p1_max)
    throw std::domain_error("p1 = " + p1.str() + " outside [" + p1_min.str() + "," +
                            p1_max.str() + "]");
  MixtureDistribution target = ladder_target(b, p1);
  PiecewiseCoupling lo = which == TriCase::B ? tri_b_min(t, b) : tri_c_min(t, b);
  if (p1 == p1_min) return with_target(std::move(lo), std::move(target));
  PiecewiseCoupling hi = tri_max(t, b);
  if (p1 == p1_max) return with_target(std::move(hi), std::move(target));
  const Rat w_first = (p1_max - p1) / (p1_max - p1_min);
  return mixture(std::move(lo), std::move(hi), w_first, std::move(target));
}

MixtureDistribution extremal_sum_distribution(int n, const Rat& u, const Rat& v) {
  if (n < 3) throw std::domain_error("extremal_sum_distribution requires n >= 3");
  if (u.sign() < 0 || u > v || v > Rat(n))
    throw std::domain_error("need 0 <= u <= v <= n");
  const Rat nn(n);
  return MixtureDistribution::from_parts({Atom{u / Rat(2), u / nn},
                                          Atom{(u + v) / Rat(2), (v - u) / nn},
                                          Atom{(nn + v) / Rat(2), (nn - v) / nn}},
                                         {});
}

namespace {

PiecewiseCoupling unit_map(const PiecewiseCoupling& c) {
  const Rat lx = frame_len_x(c.frame), ly = frame_len_y(c.frame);
  if (lx != ly)
    throw InvariantError("unit-frame rescale needs equal margin lengths");
  PiecewiseCoupling out;
  out.frame = Frame{Rat(0), Rat(1), Rat(0), Rat(1)};
  for (const auto& s : c.segments) {
    const Rat sgn = s.slope == Slope::Plus ? Rat(1) : Rat(-1);
    CouplingSegment t;
    t.x_lo = (s.x_lo - c.frame.x_lo) / lx;
    t.x_hi = (s.x_hi - c.frame.x_lo) / lx;
    t.slope = s.slope;
    t.intercept = (s.intercept + sgn * c.frame.x_lo - c.frame.y_lo) / lx;
    out.segments.push_back(std::move(t));
  }
  return out;
}

}  // namespace

Coupling to_unit_frame(const Coupling& c) {
  const Rat lx = frame_len_x(c.first.frame);
  const Rat shift = -(c.first.frame.x_lo + c.first.frame.y_lo) / lx;
  Coupling out;
  out.first = unit_map(c.first);
  if (c.is_mixture()) {
    out.second = unit_map(*c.second);
    out.mix_weight = c.mix_weight;
  }
  if (c.target) out.target = c.target->scale_shift(lx.inverse(), shift);
  return out;
}

PiecewiseCoupling mirror(const PiecewiseCoupling& c) {
  PiecewiseCoupling out;
  out.frame = Frame{-c.frame.y_hi, -c.frame.y_lo, -c.frame.x_hi, -c.frame.x_lo};
  for (const auto& s : c.segments) {
    CouplingSegment t;
    t.slope = s.slope;
    if (s.slope == Slope::Minus) {
      t.x_lo = s.x_lo - s.intercept;
      t.x_hi = s.x_hi - s.intercept;
      t.intercept = -s.intercept;
    } else {
      t.x_lo = -s.intercept - s.x_hi;
      t.x_hi = -s.intercept - s.x_lo;
      t.intercept = s.intercept;
    }
    out.segments.push_back(std::move(t));
  }
  std::sort(out.segments.begin(), out.segments.end(),
            [](const CouplingSegment& a, const CouplingSegment& b) { return a.x_lo < b.x_lo; });
  return out;
}

}  // namespace unisum
