#include "unisum/oracle.hpp"

#include <stdexcept>

#include "unisum/errors.hpp"
#include "unisum/simplex.hpp"

namespace unisum {

namespace {

int ipow(int b, int e) {
  int v = 1;
  while (e--) v *= b;
  return v;
}

// Decoded index tuple of variable j (n entries, least significant last).
void decode(const GridSpec& spec, int j, int* t) {
  for (int d = spec.n - 1; d >= 0; --d) {
    t[d] = j % spec.m;
    j /= spec.m;
  }
}

// Constraint rows: margins (dim d, cell c) -> d*m + c; sum cell s -> n*m + s.
lp::Matrix01 build_matrix(const GridSpec& spec, bool with_sum_rows) {
  lp::Matrix01 a;
  a.cols = spec.num_vars();
  a.nnz_per_col = spec.n + (with_sum_rows ? 1 : 0);
  a.rows = spec.n * spec.m + (with_sum_rows ? spec.num_sum_cells() : 0);
  a.idx.resize(static_cast<std::size_t>(a.cols) * a.nnz_per_col);
  int t[3];
  for (int j = 0; j < a.cols; ++j) {
    decode(spec, j, t);
    std::int32_t* col = a.idx.data() + static_cast<std::size_t>(j) * a.nnz_per_col;
    int s = 0;
    for (int d = 0; d < spec.n; ++d) {
      col[d] = d * spec.m + t[d];
      s += t[d];
    }
    if (with_sum_rows) col[spec.n] = spec.n * spec.m + s;
  }
  return a;
}

std::vector<Rat> margin_rhs(const GridSpec& spec) {
  return std::vector<Rat>(static_cast<std::size_t>(spec.n) * spec.m, Rat(1, spec.m));
}

// Splits `mass` sitting at grid coordinate `pos` (sum-cell units, cell s
// lives at coordinate s) onto the two adjacent cells, clamping overhang.
void deposit(std::vector<Rat>& out, const Rat& pos, const Rat& mass) {
  const int top = static_cast<int>(out.size()) - 1;
  if (pos.sign() <= 0) {
    out[0] += mass;
    return;
  }
  if (pos >= Rat(top)) {
    out[top] += mass;
    return;
  }
  const mpz_class fl = pos.floor();
  const long s = fl.get_si();
  const Rat frac = pos - Rat(fl);
  out[s] += mass * (Rat(1) - frac);
  if (frac.sign() > 0) out[s + 1] += mass * frac;
}

}  // namespace

int GridSpec::num_vars() const { return ipow(m, n); }

void GridSpec::validate() const {
  if (n != 2 && n != 3) throw std::domain_error("grid oracle supports n in {2,3}");
  if (m < 2) throw std::domain_error("grid oracle requires m >= 2");
}

void GridTarget::validate(const GridSpec& spec) const {
  if (static_cast<int>(masses.size()) != spec.num_sum_cells())
    throw std::invalid_argument("target has " + std::to_string(masses.size()) + " cells, spec needs " +
                                std::to_string(spec.num_sum_cells()));
  Rat total = 0;
  for (const auto& v : masses) {
    if (v.sign() < 0) throw InvariantError("negative target mass");
    total += v;
  }
  if (total != Rat(1)) throw InvariantError("target masses sum to " + total.str());
}

GridTarget discretize(const MixtureDistribution& f, int n, int m) {
  GridSpec spec{n, m};
  spec.validate();
  const auto [lo, hi] = f.support();
  if (lo.sign() < 0 || hi > Rat(n))
    throw std::domain_error("support outside [0," + std::to_string(n) + "]");

  // sum value x maps to grid coordinate x*m - n/2
  const Rat shift = Rat(n, 2);
  std::vector<Rat> out(spec.num_sum_cells(), Rat(0));
  for (const auto& a : f.atoms()) deposit(out, a.loc * Rat(m) - shift, a.mass);
  for (const auto& p : f.pieces()) {
    const Rat t_lo = p.lo * Rat(m) - shift;
    const Rat t_hi = p.hi * Rat(m) - shift;
    const Rat dens = p.weight / (t_hi - t_lo);  // mass per unit grid coordinate
    // walk integer cells covered by [t_lo, t_hi]; a linear hat split of a
    // homogeneous sliver equals depositing its mass at the centroid
    Rat a = t_lo;
    while (a < t_hi) {
      const Rat b = min(t_hi, Rat(a.floor()) + 1);  // slivers never straddle integers
      deposit(out, (a + b) / Rat(2), dens * (b - a));
      a = b;
    }
  }
  return GridTarget{std::move(out)};
}

FeasibilityResult feasible(const GridTarget& target, const GridSpec& spec,
                           std::optional<std::chrono::steady_clock::time_point> deadline) {
  spec.validate();
  target.validate(spec);

  // Presolve: a zero-mass sum cell pins every variable on that
  // antidiagonal to zero, so those columns and rows leave the program.
  // Atomic targets shrink from m^n variables to a few antidiagonals.
  const int cells = spec.num_sum_cells();
  std::vector<int> sum_row(cells, -1);
  int kept_rows = spec.n * spec.m;
  for (int s = 0; s < cells; ++s)
    if (target.masses[s].sign() > 0) sum_row[s] = kept_rows++;

  lp::Matrix01 a;
  a.rows = kept_rows;
  a.nnz_per_col = spec.n + 1;
  std::vector<int> col_var;  // reduced column -> original variable
  int t[3];
  for (int j = 0; j < spec.num_vars(); ++j) {
    decode(spec, j, t);
    int s = 0;
    for (int d = 0; d < spec.n; ++d) s += t[d];
    if (sum_row[s] < 0) continue;
    for (int d = 0; d < spec.n; ++d) a.idx.push_back(d * spec.m + t[d]);
    a.idx.push_back(sum_row[s]);
    col_var.push_back(j);
  }
  a.cols = static_cast<int>(col_var.size());

  std::vector<Rat> b = margin_rhs(spec);
  b.resize(kept_rows, Rat(0));
  for (int s = 0; s < cells; ++s)
    if (sum_row[s] >= 0) b[sum_row[s]] = target.masses[s];

  lp::ExactSimplex solver(a, std::move(b));
  if (deadline) solver.set_deadline(*deadline);

  FeasibilityResult out;
  if (solver.phase1()) {
    GridJoint joint{spec, std::vector<Rat>(spec.num_vars(), Rat(0))};
    const std::vector<Rat> x = solver.solution();
    for (int c = 0; c < a.cols; ++c) joint.entries[col_var[c]] = x[c];
    if (!verify_witness(joint, target, spec))
      throw std::logic_error("solver produced a witness that fails re-verification");
    out.verdict = Feasibility::Feasible;
    out.witness = std::move(joint);
  } else {
    // Extend the reduced Farkas vector to the dropped sum rows: their
    // target mass is zero, so any y_s <= -max(margin part) keeps both
    // certificate conditions intact.
    const std::vector<Rat>& yr = solver.farkas();
    std::vector<Rat> y(spec.n * spec.m + cells, Rat(0));
    for (int r = 0; r < spec.n * spec.m; ++r) y[r] = yr[r];
    std::vector<bool> seen(cells, false);
    std::vector<Rat> worst(cells, Rat(0));
    for (int j = 0; j < spec.num_vars(); ++j) {
      decode(spec, j, t);
      Rat dot = 0;
      int s = 0;
      for (int d = 0; d < spec.n; ++d) {
        dot += yr[d * spec.m + t[d]];
        s += t[d];
      }
      if (sum_row[s] >= 0) continue;
      if (!seen[s] || dot > worst[s]) {
        worst[s] = dot;
        seen[s] = true;
      }
    }
    for (int s = 0; s < cells; ++s)
      y[spec.n * spec.m + s] = sum_row[s] >= 0 ? yr[sum_row[s]] : -worst[s];
    DualCertificate cert{std::move(y)};
    if (!verify_certificate(cert, target, spec))
      throw std::logic_error("solver produced a certificate that fails re-verification");
    out.verdict = Feasibility::Infeasible;
    out.certificate = std::move(cert);
  }
  out.pivots = solver.pivots();
  return out;
}

bool verify_witness(const GridJoint& joint, const GridTarget& target, const GridSpec& spec) {
  if (static_cast<int>(joint.entries.size()) != spec.num_vars()) return false;
  for (const auto& v : joint.entries)
    if (v.sign() < 0) return false;

  std::vector<Rat> margin(static_cast<std::size_t>(spec.n) * spec.m, Rat(0));
  std::vector<Rat> sums(spec.num_sum_cells(), Rat(0));
  int t[3];
  for (int j = 0; j < spec.num_vars(); ++j) {
    const Rat& v = joint.entries[j];
    if (v.sign() == 0) continue;
    decode(spec, j, t);
    int s = 0;
    for (int d = 0; d < spec.n; ++d) {
      margin[d * spec.m + t[d]] += v;
      s += t[d];
    }
    sums[s] += v;
  }
  const Rat cell(1, spec.m);
  for (const auto& v : margin)
    if (v != cell) return false;
  for (int s = 0; s < spec.num_sum_cells(); ++s)
    if (sums[s] != target.masses[s]) return false;
  return true;
}

bool verify_certificate(const DualCertificate& cert, const GridTarget& target,
                        const GridSpec& spec) {
  const int rows = spec.n * spec.m + spec.num_sum_cells();
  if (static_cast<int>(cert.y.size()) != rows) return false;
  // y.b > 0 while y.A_j <= 0 for every column: no nonnegative solution
  Rat yb = 0;
  for (int d = 0; d < spec.n; ++d)
    for (int c = 0; c < spec.m; ++c) yb += cert.y[d * spec.m + c] * Rat(1, spec.m);
  for (int s = 0; s < spec.num_sum_cells(); ++s)
    yb += cert.y[spec.n * spec.m + s] * target.masses[s];
  if (yb.sign() <= 0) return false;

  int t[3];
  for (int j = 0; j < spec.num_vars(); ++j) {
    decode(spec, j, t);
    Rat dot = 0;
    int s = 0;
    for (int d = 0; d < spec.n; ++d) {
      dot += cert.y[d * spec.m + t[d]];
      s += t[d];
    }
    dot += cert.y[spec.n * spec.m + s];
    if (dot.sign() > 0) return false;
  }
  return true;
}

Rat grid_extreme_prob(const GridSpec& spec, int lo_cell, int hi_cell, Sense sense,
                      std::optional<std::chrono::steady_clock::time_point> deadline) {
  spec.validate();
  if (lo_cell < 0 || hi_cell < lo_cell || hi_cell > spec.num_sum_cells() - 1)
    throw std::domain_error("empty or out-of-range sum-cell window");

  const lp::Matrix01 a = build_matrix(spec, false);
  lp::ExactSimplex solver(a, margin_rhs(spec));
  if (deadline) solver.set_deadline(*deadline);
  if (!solver.phase1()) throw std::logic_error("margin polytope reported empty");

  std::vector<std::uint8_t> mask(spec.num_vars(), 0);
  int t[3];
  for (int j = 0; j < spec.num_vars(); ++j) {
    decode(spec, j, t);
    int s = 0;
    for (int d = 0; d < spec.n; ++d) s += t[d];
    mask[j] = (s >= lo_cell && s <= hi_cell) ? 1 : 0;
  }
  return solver.optimize(mask, sense == Sense::Max);
}

GridTarget refine_double(const GridTarget& target, const GridSpec& spec) {
  spec.validate();
  target.validate(spec);
  const GridSpec fine{spec.n, 2 * spec.m};
  std::vector<Rat> out(fine.num_sum_cells(), Rat(0));
  // cell s sits at sum value (s + n/2)/m = fine coordinate 2s + n/2
  for (int s = 0; s < spec.num_sum_cells(); ++s)
    if (target.masses[s].sign() != 0)
      deposit(out, Rat(2 * s) + Rat(spec.n, 2), target.masses[s]);
  return GridTarget{std::move(out)};
}

}  // namespace unisum
