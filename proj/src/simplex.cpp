#include "unisum/simplex.hpp"

#include <stdexcept>

#include "unisum/errors.hpp"

namespace unisum::lp {

namespace {
constexpr long kStallLimit = 64;  // degenerate pivots before switching to Bland
}

ExactSimplex::ExactSimplex(const Matrix01& a, std::vector<Rat> b)
    : a_(a), b_(std::move(b)), rows_(a.rows) {
  if (static_cast<int>(b_.size()) != rows_) throw std::invalid_argument("b size mismatch");
  for (const auto& v : b_)
    if (v.sign() < 0) throw std::invalid_argument("simplex requires b >= 0");
  binv_.assign(rows_, std::vector<Rat>(rows_, Rat(0)));
  for (int i = 0; i < rows_; ++i) binv_[i][i] = Rat(1);
  xb_ = b_;
  basis_.resize(rows_);
  for (int i = 0; i < rows_; ++i) basis_[i] = a_.cols + i;
  in_basis_.assign(a_.cols, 0);
}

void ExactSimplex::check_deadline() const {
  if (deadline_ && std::chrono::steady_clock::now() > *deadline_)
    throw TimeoutError("simplex deadline exceeded");
}

void ExactSimplex::compute_duals(const std::vector<Rat>& cb) {
  y_.assign(rows_, Rat(0));
  for (int i = 0; i < rows_; ++i) {
    const int s = cb[i].sign();
    if (s == 0) continue;
    const auto& row = binv_[i];
    if (cb[i] == Rat(1)) {
      for (int r = 0; r < rows_; ++r) y_[r] += row[r];
    } else if (cb[i] == Rat(-1)) {
      for (int r = 0; r < rows_; ++r) y_[r] -= row[r];
    } else {
      for (int r = 0; r < rows_; ++r) y_[r] += cb[i] * row[r];
    }
  }
}

int ExactSimplex::price(const std::vector<Rat>& cost, PivotRule rule) const {
  int best = -1;
  Rat best_rc;  // most negative reduced cost seen
  Rat rc;
  for (int j = 0; j < a_.cols; ++j) {
    if (in_basis_[j]) continue;
    const std::int32_t* col = a_.column(j);
    rc = cost[j];
    for (int k = 0; k < a_.nnz_per_col; ++k) rc -= y_[col[k]];
    if (rc.sign() >= 0) continue;
    if (rule == PivotRule::Bland) return j;
    if (best < 0 || rc < best_rc) {
      best = j;
      best_rc = rc;
    }
  }
  return best;
}

void ExactSimplex::column_times_binv(int j, std::vector<Rat>& d) const {
  const std::int32_t* col = a_.column(j);
  d.assign(rows_, Rat(0));
  for (int i = 0; i < rows_; ++i) {
    Rat& di = d[i];
    const auto& row = binv_[i];
    for (int k = 0; k < a_.nnz_per_col; ++k) di += row[col[k]];
  }
}

int ExactSimplex::ratio_test(const std::vector<Rat>& d, bool phase2, bool bland) const {
  int best = -1;
  Rat best_ratio;
  auto better_tie = [&](int cand) {
    // Bland needs the smallest variable index; otherwise prefer kicking
    // artificials out first.
    if (!bland) {
      const bool ca = basis_[cand] >= a_.cols, ba = basis_[best] >= a_.cols;
      if (ca != ba) return ca;
    }
    return basis_[cand] < basis_[best];
  };
  for (int i = 0; i < rows_; ++i) {
    const int ds = d[i].sign();
    Rat ratio;
    if (ds > 0) {
      ratio = xb_[i] / d[i];
    } else if (phase2 && ds < 0 && basis_[i] >= a_.cols) {
      ratio = Rat(0);  // an artificial pinned at zero must not grow
    } else {
      continue;
    }
    if (best < 0 || ratio < best_ratio) {
      best = i;
      best_ratio = ratio;
    } else if (ratio == best_ratio && better_tie(i)) {
      best = i;
    }
  }
  return best;
}

void ExactSimplex::pivot(int enter, int p, const std::vector<Rat>& d) {
  const Rat t = xb_[p] / d[p];
  for (int i = 0; i < rows_; ++i) {
    if (i == p) continue;
    if (d[i].sign() != 0 && t.sign() != 0) xb_[i] -= d[i] * t;
  }
  xb_[p] = t;

  auto& prow = binv_[p];
  if (d[p] != Rat(1)) {
    const Rat inv = d[p].inverse();
    for (int r = 0; r < rows_; ++r)
      if (prow[r].sign() != 0) prow[r] *= inv;
  }
  for (int i = 0; i < rows_; ++i) {
    if (i == p || d[i].sign() == 0) continue;
    const Rat& f = d[i];
    auto& row = binv_[i];
    for (int r = 0; r < rows_; ++r)
      if (prow[r].sign() != 0) row[r] -= f * prow[r];
  }

  if (basis_[p] < a_.cols) in_basis_[basis_[p]] = 0;
  basis_[p] = enter;
  in_basis_[enter] = 1;
  ++pivots_;
}

void ExactSimplex::run(const std::vector<Rat>& cost, bool phase2) {
  // Dantzig pricing with an episodic switch to Bland's rule: after a long
  // degenerate run, Bland takes over until the next strict improvement.
  // Every degenerate episode is finite under Bland, so the loop terminates.
  PivotRule rule = PivotRule::Dantzig;
  long stall = 0;
  std::vector<Rat> cb(rows_);
  std::vector<Rat> d;
  while (true) {
    check_deadline();
    for (int i = 0; i < rows_; ++i)
      cb[i] = basis_[i] >= a_.cols ? (phase2 ? Rat(0) : Rat(1)) : cost[basis_[i]];
    compute_duals(cb);
    const int enter = price(cost, rule);
    if (enter < 0) return;
    column_times_binv(enter, d);
    const int leave = ratio_test(d, phase2, rule == PivotRule::Bland);
    if (leave < 0) throw std::logic_error("unbounded direction in a bounded program");
    const bool degenerate = xb_[leave].sign() == 0 || d[leave].sign() < 0;
    pivot(enter, leave, d);
    if (degenerate) {
      if (++stall > kStallLimit) rule = PivotRule::Bland;
    } else {
      stall = 0;
      rule = PivotRule::Dantzig;
    }
  }
}

bool ExactSimplex::phase1() {
  const std::vector<Rat> cost(a_.cols, Rat(0));
  run(cost, false);
  Rat obj = 0;
  for (int i = 0; i < rows_; ++i)
    if (basis_[i] >= a_.cols) obj += xb_[i];
  if (obj.sign() == 0) return true;
  farkas_ = y_;  // y.b = obj > 0, y.A_j <= 0 for every real column
  return false;
}

Rat ExactSimplex::optimize(const std::vector<std::uint8_t>& c_mask, bool maximize) {
  if (static_cast<int>(c_mask.size()) != a_.cols)
    throw std::invalid_argument("cost mask size mismatch");
  std::vector<Rat> cost(a_.cols);
  for (int j = 0; j < a_.cols; ++j)
    cost[j] = c_mask[j] ? (maximize ? Rat(-1) : Rat(1)) : Rat(0);
  run(cost, true);
  Rat value = 0;
  for (int i = 0; i < rows_; ++i)
    if (basis_[i] < a_.cols && c_mask[basis_[i]]) value += xb_[i];
  return value;
}

std::vector<Rat> ExactSimplex::solution() const {
  std::vector<Rat> x(a_.cols, Rat(0));
  for (int i = 0; i < rows_; ++i)
    if (basis_[i] < a_.cols) x[basis_[i]] = xb_[i];
  return x;
}

}  // namespace unisum::lp
