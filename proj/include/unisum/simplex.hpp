#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "unisum/rational.hpp"

namespace unisum::lp {

/// Sparse 0/1 equality system A x = b, x >= 0. Every column has the same
/// number of nonzeros (all coefficients 1), stored column-major.
struct Matrix01 {
  int rows = 0;
  int cols = 0;
  int nnz_per_col = 0;
  std::vector<std::int32_t> idx;  // cols * nnz_per_col row indices

  const std::int32_t* column(int j) const { return idx.data() + static_cast<std::size_t>(j) * nnz_per_col; }
};

/// Exact rational revised simplex: phase-1 feasibility with artificial
/// variables, optional phase-2 over a 0/1 objective. Pricing is Dantzig by
/// default and switches permanently to Bland's rule once degenerate pivots
/// stall, which keeps every run finite. All arithmetic is exact; verdicts
/// come with a reusable witness (basic solution) or Farkas vector.
class ExactSimplex {
 public:
  ExactSimplex(const Matrix01& a, std::vector<Rat> b);

  void set_deadline(std::chrono::steady_clock::time_point t) { deadline_ = t; }

  /// Runs phase 1. True: the system is feasible and solution() is valid.
  /// False: farkas() gives y with y.b > 0 and y.A_j <= 0 for every column.
  bool phase1();

  /// Minimizes (maximize = false) or maximizes sum of x_j over the support
  /// mask. Requires a successful phase1() first.
  Rat optimize(const std::vector<std::uint8_t>& c_mask, bool maximize);

  std::vector<Rat> solution() const;          // size cols
  const std::vector<Rat>& farkas() const { return farkas_; }
  long pivots() const { return pivots_; }

 private:
  enum class PivotRule { Dantzig, Bland };

  void check_deadline() const;
  void compute_duals(const std::vector<Rat>& cb);
  int price(const std::vector<Rat>& cost, PivotRule rule) const;
  void column_times_binv(int j, std::vector<Rat>& d) const;
  int ratio_test(const std::vector<Rat>& d, bool phase2, bool bland) const;
  void pivot(int enter, int leave_row, const std::vector<Rat>& d);
  void run(const std::vector<Rat>& cost, bool phase2);

  const Matrix01& a_;
  std::vector<Rat> b_;
  int rows_;
  std::vector<std::vector<Rat>> binv_;
  std::vector<Rat> xb_;
  std::vector<int> basis_;             // variable index; artificial = cols + row
  std::vector<std::uint8_t> in_basis_; // real variables only
  std::vector<Rat> y_;                 // duals of the last run
  std::vector<Rat> farkas_;
  long pivots_ = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace unisum::lp
