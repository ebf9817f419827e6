#pragma once

// Exact two-phase simplex on rationals for programs in equality form
//
//     maximize  c^T v   subject to  A v = b,  v >= 0,  b >= 0.
//
// Bland's rule is used for both the entering and the leaving variable, so the
// method terminates without any cycling safeguards beyond the rule itself.
// Intended for small dense programs (tens of rows, hundreds of columns).

#include <cstddef>
#include <optional>
#include <vector>

#include "hdg/errors.hpp"
#include "hdg/rational.hpp"

namespace hdg::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  RationalVector solution;  // length = number of variables, present when Optimal
  Rational objective;
};

namespace detail {

class Tableau {
 public:
  Tableau(const RationalMatrix& a, const RationalVector& b)
      : m_(a.rows()), n_(a.cols()), width_(n_ + m_ + 1), rows_(m_, RationalVector(width_)), basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = a(i, j);
      rows_[i][n_ + i] = 1;
      rows_[i][width_ - 1] = b[i];
      basis_[i] = n_ + i;
    }
  }

  // Runs Bland-rule pivots for the given cost vector (indexed over all
  // structural and artificial columns). Columns with allowed[j] == false never
  // enter. Returns false if the program is unbounded.
  bool optimise(const RationalVector& cost, const std::vector<bool>& allowed) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j + 1 < width_ && !entering; ++j) {
        if (!allowed[j] || is_basic(j)) continue;
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i)
          if (rows_[i][j] != 0 && cost[basis_[i]] != 0) reduced -= cost[basis_[i]] * rows_[i][j];
        if (reduced > 0) entering = j;
      }
      if (!entering) return true;

      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& coef = rows_[i][*entering];
        if (coef <= 0) continue;
        Rational ratio = rows_[i].back() / coef;
        if (!leaving || ratio < best || (ratio == best && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    RationalVector& p = rows_[row];
    const Rational inv = 1 / p[col];
    for (auto& e : p)
      if (e != 0) e *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == row || rows_[i][col] == 0) continue;
      const Rational factor = rows_[i][col];
      for (std::size_t j = 0; j < width_; ++j)
        if (p[j] != 0) rows_[i][j] -= factor * p[j];
    }
    basis_[row] = col;
  }

  // Moves zero-valued artificials out of the basis, dropping redundant rows.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < n_ && !col; ++j)
        if (rows_[i][j] != 0 && !is_basic(j)) col = j;
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  Rational artificial_sum() const {
    Rational s;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] >= n_) s += rows_[i].back();
    return s;
  }

  RationalVector structural_values() const {
    RationalVector v(n_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] < n_) v[basis_[i]] = rows_[i].back();
    return v;
  }

  std::size_t structural() const noexcept { return n_; }
  std::size_t total_columns() const noexcept { return width_ - 1; }

 private:
  bool is_basic(std::size_t j) const {
    for (std::size_t b : basis_)
      if (b == j) return true;
    return false;
  }

  std::size_t m_, n_, width_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline Result maximize(const RationalMatrix& a, const RationalVector& b, const RationalVector& c) {
  if (a.rows() != b.size() || a.cols() != c.size()) throw InputError("LP dimension mismatch");
  for (const auto& e : b)
    if (e < 0) throw InputError("LP right-hand side must be nonnegative");

  detail::Tableau t(a, b);
  const std::size_t n = t.structural();
  const std::size_t total = t.total_columns();

  RationalVector phase1(total);
  for (std::size_t j = n; j < total; ++j) phase1[j] = -1;
  t.optimise(phase1, std::vector<bool>(total, true));
  if (t.artificial_sum() != 0) return {Status::Infeasible, {}, {}};
  t.expel_artificials();

  RationalVector phase2(total);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  std::vector<bool> allowed(total, false);
  for (std::size_t j = 0; j < n; ++j) allowed[j] = true;
  if (!t.optimise(phase2, allowed)) return {Status::Unbounded, {}, {}};

  Result r{Status::Optimal, t.structural_values(), {}};
  for (std::size_t j = 0; j < n; ++j) r.objective += c[j] * r.solution[j];
  return r;
}

}  // namespace hdg::lp
