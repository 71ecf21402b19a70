#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sfglearn/errors.hpp"

namespace sfglearn {

// Thread-local tally of field multiplications/divisions performed by the
// elimination routines below. Monotonic; benchmark code snapshots it around a
// run and reports the delta. One learning session per thread keeps this exact.
namespace fieldops {
inline std::uint64_t& counter() {
  thread_local std::uint64_t n = 0;
  return n;
}
inline std::uint64_t count() { return counter(); }
inline void add(std::uint64_t k) { counter() += k; }
}  // namespace fieldops

// Dense row-major matrix of exact field elements.
template <typename F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  // A * x, exact.
  std::vector<F> apply(const std::vector<F>& x) const {
    if (x.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
    std::vector<F> y(rows_, F(0));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) y[r] += at(r, c) * x[c];
    return y;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<F> data_;
};

// Solution(coeffs) or nullopt for an inconsistent system (the bottom case).
template <typename F>
using SolveOutcome = std::optional<std::vector<F>>;

namespace detail {

// Forward elimination with leftmost-nonzero pivoting (magnitude pivoting is
// meaningless over an exact field). Returns the pivot columns; m and b are
// reduced in place. b may be null for rank-only use.
template <typename F>
std::vector<std::size_t> eliminate(Matrix<F>& m, std::vector<F>* b) {
  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t prow = 0;
  for (std::size_t col = 0; col < nc && prow < nr; ++col) {
    std::size_t sel = nr;
    for (std::size_t r = prow; r < nr; ++r) {
      if (!m.at(r, col).is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel == nr) continue;
    if (sel != prow) {
      for (std::size_t c = col; c < nc; ++c) std::swap(m.at(sel, c), m.at(prow, c));
      if (b) std::swap((*b)[sel], (*b)[prow]);
    }
    for (std::size_t r = prow + 1; r < nr; ++r) {
      if (m.at(r, col).is_zero()) continue;
      F factor = m.at(r, col) / m.at(prow, col);
      fieldops::add(1);
      m.at(r, col) = F(0);
      for (std::size_t c = col + 1; c < nc; ++c) {
        if (m.at(prow, c).is_zero()) continue;
        m.at(r, c) -= factor * m.at(prow, c);
        fieldops::add(1);
      }
      if (b) {
        (*b)[r] -= factor * (*b)[prow];
        fieldops::add(1);
      }
    }
    pivot_cols.push_back(col);
    ++prow;
  }
  return pivot_cols;
}

}  // namespace detail

// Solves A*c = b exactly. Free variables are pinned to zero, so the returned
// solution is canonical and two runs on identical input agree.
template <typename F>
SolveOutcome<F> solve_linear(const Matrix<F>& a, std::vector<F> b) {
  if (a.rows() != b.size()) throw DimensionMismatch("solve_linear: rows(A) != len(b)");
  Matrix<F> m = a;
  std::vector<std::size_t> pivot_cols = detail::eliminate(m, &b);
  for (std::size_t r = pivot_cols.size(); r < m.rows(); ++r) {
    if (!b[r].is_zero()) return std::nullopt;
  }
  std::vector<F> x(m.cols(), F(0));
  for (std::size_t k = pivot_cols.size(); k-- > 0;) {
    std::size_t col = pivot_cols[k];
    F acc = b[k];
    for (std::size_t c = col + 1; c < m.cols(); ++c) {
      if (x[c].is_zero() || m.at(k, c).is_zero()) continue;
      acc -= m.at(k, c) * x[c];
      fieldops::add(1);
    }
    x[col] = acc / m.at(k, col);
    fieldops::add(1);
  }
  return x;
}

// Finds c with sum_s c[s] * rows[s] = target, i.e. solve_linear on the
// transpose. Same canonical free-variable rule.
template <typename F>
SolveOutcome<F> in_row_span(const Matrix<F>& rows, std::vector<F> target) {
  if (rows.cols() != target.size()) throw DimensionMismatch("in_row_span: cols(rows) != len(target)");
  return solve_linear(rows.transposed(), std::move(target));
}

template <typename F>
std::size_t rank(const Matrix<F>& a) {
  Matrix<F> m = a;
  return detail::eliminate<F>(m, nullptr).size();
}

}  // namespace sfglearn
