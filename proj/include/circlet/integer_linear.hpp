#pragma once

#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <gmpxx.h>

#include "circlet/cochain.hpp"
#include "circlet/nerve.hpp"

namespace circlet {

using BigInt = mpz_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  BigInt& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const BigInt& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  IntMatrix transpose() const;
  bool is_zero() const;
  bool operator==(const IntMatrix& o) const;

  // In-place elementary operations.
  void swap_rows(int a, int b);
  void swap_cols(int a, int b);
  void add_row_multiple(int target, int source, const BigInt& factor);  // row_t += f * row_s
  void add_col_multiple(int target, int source, const BigInt& factor);  // col_t += f * col_s
  void negate_row(int r);
  void negate_col(int c);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<BigInt> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
std::vector<BigInt> operator*(const IntMatrix& a, const std::vector<BigInt>& x);

struct SNFOptions {
  bool want_L = true;
  bool want_R = true;
  bool want_L_inverse = false;
  bool want_R_inverse = false;
};

// L * D * R = S with L, R unimodular and S diagonal, d_i | d_{i+1}, d_i > 0
// for i < rank. Requested transforms are filled, others left empty.
struct SNFResult {
  IntMatrix L, S, R;
  IntMatrix L_inverse, R_inverse;
  int rank = 0;

  const BigInt& diagonal(int i) const { return S(i, i); }
};

SNFResult smith_normal_form(const IntMatrix& D, const SNFOptions& options = {});

// Some integer x with A x = b, or nullopt when none exists.
std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& A, const std::vector<BigInt>& b);

class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(int rows, int cols) : cols_(cols), rows_(static_cast<std::size_t>(rows), boost::dynamic_bitset<>(cols)) {}

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  bool get(int i, int j) const { return rows_[i][j]; }
  void set(int i, int j, bool v = true) { rows_[i][j] = v; }
  const boost::dynamic_bitset<>& row(int i) const { return rows_[i]; }

 private:
  int cols_ = 0;
  std::vector<boost::dynamic_bitset<>> rows_;
};

// Some x with A x = b over GF(2), or nullopt when b is outside the column space.
std::optional<boost::dynamic_bitset<>> solve_gf2(const GF2Matrix& A, const boost::dynamic_bitset<>& b);

// Matrix of the twisted boundary from p-chains to (p-1)-chains, p in {1,2,3}.
// Columns are p-simplices and rows (p-1)-simplices, each in filtration order
// (ties by lexicographic order when the nerve has no filtration). The face
// that drops v0 carries w_{v0 v1}; the face that drops v_i carries (-1)^i.
// Throws NotACocycle when omega fails the cocycle condition.
IntMatrix twisted_boundary_matrix(const Nerve& nerve, const Z2Cochain& omega, int p);
// Same entries without the cocycle check.
IntMatrix twisted_boundary_matrix_unchecked(const Nerve& nerve, const Z2Cochain& omega, int p);

// Positions (within a dimension) listed in filtration order, or
// lexicographic order when no filtration is set.
std::vector<int> filtration_positions(const Nerve& nerve, int dim);

}  // namespace circlet
