#include "circlet/integer_linear.hpp"

#include <algorithm>
#include <numeric>

#include "circlet/error.hpp"

namespace circlet {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& v) { return sgn(v) == 0; });
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

void IntMatrix::swap_rows(int a, int b) {
  if (a == b) return;
  for (int j = 0; j < cols_; ++j) swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(int a, int b) {
  if (a == b) return;
  for (int i = 0; i < rows_; ++i) swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(int target, int source, const BigInt& factor) {
  if (sgn(factor) == 0) return;
  BigInt* t = &data_[static_cast<std::size_t>(target) * cols_];
  const BigInt* s = &data_[static_cast<std::size_t>(source) * cols_];
  for (int j = 0; j < cols_; ++j)
    if (sgn(s[j]) != 0) mpz_addmul(t[j].get_mpz_t(), factor.get_mpz_t(), s[j].get_mpz_t());
}

void IntMatrix::add_col_multiple(int target, int source, const BigInt& factor) {
  if (sgn(factor) == 0) return;
  for (int i = 0; i < rows_; ++i) {
    const BigInt& s = (*this)(i, source);
    if (sgn(s) != 0) mpz_addmul((*this)(i, target).get_mpz_t(), factor.get_mpz_t(), s.get_mpz_t());
  }
}

void IntMatrix::negate_row(int r) {
  for (int j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(int c) {
  for (int i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "matrix product shapes");
  IntMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const BigInt& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (int j = 0; j < b.cols(); ++j)
        if (sgn(b(k, j)) != 0) mpz_addmul(c(i, j).get_mpz_t(), aik.get_mpz_t(), b(k, j).get_mpz_t());
    }
  return c;
}

std::vector<BigInt> operator*(const IntMatrix& a, const std::vector<BigInt>& x) {
  if (a.cols() != static_cast<int>(x.size())) throw Error(ErrorKind::ShapeMismatch, "matrix-vector shapes");
  std::vector<BigInt> y(static_cast<std::size_t>(a.rows()));
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k)
      if (sgn(a(i, k)) != 0 && sgn(x[k]) != 0)
        mpz_addmul(y[i].get_mpz_t(), a(i, k).get_mpz_t(), x[k].get_mpz_t());
  return y;
}

namespace {

// Applies row and column operations to D while keeping the requested
// transforms in step.
class SnfWorker {
 public:
  SnfWorker(const IntMatrix& D, const SNFOptions& opt) : A(D), opt_(opt) {
    if (opt.want_L) L = IntMatrix::identity(D.rows());
    if (opt.want_L_inverse) Linv = IntMatrix::identity(D.rows());
    if (opt.want_R) R = IntMatrix::identity(D.cols());
    if (opt.want_R_inverse) Rinv = IntMatrix::identity(D.cols());
  }

  void row_add(int t, int s, const BigInt& f) {  // row_t += f row_s
    A.add_row_multiple(t, s, f);
    if (opt_.want_L) L.add_row_multiple(t, s, f);
    if (opt_.want_L_inverse) Linv.add_col_multiple(s, t, -f);
  }
  void col_add(int t, int s, const BigInt& f) {  // col_t += f col_s
    A.add_col_multiple(t, s, f);
    if (opt_.want_R) R.add_col_multiple(t, s, f);
    if (opt_.want_R_inverse) Rinv.add_row_multiple(s, t, -f);
  }
  void row_swap(int a, int b) {
    A.swap_rows(a, b);
    if (opt_.want_L) L.swap_rows(a, b);
    if (opt_.want_L_inverse) Linv.swap_cols(a, b);
  }
  void col_swap(int a, int b) {
    A.swap_cols(a, b);
    if (opt_.want_R) R.swap_cols(a, b);
    if (opt_.want_R_inverse) Rinv.swap_rows(a, b);
  }
  void row_negate(int r) {
    A.negate_row(r);
    if (opt_.want_L) L.negate_row(r);
    if (opt_.want_L_inverse) Linv.negate_col(r);
  }

  int run() {
    const int m = A.rows();
    const int n = A.cols();
    int t = 0;
    for (; t < std::min(m, n); ++t) {
      if (!bring_smallest_to(t)) break;
      for (;;) {
        bool dirty = false;
        for (int i = t + 1; i < m; ++i) {
          if (sgn(A(i, t)) == 0) continue;
          BigInt q = A(i, t) / A(t, t);
          row_add(i, t, -q);
          dirty |= sgn(A(i, t)) != 0;
        }
        for (int j = t + 1; j < n; ++j) {
          if (sgn(A(t, j)) == 0) continue;
          BigInt q = A(t, j) / A(t, t);
          col_add(j, t, -q);
          dirty |= sgn(A(t, j)) != 0;
        }
        if (dirty) {
          bring_smaller_remainder(t);
          continue;
        }
        if (abs(A(t, t)) == 1) break;
        int bad = -1;
        for (int i = t + 1; i < m && bad < 0; ++i)
          for (int j = t + 1; j < n; ++j)
            if (sgn(A(i, j)) != 0 && !mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
              bad = i;
              break;
            }
        if (bad < 0) break;
        row_add(t, bad, 1);
      }
      if (sgn(A(t, t)) < 0) row_negate(t);
    }
    return t;
  }

  IntMatrix A, L, Linv, R, Rinv;

 private:
  bool bring_smallest_to(int t) {
    int bi = -1, bj = -1;
    for (int j = t; j < A.cols(); ++j) {
      for (int i = t; i < A.rows(); ++i) {
        if (sgn(A(i, j)) == 0) continue;
        if (bi < 0 || mpz_cmpabs(A(i, j).get_mpz_t(), A(bi, bj).get_mpz_t()) < 0) {
          bi = i;
          bj = j;
          if (abs(A(i, j)) == 1) goto found;
        }
      }
    }
  found:
    if (bi < 0) return false;
    row_swap(t, bi);
    col_swap(t, bj);
    return true;
  }

  // Moves the smallest nonzero remainder in row t or column t to the pivot.
  void bring_smaller_remainder(int t) {
    int bi = t, bj = t;
    for (int i = t + 1; i < A.rows(); ++i)
      if (sgn(A(i, t)) != 0 && mpz_cmpabs(A(i, t).get_mpz_t(), A(bi, bj).get_mpz_t()) < 0) {
        bi = i;
        bj = t;
      }
    for (int j = t + 1; j < A.cols(); ++j)
      if (sgn(A(t, j)) != 0 && mpz_cmpabs(A(t, j).get_mpz_t(), A(bi, bj).get_mpz_t()) < 0) {
        bi = t;
        bj = j;
      }
    row_swap(t, bi);
    col_swap(t, bj);
  }

  SNFOptions opt_;
};

}  // namespace

SNFResult smith_normal_form(const IntMatrix& D, const SNFOptions& options) {
  SnfWorker w(D, options);
  SNFResult r;
  r.rank = w.run();
  r.S = std::move(w.A);
  r.L = std::move(w.L);
  r.L_inverse = std::move(w.Linv);
  r.R = std::move(w.R);
  r.R_inverse = std::move(w.Rinv);
  return r;
}

std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& A, const std::vector<BigInt>& b) {
  if (static_cast<int>(b.size()) != A.rows()) throw Error(ErrorKind::ShapeMismatch, "solve_integer shapes");
  const SNFResult snf = smith_normal_form(A);
  const std::vector<BigInt> c = snf.L * b;
  std::vector<BigInt> y(static_cast<std::size_t>(A.cols()));
  for (int i = 0; i < A.rows(); ++i) {
    if (i < snf.rank) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), snf.S(i, i).get_mpz_t())) return std::nullopt;
      y[i] = c[i] / snf.S(i, i);
    } else if (sgn(c[i]) != 0) {
      return std::nullopt;
    }
  }
  return snf.R * y;
}

std::optional<boost::dynamic_bitset<>> solve_gf2(const GF2Matrix& A, const boost::dynamic_bitset<>& b) {
  const int m = A.rows();
  const int n = A.cols();
  if (static_cast<int>(b.size()) != m) throw Error(ErrorKind::ShapeMismatch, "solve_gf2 shapes");
  std::vector<boost::dynamic_bitset<>> rows(static_cast<std::size_t>(m));
  std::vector<bool> rhs(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    rows[i] = A.row(i);
    rhs[i] = b[i];
  }
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int p = -1;
    for (int i = r; i < m; ++i)
      if (rows[i][c]) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[r], rows[p]);
    std::swap(rhs[r], rhs[p]);
    for (int i = 0; i < m; ++i)
      if (i != r && rows[i][c]) {
        rows[i] ^= rows[r];
        rhs[i] = rhs[i] != rhs[r];
      }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < m; ++i)
    if (rhs[i]) return std::nullopt;
  boost::dynamic_bitset<> x(static_cast<std::size_t>(n));
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

std::vector<int> filtration_positions(const Nerve& nerve, int dim) {
  std::vector<int> out;
  if (nerve.has_filtration()) {
    for (const auto& [d, p] : nerve.order)
      if (d == dim) out.push_back(p);
  } else {
    out.resize(static_cast<std::size_t>(nerve.count(dim)));
    std::iota(out.begin(), out.end(), 0);
  }
  return out;
}

IntMatrix twisted_boundary_matrix_unchecked(const Nerve& nerve, const Z2Cochain& omega, int p) {
  if (p < 1 || p > kMaxNerveDim) throw Error(ErrorKind::DegreeUnsupported, "boundary degree outside 1..3");
  if (static_cast<int>(omega.values.size()) != nerve.count(1))
    throw Error(ErrorKind::ShapeMismatch, "twisting cochain does not match the nerve");
  const auto cols = filtration_positions(nerve, p);
  const auto rows = filtration_positions(nerve, p - 1);
  std::vector<int> row_of(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);

  IntMatrix D(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Simplex& s = nerve.at(p, cols[c]).vertices;
    const auto faces = facets(s);
    for (std::size_t i = 0; i < faces.size(); ++i) {
      const int face = nerve.find(faces[i]);
      long sign;
      if (i == 0)
        sign = omega.values[nerve.find(Simplex{s[0], s[1]})];
      else
        sign = (i % 2 == 0) ? 1 : -1;
      D(row_of[face], static_cast<int>(c)) = sign;
    }
  }
  return D;
}

IntMatrix twisted_boundary_matrix(const Nerve& nerve, const Z2Cochain& omega, int p) {
  if (!is_z2_cocycle(nerve, omega)) throw Error(ErrorKind::NotACocycle, "twisting cochain is not a cocycle");
  return twisted_boundary_matrix_unchecked(nerve, omega, p);
}

}  // namespace circlet
