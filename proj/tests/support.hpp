#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these call the library routine they are compared against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "circlet/circle_algebra.hpp"
#include "circlet/cochain.hpp"
#include "circlet/dataset.hpp"
#include "circlet/integer_linear.hpp"
#include "circlet/nerve.hpp"

namespace oracle {

inline double wrap01(double t) {
  t = std::fmod(t, 1.0);
  return t < 0 ? t + 1.0 : t;
}

// Signed turn difference in (-1/2, 1/2].
inline double turn_diff(double a, double b) {
  double d = wrap01(a - b);
  return d > 0.5 ? d - 1.0 : d;
}

inline double chord_turns(double a, double b) { return 2.0 * std::abs(std::sin(M_PI * turn_diff(a, b))); }

inline Eigen::Matrix2d o2_matrix(double turn, int sign) {
  const double c = std::cos(2 * M_PI * turn), s = std::sin(2 * M_PI * turn);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  Eigen::Matrix2d refl = Eigen::Matrix2d::Identity();
  refl(1, 1) = sign;
  return r * refl;
}

// Candidate arcs start just after each sorted angle and run backwards to the
// previous one; keep the shortest.
struct Arc {
  double midpoint;
  double width;
};

inline Arc gap_scan_arc(std::vector<double> angles) {
  for (auto& a : angles) a = wrap01(a);
  std::sort(angles.begin(), angles.end());
  const std::size_t n = angles.size();
  Arc best{angles[0], 2.0};
  for (std::size_t i = 0; i < n; ++i) {
    // arc from angles[i] counterclockwise to angles[i-1]
    const double start = angles[i];
    const double end = angles[(i + n - 1) % n];
    double width = wrap01(end - start);
    if (n == 1) width = 0;
    if (width < best.width) best = {wrap01(start + width / 2), width};
  }
  return best;
}

// Weighted Karcher objective minimized on a uniform grid, then refined by
// golden-section search around the best grid cell.
inline double karcher_grid(const std::vector<double>& turns, const std::vector<double>& w, double step = 1e-5) {
  auto objective = [&](double m) {
    double s = 0;
    for (std::size_t i = 0; i < turns.size(); ++i) {
      const double d = turn_diff(turns[i], m);
      s += w[i] * d * d;
    }
    return s;
  };
  double best = 0, best_val = std::numeric_limits<double>::infinity();
  const long steps = static_cast<long>(std::llround(1.0 / step));
  for (long k = 0; k < steps; ++k) {
    const double m = k * step;
    const double v = objective(m);
    if (v < best_val) best_val = v, best = m;
  }
  double a = best - step, b = best + step;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 80; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (objective(c) < objective(d)) b = d;
    else a = c;
  }
  return wrap01((a + b) / 2);
}

struct GridProcrustes {
  double turn;
  int sign;
  double error;
};

// Minimax chord error of f vs Omega g over a turn grid on both components,
// refined by local grid zooming.
inline GridProcrustes procrustes_grid(const std::vector<double>& f, const std::vector<double>& g, double step = 1e-5) {
  auto error = [&](double t, int s) {
    double e = 0;
    for (std::size_t i = 0; i < f.size(); ++i) e = std::max(e, chord_turns(f[i], t + s * g[i]));
    return e;
  };
  GridProcrustes best{0, 1, std::numeric_limits<double>::infinity()};
  const long steps = static_cast<long>(std::llround(1.0 / step));
  for (int s : {1, -1}) {
    double bt = 0, be = std::numeric_limits<double>::infinity();
    for (long k = 0; k < steps; ++k) {
      const double t = k * step;
      const double e = error(t, s);
      if (e < be) be = e, bt = t;
    }
    double h = step;
    for (int zoom = 0; zoom < 8; ++zoom) {
      const double c = bt;
      for (int k = -10; k <= 10; ++k) {
        const double t = c + k * h / 10;
        const double e = error(t, s);
        if (e < be) be = e, bt = t;
      }
      h /= 10;
    }
    if (be < best.error) best = {wrap01(bt), s, be};
  }
  return best;
}

// Bounded-box search for an integer solution of A x = b.
inline bool integer_solution_exists(const std::vector<std::vector<long>>& A, const std::vector<long>& b, int box) {
  const std::size_t n = A.empty() ? 0 : A[0].size();
  std::vector<long> x(n, -box);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < A.size() && ok; ++i) {
      long s = 0;
      for (std::size_t j = 0; j < n; ++j) s += A[i][j] * x[j];
      ok = s == b[i];
    }
    if (ok) return true;
    std::size_t j = 0;
    while (j < n && x[j] == box) x[j++] = -box;
    if (j == n) return false;
    ++x[j];
  }
}

// Exhaustive GF(2) search; columns up to ~20.
inline bool gf2_solution_exists(const std::vector<std::vector<int>>& A, const std::vector<int>& b) {
  const std::size_t n = A.empty() ? 0 : A[0].size();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < A.size() && ok; ++i) {
      int s = 0;
      for (std::size_t j = 0; j < n; ++j) s ^= A[i][j] & static_cast<int>((mask >> j) & 1);
      ok = s == b[i];
    }
    if (ok) return true;
  }
  return false;
}

// Determinant by fraction-free Bareiss elimination.
inline circlet::BigInt determinant(const circlet::IntMatrix& M) {
  const int n = M.rows();
  if (n == 0) return 1;
  circlet::IntMatrix a = M;
  circlet::BigInt prev = 1, sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        circlet::BigInt v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = v / prev;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// Integer coboundary matrix from 1-cochains to 2-cochains in lexicographic
// order, assembled from the definition (v0 v1 v2) -> w01 c(12) - c(02) + c(01).
inline circlet::IntMatrix coboundary_1(const circlet::Nerve& n, const circlet::Z2Cochain* w) {
  circlet::IntMatrix M(n.count(2), n.count(1));
  for (int t = 0; t < n.count(2); ++t) {
    const auto& v = n.at(2, t).vertices;
    const int e12 = n.find({v[1], v[2]}), e02 = n.find({v[0], v[2]}), e01 = n.find({v[0], v[1]});
    const long tw = w ? w->values[e01] : 1;
    M(t, e12) += tw;
    M(t, e02) -= 1;
    M(t, e01) += 1;
  }
  return M;
}

inline circlet::Cover cover_from_members(const std::vector<std::vector<int>>& members) {
  circlet::Cover c;
  for (std::size_t i = 0; i < members.size(); ++i) {
    circlet::CoverSet s;
    s.id = static_cast<int>(i);
    s.members = members[i];
    std::sort(s.members.begin(), s.members.end());
    c.push_back(s);
  }
  return c;
}

}  // namespace oracle
