#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace circlet {

// All angles in this library are measured in turns (full revolutions).
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Reduce to [0, 1).
double wrap_turn(double t);
// Reduce to the principal branch (-1/2, 1/2].
double principal_turn(double t);

struct S1Point {
  double x = 1.0;
  double y = 0.0;

  S1Point() = default;
  // Normalizes (x, y) onto the unit circle.
  S1Point(double x_, double y_);

  static S1Point from_turn(double t);
  double turn() const;  // in [0, 1)
  Eigen::Vector2d vec() const { return {x, y}; }
};

// An isometry of the circle, R(2*pi*turn) * diag(1, sign).
struct O2Element {
  double turn = 0.0;  // in [0, 1)
  int sign = 1;       // determinant, +1 or -1

  O2Element() = default;
  O2Element(double turn_, int sign_);

  static O2Element identity() { return {}; }
  static O2Element rotation(double t) { return {t, 1}; }
  static O2Element reflection(double t) { return {t, -1}; }
  // Nearest element of O(2) to an arbitrary 2x2 matrix.
  static O2Element nearest(const Eigen::Matrix2d& m);

  Eigen::Matrix2d matrix() const;
  O2Element inverse() const;
  bool is_rotation() const { return sign > 0; }
};

O2Element o2_compose(const O2Element& a, const O2Element& b);
inline O2Element operator*(const O2Element& a, const O2Element& b) { return o2_compose(a, b); }

S1Point o2_apply(const O2Element& a, const S1Point& p);

// Principal logarithm in turns; throws ReflectionHasNoLog for sign = -1.
double log_so2(const O2Element& a);
inline O2Element exp_so2(double t) { return O2Element::rotation(t); }

struct S1Distance {
  double chord = 0.0;
  double geodesic = 0.0;  // radians
};

S1Distance s1_distance(const S1Point& p, const S1Point& q);
inline double chord(const S1Point& p, const S1Point& q) { return s1_distance(p, q).chord; }

double o2_frobenius_distance(const O2Element& a, const O2Element& b);

struct ArcSummary {
  double midpoint = 0.0;  // turn
  double width = 0.0;     // turn
  double max_gap = 1.0;   // turn
};

// Shortest arc containing every angle. Throws NonUniqueArcError when the
// maximal gap is tied (within 1e-12 turns).
ArcSummary shortest_enclosing_arc(std::span<const double> angles);

// Weighted Karcher (Frechet) mean. Points with positive weight must lie
// within an arc of width < 1/2 turn; otherwise throws DiameterTooLarge.
S1Point karcher_mean(std::span<const S1Point> points, std::span<const double> weights);

}  // namespace circlet
