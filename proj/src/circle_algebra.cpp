#include "circlet/circle_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "circlet/error.hpp"

namespace circlet {

double wrap_turn(double t) {
  double r = t - std::floor(t);
  if (r >= 1.0) r = 0.0;
  return r;
}

double principal_turn(double t) {
  double r = wrap_turn(t);
  return r > 0.5 ? r - 1.0 : r;
}

S1Point::S1Point(double x_, double y_) {
  const double n = std::hypot(x_, y_);
  x = x_ / n;
  y = y_ / n;
}

S1Point S1Point::from_turn(double t) {
  S1Point p;
  p.x = std::cos(kTwoPi * t);
  p.y = std::sin(kTwoPi * t);
  return p;
}

double S1Point::turn() const { return wrap_turn(std::atan2(y, x) / kTwoPi); }

O2Element::O2Element(double turn_, int sign_) : turn(wrap_turn(turn_)), sign(sign_ < 0 ? -1 : 1) {}

O2Element O2Element::nearest(const Eigen::Matrix2d& m) {
  // R(t) = [[c,-s],[s,c]], R(t) r(-1) = [[c,s],[s,-c]].
  const double rot_t = std::atan2(m(1, 0) - m(0, 1), m(0, 0) + m(1, 1));
  const double ref_t = std::atan2(m(1, 0) + m(0, 1), m(0, 0) - m(1, 1));
  const O2Element rot(rot_t / kTwoPi, 1);
  const O2Element ref(ref_t / kTwoPi, -1);
  return (m - rot.matrix()).norm() <= (m - ref.matrix()).norm() ? rot : ref;
}

Eigen::Matrix2d O2Element::matrix() const {
  const double c = std::cos(kTwoPi * turn);
  const double s = std::sin(kTwoPi * turn);
  Eigen::Matrix2d m;
  m << c, -s * sign, s, c * sign;
  return m;
}

O2Element O2Element::inverse() const { return {-sign * turn, sign}; }

O2Element o2_compose(const O2Element& a, const O2Element& b) {
  return {a.turn + a.sign * b.turn, a.sign * b.sign};
}

S1Point o2_apply(const O2Element& a, const S1Point& p) {
  const Eigen::Vector2d v = a.matrix() * p.vec();
  return {v.x(), v.y()};
}

double log_so2(const O2Element& a) {
  if (a.sign < 0) throw Error(ErrorKind::ReflectionHasNoLog, "log of a reflection");
  return principal_turn(a.turn);
}

S1Distance s1_distance(const S1Point& p, const S1Point& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  const double cross = p.x * q.y - p.y * q.x;
  const double dot = p.x * q.x + p.y * q.y;
  return {std::hypot(dx, dy), std::abs(std::atan2(cross, dot))};
}

double o2_frobenius_distance(const O2Element& a, const O2Element& b) {
  return (a.matrix() - b.matrix()).norm();
}

ArcSummary shortest_enclosing_arc(std::span<const double> angles) {
  if (angles.empty()) throw Error(ErrorKind::ShapeMismatch, "shortest_enclosing_arc of no angles");
  std::vector<double> a(angles.size());
  std::transform(angles.begin(), angles.end(), a.begin(), wrap_turn);
  std::sort(a.begin(), a.end());

  const std::size_t n = a.size();
  // gap i runs from a[i] forward to a[i+1] (cyclically).
  std::vector<double> gaps(n);
  for (std::size_t i = 0; i + 1 < n; ++i) gaps[i] = a[i + 1] - a[i];
  gaps[n - 1] = a[0] + 1.0 - a[n - 1];

  const double max_gap = *std::max_element(gaps.begin(), gaps.end());
  constexpr double kTieTol = 1e-12;
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < n; ++i)
    if (gaps[i] >= max_gap - kTieTol) tied.push_back(i);

  auto midpoint_after_gap = [&](std::size_t i) {
    const double start = a[(i + 1) % n];
    return wrap_turn(start + 0.5 * (1.0 - gaps[i]));
  };
  if (tied.size() > 1) {
    std::vector<double> mids;
    for (std::size_t i : tied) mids.push_back(midpoint_after_gap(i));
    throw NonUniqueArcError(std::move(mids));
  }
  const std::size_t g = tied.front();
  return {midpoint_after_gap(g), std::max(0.0, 1.0 - max_gap), max_gap};
}

S1Point karcher_mean(std::span<const S1Point> points, std::span<const double> weights) {
  if (points.size() != weights.size() || points.empty())
    throw Error(ErrorKind::ShapeMismatch, "karcher_mean needs one weight per point");

  std::vector<double> turns;
  double total = 0.0;
  std::size_t anchor = points.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (weights[i] < 0.0) throw Error(ErrorKind::ShapeMismatch, "negative Karcher weight");
    if (weights[i] > 0.0) {
      turns.push_back(points[i].turn());
      total += weights[i];
      if (anchor == points.size()) anchor = i;
    }
  }
  if (anchor == points.size()) throw Error(ErrorKind::ShapeMismatch, "all Karcher weights are zero");

  try {
    if (shortest_enclosing_arc(turns).width >= 0.5)
      throw Error(ErrorKind::DiameterTooLarge, "points span half the circle or more");
  } catch (const NonUniqueArcError&) {
    throw Error(ErrorKind::DiameterTooLarge, "points span half the circle or more");
  }

  const double base = points[anchor].turn();
  double shift = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (weights[i] > 0.0) shift += weights[i] * principal_turn(points[i].turn() - base);
  return S1Point::from_turn(base + shift / total);
}

}  // namespace circlet
