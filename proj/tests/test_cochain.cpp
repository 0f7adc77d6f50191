#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "circlet/char_classes.hpp"
#include "circlet/cochain.hpp"
#include "circlet/synthetic.hpp"
#include "circlet/witness.hpp"
#include "support.hpp"

using namespace circlet;

namespace {

Nerve triangle() { return build_nerve(oracle::cover_from_members({{0}, {0}, {0}})); }

// A nerve with plenty of triangles and tetrahedra.
Nerve dense_nerve(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> members(7);
  for (auto& m : members)
    for (int s = 0; s < 12; ++s)
      if (rng() % 2 == 0) m.push_back(s);
  for (auto& m : members)
    if (m.empty()) m.push_back(0);
  return build_nerve(oracle::cover_from_members(members));
}

Z2Cochain random_coboundary_z2(const Nerve& n, std::mt19937_64& rng) {
  std::vector<int> phi(n.count(0));
  for (auto& p : phi) p = rng() % 2 ? 1 : -1;
  Z2Cochain w{1, {}};
  for (const auto& e : n.simplices[1]) w.values.push_back(phi[e.vertices[0]] * phi[e.vertices[1]]);
  return w;
}

O2Element random_element(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  return O2Element(u(rng), u(rng) < 0.5 ? 1 : -1);
}

// Omega_jk = g_j g_k^{-1}, an exact cocycle.
O2Cochain gauge_cocycle(const Nerve& n, const std::vector<O2Element>& g) {
  O2Cochain c{1, {}};
  for (const auto& e : n.simplices[1]) c.values.push_back(g[e.vertices[0]] * g[e.vertices[1]].inverse());
  return c;
}

}  // namespace

TEST_CASE("coboundary examples") {
  const Nerve t = triangle();
  REQUIRE(t.count(2) == 1);
  const RealCochain zero = constant_cochain(t, 1, 0.0);
  CHECK(twisted_coboundary(t, zero, nullptr).values == std::vector<double>{0.0});
  // Edges in lexicographic order: (01), (02), (12).
  const RealCochain theta{1, {0.4, -0.2, 0.4}};
  CHECK(twisted_coboundary(t, theta, nullptr).values[0] == doctest::Approx(1.0));
  const Z2Cochain plus = constant_cochain(t, 1, 1);
  CHECK(twisted_coboundary(t, theta, &plus).values[0] == doctest::Approx(1.0));
}

TEST_CASE("twisted coboundary squares to zero") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const Nerve n = dense_nerve(trial);
    const Z2Cochain w = random_coboundary_z2(n, rng);
    REQUIRE(is_z2_cocycle(n, w));
    IntCochain phi{0, {}};
    for (int v = 0; v < n.count(0); ++v) phi.values.push_back(static_cast<long long>(rng() % 21) - 10);
    const IntCochain dd = twisted_coboundary(n, twisted_coboundary(n, phi, &w), &w);
    for (long long x : dd.values) CHECK(x == 0);
    IntCochain c1{1, {}};
    for (int e = 0; e < n.count(1); ++e) c1.values.push_back(static_cast<long long>(rng() % 21) - 10);
    const IntCochain dd1 = twisted_coboundary(n, twisted_coboundary(n, c1, &w), &w);
    for (long long x : dd1.values) CHECK(x == 0);
    RealCochain r{1, {}};
    std::uniform_real_distribution<double> u(-1, 1);
    for (int e = 0; e < n.count(1); ++e) r.values.push_back(u(rng));
    for (double x : twisted_coboundary(n, twisted_coboundary(n, r, &w), &w).values) CHECK(std::abs(x) < 1e-12);
  }
}

TEST_CASE("twisted coboundary matches the defining formula") {
  std::mt19937_64 rng(37);
  const Nerve n = dense_nerve(5);
  const Z2Cochain w = random_coboundary_z2(n, rng);
  IntCochain c{1, {}};
  for (int e = 0; e < n.count(1); ++e) c.values.push_back(static_cast<long long>(rng() % 7) - 3);
  const IntCochain d = twisted_coboundary(n, c, &w);
  const IntMatrix M = oracle::coboundary_1(n, &w);
  for (int t = 0; t < n.count(2); ++t) {
    long long s = 0;
    for (int e = 0; e < n.count(1); ++e) s += M(t, e).get_si() * c.values[e];
    CHECK(d.values[t] == s);
  }
}

TEST_CASE("cochain distance") {
  const Nerve t = triangle();
  O2Cochain a = constant_cochain(t, 1, O2Element::identity());
  CHECK(cochain_distance(a, a) == 0);
  O2Cochain b = a;
  b.values[1] = O2Element::rotation(0.5);
  CHECK(cochain_distance(a, b) == doctest::Approx(2 * std::sqrt(2.0)));

  std::mt19937_64 rng(41);
  const Nerve n = dense_nerve(9);
  for (int trial = 0; trial < 50; ++trial) {
    O2Cochain x{1, {}}, y{1, {}}, z{1, {}};
    for (int e = 0; e < n.count(1); ++e) {
      x.values.push_back(random_element(rng));
      y.values.push_back(random_element(rng));
      z.values.push_back(random_element(rng));
    }
    double scan = 0;
    for (int e = 0; e < n.count(1); ++e) scan = std::max(scan, (x.values[e].matrix() - y.values[e].matrix()).norm());
    CHECK(cochain_distance(x, y) == doctest::Approx(scan).epsilon(1e-12));
    CHECK(cochain_distance(x, y) == doctest::Approx(cochain_distance(y, x)));
    CHECK(cochain_distance(x, x) == 0);
    CHECK(cochain_distance(x, z) <= cochain_distance(x, y) + cochain_distance(y, z) + 1e-12);
  }
}

TEST_CASE("cocycle defect") {
  const Nerve t = triangle();
  O2Cochain c = constant_cochain(t, 1, O2Element::identity());
  CHECK(cocycle_defect(t, c) == doctest::Approx(0));
  for (double tau : {0.01, 0.1, 0.25, 0.4}) {
    c.values[2] = O2Element::rotation(tau);
    CHECK(cocycle_defect(t, c) == doctest::Approx(2 * std::sqrt(2.0) * std::abs(std::sin(M_PI * tau))));
  }

  std::mt19937_64 rng(43);
  const Nerve n = dense_nerve(3);
  std::vector<O2Element> g(n.count(0));
  for (auto& x : g) x = random_element(rng);
  O2Cochain exact = gauge_cocycle(n, g);
  CHECK(cocycle_defect(n, exact) < 1e-12);
  // A per-edge rotation of chord size <= eps/3 keeps every triangle within eps.
  std::uniform_real_distribution<double> u(-1, 1);
  for (double eps : {0.02, 0.1, 0.3}) {
    O2Cochain noisy = exact;
    const double tmax = std::asin(eps / 3 / (2 * std::sqrt(2.0))) / M_PI;
    for (auto& v : noisy.values) v = O2Element::rotation(tmax * u(rng)) * v;
    CHECK(cocycle_defect(n, noisy) <= eps + 1e-12);
  }
}

TEST_CASE("acting by a potential") {
  std::mt19937_64 rng(47);
  const Nerve n = dense_nerve(11);
  O2Cochain omega{1, {}};
  for (int e = 0; e < n.count(1); ++e) omega.values.push_back(random_element(rng));
  const O2Cochain id = constant_cochain(n, 0, O2Element::identity());
  CHECK(cochain_distance(act_by_potential(n, id, omega), omega) < 1e-12);

  O2Cochain rot{1, {}};
  std::uniform_real_distribution<double> u(0, 1);
  for (int e = 0; e < n.count(1); ++e) rot.values.push_back(O2Element::rotation(u(rng)));
  const O2Cochain c = constant_cochain(n, 0, O2Element::rotation(0.3));
  CHECK(cochain_distance(act_by_potential(n, c, rot), rot) < 1e-12);

  for (int trial = 0; trial < 20; ++trial) {
    O2Cochain phi{0, {}};
    for (int v = 0; v < n.count(0); ++v) phi.values.push_back(random_element(rng));
    const O2Cochain moved = act_by_potential(n, phi, omega);
    CHECK(std::abs(cocycle_defect(n, moved) - cocycle_defect(n, omega)) < 1e-10);
    for (int e = 0; e < n.count(1); ++e) {
      const int j = n.at(1, e).vertices[0], k = n.at(1, e).vertices[1];
      const Eigen::Matrix2d expect = phi.values[j].matrix() * omega.values[e].matrix() * phi.values[k].matrix().transpose();
      CHECK((moved.values[e].matrix() - expect).norm() < 1e-12);
    }
  }
}

TEST_CASE("edge lookup follows the inversion rules") {
  std::mt19937_64 rng(53);
  const Nerve t = triangle();
  O2Cochain c{1, {}};
  for (int e = 0; e < 3; ++e) c.values.push_back(random_element(rng));
  CHECK(o2_frobenius_distance(o2_edge(t, c, 2, 0), c.values[1].inverse()) < 1e-12);
  CHECK(o2_frobenius_distance(o2_edge(t, c, 1, 1), O2Element::identity()) < 1e-12);
  const Z2Cochain w{1, {-1, 1, 1}};
  const RealCochain theta{1, {0.2, 0.3, -0.1}};
  CHECK(twisted_edge(t, theta, w, 1, 0) == doctest::Approx(0.2));
  CHECK(twisted_edge(t, theta, w, 2, 0) == doctest::Approx(-0.3));
  CHECK(z2_edge(t, w, 1, 0) == -1);
}

TEST_CASE("O(2) coboundary vanishes on exact cocycles") {
  std::mt19937_64 rng(59);
  const Nerve n = dense_nerve(13);
  std::vector<O2Element> g(n.count(0));
  for (auto& x : g) x = random_element(rng);
  const O2Cochain d = o2_coboundary(n, gauge_cocycle(n, g));
  for (const auto& v : d.values) CHECK(o2_frobenius_distance(v, O2Element::identity()) < 1e-12);
}
