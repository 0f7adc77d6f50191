#include <doctest.h>

#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "circlet/char_classes.hpp"
#include "circlet/error.hpp"
#include "circlet/filtration.hpp"
#include "circlet/synthetic.hpp"
#include "circlet/unwrap.hpp"
#include "circlet/witness.hpp"
#include "support.hpp"

using namespace circlet;

namespace {

// One sample per facet, lying in every vertex set of that facet.
Cover cover_from_facets(const std::vector<std::vector<int>>& facets) {
  int n = 0;
  for (const auto& f : facets)
    for (int v : f) n = std::max(n, v + 1);
  std::vector<std::vector<int>> members(n);
  for (std::size_t s = 0; s < facets.size(); ++s)
    for (int v : facets[s]) members[v].push_back(static_cast<int>(s));
  return oracle::cover_from_members(members);
}

const std::vector<std::vector<int>> kTetraBoundary{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

// Six-vertex projective plane.
const std::vector<std::vector<int>> kRP2{{0, 1, 3}, {0, 1, 5}, {0, 2, 4}, {0, 2, 5}, {0, 3, 4},
                                         {1, 2, 3}, {1, 2, 4}, {1, 4, 5}, {2, 3, 5}, {3, 4, 5}};

std::vector<std::vector<int>> icosahedron() {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  std::vector<Eigen::Vector3d> v;
  for (double a : {-1.0, 1.0})
    for (double b : {-phi, phi}) {
      v.emplace_back(0, a, b);
      v.emplace_back(a, b, 0);
      v.emplace_back(b, 0, a);
    }
  auto adjacent = [&](int i, int j) { return std::abs((v[i] - v[j]).norm() - 2.0) < 1e-9; };
  std::vector<std::vector<int>> tri;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j)
      for (int k = j + 1; k < 12; ++k)
        if (adjacent(i, j) && adjacent(j, k) && adjacent(i, k)) tri.push_back({i, j, k});
  return tri;
}

// Sign propagation over the edges entering by stage r (all edges if r < 0).
bool z2_potential_exists(const Nerve& n, const Z2Cochain& w, int r = -1) {
  std::vector<std::vector<std::pair<int, int>>> adj(n.count(0));
  for (int e = 0; e < n.count(1); ++e) {
    if (r >= 0 && n.at(1, e).filtration_index > r) continue;
    const int a = n.at(1, e).vertices[0], b = n.at(1, e).vertices[1];
    adj[a].emplace_back(b, w.values[e]);
    adj[b].emplace_back(a, w.values[e]);
  }
  std::vector<int> phi(n.count(0), 0);
  for (int s = 0; s < n.count(0); ++s) {
    if (phi[s]) continue;
    phi[s] = 1;
    std::deque<int> q{s};
    while (!q.empty()) {
      const int a = q.front();
      q.pop_front();
      for (auto [b, sign] : adj[a]) {
        if (!phi[b]) {
          phi[b] = phi[a] * sign;
          q.push_back(b);
        } else if (phi[b] != phi[a] * sign) {
          return false;
        }
      }
    }
  }
  return true;
}

int z2_cobirth_oracle(const Nerve& n, const Z2Cochain& w) {
  int first_bad = n.size() + 1;
  for (int t = 0; t < n.count(2); ++t) {
    const auto& v = n.at(2, t).vertices;
    const int prod = w.values[n.find({v[0], v[1]})] * w.values[n.find({v[0], v[2]})] * w.values[n.find({v[1], v[2]})];
    if (prod < 0) first_bad = std::min(first_bad, n.at(2, t).filtration_index);
  }
  return first_bad - 1;
}

int z2_codeath_oracle(const Nerve& n, const Z2Cochain& w) {
  for (int r = n.size(); r > 0; --r)
    if (z2_potential_exists(n, w, r)) return r;
  return 0;
}

// Stage-restricted integer solve of coboundary_1 beta = lambda.
bool twisted_coboundary_at(const Nerve& n, const IntMatrix& C, const IntCochain& lambda, int r) {
  std::vector<int> rows, cols;
  for (int t = 0; t < n.count(2); ++t)
    if (n.at(2, t).filtration_index <= r) rows.push_back(t);
  for (int e = 0; e < n.count(1); ++e)
    if (n.at(1, e).filtration_index <= r) cols.push_back(e);
  if (rows.empty()) return true;
  IntMatrix M(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  std::vector<BigInt> b(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    b[i] = static_cast<long>(lambda.values[rows[i]]);
    for (std::size_t j = 0; j < cols.size(); ++j) M(i, j) = C(rows[i], cols[j]);
  }
  return solve_integer(M, b).has_value();
}

Nerve filtered(const SyntheticBundle& b, int min_overlap, O2Cochain* witness = nullptr) {
  const Nerve n = build_nerve(b.cover, kMaxNerveDim, min_overlap);
  const O2Cochain w = assemble_witness(b.trivs, n);
  if (witness) *witness = w;
  return filtration_order(edge_weights(n, b.trivs, w));
}

long long abs_euler(const Cover& cover, const Trivialization& trivs, int min_overlap) {
  const Nerve n = build_nerve(cover, kMaxNerveDim, min_overlap);
  const CharClassResult c = euler_cochain(n, assemble_witness(trivs, n));
  REQUIRE(z2_potential_exists(n, c.sw) == z2_potential(n, c.sw).has_value());
  return std::llabs(euler_number(c.euler, fundamental_class_twisted(n, c.sw).mu).value);
}

void check_kernel(const Nerve& n, const Z2Cochain* w, const IntCochain& mu) {
  const IntMatrix C = oracle::coboundary_1(n, w);
  for (int e = 0; e < n.count(1); ++e) {
    long long s = 0;
    for (int t = 0; t < n.count(2); ++t) s += C(t, e).get_si() * mu.values[t];
    CHECK(s == 0);
  }
  for (long long x : mu.values) CHECK(std::llabs(x) == 1);
  CHECK(mu.values[0] == 1);
}

SyntheticBundle scenario(const std::string& model, std::uint64_t seed = 0, double noise = 0.0) {
  ScenarioSpec spec;
  spec.model = model;
  spec.seed = seed;
  spec.noise = noise;
  return generate(spec);
}

}  // namespace

TEST_CASE("sw class is the entrywise determinant") {
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> u(0, 1);
  O2Cochain rot{1, {}};
  for (int e = 0; e < 20; ++e) rot.values.push_back(O2Element::rotation(u(rng)));
  for (int v : sw_class(rot).values) CHECK(v == 1);
  O2Cochain mixed{1, {}};
  std::vector<int> signs;
  for (int e = 0; e < 20; ++e) {
    signs.push_back(u(rng) < 0.5 ? 1 : -1);
    mixed.values.push_back(O2Element(u(rng), signs.back()));
  }
  const Z2Cochain sw = sw_class(mixed);
  for (int e = 0; e < 20; ++e) CHECK(sw.values[e] == static_cast<int>(std::lround(mixed.values[e].matrix().determinant())));
}

TEST_CASE("euler cochain on a single triangle") {
  const Nerve t = build_nerve(cover_from_facets({{0, 1, 2}}));
  // Lexicographic edges (01), (02), (12).
  const O2Cochain w{1, {O2Element::rotation(0.4), O2Element::rotation(-0.2), O2Element::rotation(0.4)}};
  const CharClassResult c = euler_cochain(t, w);
  REQUIRE(c.euler.values.size() == 1);
  CHECK(c.euler.values[0] == 1);
  CHECK(c.bracket_margin == doctest::Approx(0.5));
  CHECK(c.lift.values[0] == doctest::Approx(0.4));
  CHECK(c.lift.values[1] == doctest::Approx(-0.2));
  CHECK_FALSE(c.defect_warning);

  const O2Cochain id = constant_cochain(t, 1, O2Element::identity());
  CHECK(euler_cochain(t, id).euler.values == std::vector<long long>{0});

  const O2Cochain half{1, {O2Element::rotation(0.25), O2Element::rotation(-0.25), O2Element::rotation(0.0)}};
  try {
    euler_cochain(t, half);
    FAIL("expected a bracket error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BracketAmbiguous);
  }

  const O2Cochain bad{1, {O2Element::rotation(0.3), O2Element::rotation(-0.1), O2Element::rotation(0.05)}};
  CHECK(euler_cochain(t, bad).defect_warning);
}

TEST_CASE("gauge-exact rotation cocycles give coboundary euler cochains") {
  const Nerve n = build_nerve(cover_from_facets(icosahedron()));
  const IntMatrix C = oracle::coboundary_1(n, nullptr);
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<O2Element> g(n.count(0));
    for (auto& x : g) x = O2Element::rotation(u(rng));
    O2Cochain w{1, {}};
    for (const auto& e : n.simplices[1]) w.values.push_back(g[e.vertices[0]] * g[e.vertices[1]].inverse());
    const CharClassResult c = euler_cochain(n, w);
    std::vector<BigInt> b;
    for (long long x : c.euler.values) b.emplace_back(static_cast<long>(x));
    CHECK(solve_integer(C, b).has_value());
  }
}

TEST_CASE("fundamental classes") {
  const Nerve tet = build_nerve(cover_from_facets(kTetraBoundary));
  REQUIRE(tet.count(2) == 4);
  REQUIRE(tet.count(3) == 0);
  const Z2Cochain plus = constant_cochain(tet, 1, 1);
  const FundamentalClass mu = fundamental_class_twisted(tet, plus);
  // Boundary of (0123) is (123) - (023) + (013) - (012).
  CHECK(mu.mu.values == std::vector<long long>{1, -1, 1, -1});
  check_kernel(tet, &plus, mu.mu);
  CHECK(mu.sign_convention == kFundamentalSignConvention);

  const auto ico_facets = icosahedron();
  REQUIRE(ico_facets.size() == 20);
  const Nerve ico = build_nerve(cover_from_facets(ico_facets));
  const Z2Cochain ico_plus = constant_cochain(ico, 1, 1);
  const FundamentalClass mi = fundamental_class_twisted(ico, ico_plus);
  check_kernel(ico, &ico_plus, mi.mu);
  CHECK(euler_number(constant_cochain(ico, 2, 0LL), mi.mu).value == 0);

  // The projective plane: no untwisted class, a twisted one for the
  // orientation character.
  const Nerve rp2 = build_nerve(cover_from_facets(kRP2));
  REQUIRE(rp2.count(1) == 15);
  std::map<Simplex, int> edge_use;
  for (const auto& f : kRP2)
    for (const auto& e : facets(f)) ++edge_use[e];
  for (const auto& [e, uses] : edge_use) REQUIRE(uses == 2);
  const Z2Cochain rp2_plus = constant_cochain(rp2, 1, 1);
  try {
    fundamental_class_twisted(rp2, rp2_plus);
    FAIL("expected NotASurface");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotASurface);
  }
  std::optional<Z2Cochain> generator;
  for (std::uint32_t mask = 0; mask < (1u << 15) && !generator; ++mask) {
    Z2Cochain w{1, {}};
    for (int e = 0; e < 15; ++e) w.values.push_back((mask >> e) & 1 ? -1 : 1);
    if (z2_cobirth_oracle(rp2, w) == rp2.size() && !z2_potential_exists(rp2, w)) generator = w;
  }
  REQUIRE(generator);
  const FundamentalClass mr = fundamental_class_twisted(rp2, *generator);
  check_kernel(rp2, &*generator, mr.mu);
  CHECK(mr.kernel_rank >= 1);

  CHECK_THROWS_AS(euler_number(constant_cochain(tet, 2, 0LL), mr.mu), Error);
}

TEST_CASE("euler cochain is a cocycle on synthetic sphere bundles") {
  int checked = 0;
  for (const char* model : {"lens:1", "lens:2", "rp2:1"}) {
    const SyntheticBundle b = scenario(model, 11);
    const Nerve n = build_nerve(b.cover, kMaxNerveDim, 3);
    const CharClassResult c = euler_cochain(n, assemble_witness(b.trivs, n));
    CAPTURE(model);
    CHECK(z2_cobirth_oracle(n, c.sw) == n.size());
    if (c.witness_defect >= 0.5) continue;
    ++checked;
    for (long long x : twisted_coboundary(n, c.euler, &c.sw).values) CHECK(x == 0);
  }
  CHECK(checked > 0);
}

TEST_CASE("euler numbers of the synthetic models") {
  for (int p : {1, 2, 3}) {
    const SyntheticBundle b = scenario("lens:" + std::to_string(p));
    CHECK(abs_euler(b.cover, b.trivs, 3) == p);
  }
  for (int p : {1, 3}) {
    const SyntheticBundle b = scenario("rp2:" + std::to_string(p));
    const Nerve n = build_nerve(b.cover, kMaxNerveDim, 3);
    CHECK_FALSE(z2_potential_exists(n, sw_class(assemble_witness(b.trivs, n))));
    CHECK(abs_euler(b.cover, b.trivs, 3) == b.truth.euler_abs);
  }
}

TEST_CASE("euler cochain class is stable") {
  const SyntheticBundle b = scenario("lens:1", 4);
  const Nerve n = build_nerve(b.cover, kMaxNerveDim, 3);
  const O2Cochain w = assemble_witness(b.trivs, n);
  const CharClassResult c = euler_cochain(n, w);
  const IntMatrix C = oracle::coboundary_1(n, &c.sw);
  auto difference_is_coboundary = [&](const CharClassResult& d) {
    std::vector<BigInt> diff;
    for (std::size_t t = 0; t < c.euler.values.size(); ++t)
      diff.emplace_back(static_cast<long>(d.euler.values[t] - c.euler.values[t]));
    return solve_integer(C, diff).has_value();
  };
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 10; ++trial) {
    O2Cochain moved = w;
    for (auto& v : moved.values) v = O2Element::rotation(0.05 * u(rng)) * v;
    REQUIRE(cochain_distance(moved, w) < 1.0);
    const CharClassResult d = euler_cochain(n, moved);
    CHECK(d.sw.values == c.sw.values);
    CHECK(difference_is_coboundary(d));

    O2Cochain phi{0, {}};
    for (int v = 0; v < n.count(0); ++v) phi.values.push_back(O2Element::rotation(u(rng)));
    const CharClassResult g = euler_cochain(n, act_by_potential(n, phi, w));
    CHECK(g.sw.values == c.sw.values);
    CHECK(difference_is_coboundary(g));
  }
}

TEST_CASE("euler cochain does not depend on the branch of the lift") {
  const SyntheticBundle b = scenario("lens:2", 6);
  const Nerve n = build_nerve(b.cover, kMaxNerveDim, 3);
  const CharClassResult c = euler_cochain(n, assemble_witness(b.trivs, n));
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    RealCochain lift = c.lift;
    IntCochain k{1, {}};
    for (auto& v : lift.values) {
      k.values.push_back(static_cast<long long>(rng() % 7) - 3);
      v += static_cast<double>(k.values.back());
    }
    const RealCochain raw = twisted_coboundary(n, lift, &c.sw);
    const IntCochain dk = twisted_coboundary(n, k, &c.sw);
    for (int t = 0; t < n.count(2); ++t) CHECK(std::llround(raw.values[t]) == c.euler.values[t] + dk.values[t]);
  }
}

TEST_CASE("persistence on circle bases") {
  const SyntheticBundle torus = scenario("torus", 2, 0.01);
  O2Cochain w;
  Nerve n = filtered(torus, 1, &w);
  ClassPersistence p = persistence_z2(n, sw_class(w));
  CHECK(p.cobirth.index == n.size());
  CHECK(p.codeath.index == n.size());
  CHECK(p.methods_agree);

  const SyntheticBundle klein = scenario("klein", 2, 0.01);
  n = filtered(klein, 1, &w);
  const Z2Cochain sw = sw_class(w);
  p = persistence_z2(n, sw);
  CHECK(p.cobirth.index == n.size());
  CHECK(p.codeath.index < p.cobirth.index);
  CHECK(p.codeath.index == z2_codeath_oracle(n, sw));
  CHECK(p.matrix_codeath == p.codeath.index);
  CHECK(codeath_bruteforce_z2(n, sw, n.size(), true) == p.codeath.index);
  // The edge entering right after the codeath closes the odd loop.
  CHECK(n.by_filtration(p.codeath.index + 1).vertices.size() == 2);
}

TEST_CASE("persistence matrix method matches per-stage solves") {
  for (const char* model : {"lens:1", "rp2:1", "lens:2"}) {
    for (double noise : {0.0, 0.02}) {
      const SyntheticBundle b = scenario(model, 3, noise);
      O2Cochain w;
      const Nerve n = filtered(b, 3, &w);
      const CharClassResult c = euler_cochain(n, w);
      const PersistenceReport rep = persistence(n, c.sw, c.euler);
      CAPTURE(model);
      CAPTURE(noise);
      CHECK(rep.sw.cobirth.index == z2_cobirth_oracle(n, c.sw));
      CHECK(rep.sw.codeath.index == z2_codeath_oracle(n, c.sw));
      CHECK(rep.sw.matrix_codeath == rep.sw.codeath.index);
      CHECK(rep.sw.codeath.index <= rep.sw.cobirth.index);

      const int limit = rep.sw.cobirth.index;
      const IntMatrix C = oracle::coboundary_1(n, &c.sw);
      int brute = 0;
      for (int r = limit; r > 0 && brute == 0; --r)
        if (twisted_coboundary_at(n, C, c.euler, r)) brute = r;
      CHECK(rep.euler.codeath.index == brute);
      CHECK(rep.euler.matrix_codeath == brute);
      CHECK(codeath_bruteforce_twisted(n, c.euler, c.sw, limit, true) == brute);
      CHECK(rep.euler.codeath.index <= rep.euler.cobirth.index);
      CHECK(rep.euler.cobirth.index <= limit);
    }
  }
}

TEST_CASE("connectivity cocycle") {
  const SyntheticBundle star = scenario("star:5");
  const Nerve n = build_nerve(star.cover, kMaxNerveDim, 3);
  const Z2Cochain nu = connectivity_cocycle(n, star.cover, star.labels);
  CHECK_FALSE(z2_potential_exists(n, nu));

  ClusterLabels ones = star.labels;
  for (auto& l : ones) std::fill(l.begin(), l.end(), 1);
  for (int v : connectivity_cocycle(n, star.cover, ones).values) CHECK(v == 1);

  for (int j : {0, 5, 11}) {
    ClusterLabels flipped = star.labels;
    for (int& l : flipped[j]) l = -l;
    const Z2Cochain moved = connectivity_cocycle(n, star.cover, flipped);
    for (int e = 0; e < n.count(1); ++e) {
      const auto& v = n.at(1, e).vertices;
      const int expect = (v[0] == j || v[1] == j) ? -nu.values[e] : nu.values[e];
      CHECK(moved.values[e] == expect);
    }
  }

  // One relabelled sample mixes both patterns on an overlap.
  const auto& edge = n.at(1, 0);
  REQUIRE(edge.overlap.size() >= 2);
  ClusterLabels mixed = star.labels;
  const int j = edge.vertices[0];
  const auto& members = star.cover[j].members;
  const auto pos = std::lower_bound(members.begin(), members.end(), edge.overlap[0]) - members.begin();
  mixed[j][pos] = -mixed[j][pos];
  try {
    connectivity_cocycle(n, star.cover, mixed);
    FAIL("expected InconsistentClusters");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentClusters);
  }

  const SyntheticBundle copies = scenario("star-copies:5");
  const Nerve nc = build_nerve(copies.cover, kMaxNerveDim, 3);
  CHECK(z2_potential_exists(nc, connectivity_cocycle(nc, copies.cover, copies.labels)));
}

TEST_CASE("unwrapping a hand-built loop") {
  // Three arcs on the line-model circle; each consecutive pair shares two
  // samples, one per sheet.
  BundleDataset d;
  d.base_space.kind = BaseKind::Circle;
  auto line = [](double a) { return Eigen::Vector2d(std::cos(a), std::sin(a)); };
  const double overlap_angle[3] = {M_PI / 6, M_PI / 2, 5 * M_PI / 6};  // 01, 12, 02
  for (int i = 0; i < 6; ++i) d.samples.push_back({i, line(overlap_angle[i / 2])});
  Cover cover = oracle::cover_from_members({{0, 1, 4, 5}, {0, 1, 2, 3}, {2, 3, 4, 5}});
  for (int j = 0; j < 3; ++j) {
    cover[j].center = Eigen::VectorXd(line(j * M_PI / 3));
    cover[j].radius = M_PI / 4;
  }
  Trivialization trivs(3);
  for (int j = 0; j < 3; ++j) {
    trivs[j].samples = cover[j].members;
    trivs[j].values.assign(cover[j].members.size(), S1Point::from_turn(0));
  }
  // Samples 0/1 swap sheets between sets 0 and 1; the other overlaps keep them.
  const ClusterLabels labels{{1, -1, 1, -1}, {-1, 1, 1, -1}, {1, -1, 1, -1}};
  const Nerve n = build_nerve(cover);
  REQUIRE(n.count(1) == 3);
  REQUIRE(n.count(2) == 0);
  const Z2Cochain nu = connectivity_cocycle(n, cover, labels);
  CHECK(nu.values == std::vector<int>{-1, 1, 1});
  const UnwrapResult u = unwrap_double_cover(d, cover, trivs, labels, n, nu);
  CHECK(u.connected);
  REQUIRE(u.cover.size() == 6);
  const Nerve lifted = build_nerve(u.cover);
  CHECK(lifted.count(0) == 6);
  CHECK(lifted.count(1) == 6);
  std::vector<int> degree(6, 0);
  for (const auto& e : lifted.simplices[1])
    for (int v : e.vertices) ++degree[v];
  for (int deg : degree) CHECK(deg == 2);
  // A single six-cycle: walking from set 0 visits every lifted set.
  std::set<int> seen{0};
  std::deque<int> q{0};
  while (!q.empty()) {
    const int a = q.front();
    q.pop_front();
    for (const auto& e : lifted.simplices[1]) {
      const int other = e.vertices[0] == a ? e.vertices[1] : (e.vertices[1] == a ? e.vertices[0] : -1);
      if (other >= 0 && seen.insert(other).second) q.push_back(other);
    }
  }
  CHECK(seen.size() == 6);
  for (std::size_t x = 0; x < d.samples.size(); ++x) {
    const double dot = u.dataset.samples[x].base.dot(d.samples[x].base);
    CHECK(std::abs(std::abs(dot) - 1.0) < 1e-12);
  }
  for (int v : connectivity_cocycle(lifted, u.cover, u.labels).values) CHECK(v == 1);

  const Z2Cochain not_a_cocycle{1, {-1, 1, 1}};
  const Nerve closed = build_nerve(oracle::cover_from_members({{0}, {0}, {0}}));
  CHECK_THROWS_AS(unwrap_double_cover(d, cover, trivs, labels, closed, not_a_cocycle), Error);
}

TEST_CASE("unwrapping the synthetic projective-plane models") {
  const SyntheticBundle star = scenario("star:5");
  const Nerve n = build_nerve(star.cover, kMaxNerveDim, 3);
  const Z2Cochain nu = connectivity_cocycle(n, star.cover, star.labels);
  const UnwrapResult u = unwrap_double_cover(star.dataset, star.cover, star.trivs, star.labels, n, nu);
  CHECK(u.connected);
  CHECK(u.cover.size() == 2 * star.cover.size());
  const Nerve ln = build_nerve(u.cover, kMaxNerveDim, 3);
  const CharClassResult c = euler_cochain(ln, assemble_witness(u.trivs, ln));
  CHECK(z2_potential_exists(ln, c.sw));
  CHECK(abs_euler(u.cover, u.trivs, 3) == star.truth.euler_abs);
  CHECK(star.truth.euler_abs == 10);

  const SyntheticBundle copies = scenario("star-copies:5");
  const Nerve nc = build_nerve(copies.cover, kMaxNerveDim, 3);
  const Z2Cochain nuc = connectivity_cocycle(nc, copies.cover, copies.labels);
  const UnwrapResult v = unwrap_double_cover(copies.dataset, copies.cover, copies.trivs, copies.labels, nc, nuc);
  CHECK_FALSE(v.connected);
  REQUIRE(v.cover.size() == 2 * copies.cover.size());
  for (std::size_t j = 0; j < copies.cover.size(); ++j) {
    std::vector<int> joined = v.cover[2 * j].members;
    joined.insert(joined.end(), v.cover[2 * j + 1].members.begin(), v.cover[2 * j + 1].members.end());
    std::sort(joined.begin(), joined.end());
    CHECK(joined == copies.cover[j].members);
  }
  // No lifted set from one copy overlaps a set from the other.
  const Nerve split = build_nerve(v.cover, 1);
  std::vector<int> component(v.cover.size(), -1);
  int comps = 0;
  for (std::size_t s = 0; s < v.cover.size(); ++s) {
    if (component[s] >= 0) continue;
    component[s] = comps;
    std::deque<int> q{static_cast<int>(s)};
    while (!q.empty()) {
      const int a = q.front();
      q.pop_front();
      for (const auto& e : split.simplices[1]) {
        const int other = e.vertices[0] == a ? e.vertices[1] : (e.vertices[1] == a ? e.vertices[0] : -1);
        if (other >= 0 && component[other] < 0) component[other] = comps, q.push_back(other);
      }
    }
    ++comps;
  }
  CHECK(comps == 2);
}
