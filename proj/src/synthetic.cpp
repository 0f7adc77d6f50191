#include "circlet/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "circlet/error.hpp"

namespace circlet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kBaseStream = 1;
constexpr std::uint64_t kFiberStream = 2;
constexpr std::uint64_t kGaugeStream = 3;
constexpr std::uint64_t kLabelStream = 4;
constexpr std::uint64_t kBaseNoiseStream = 5;
constexpr std::uint64_t kNoiseStream = 64;  // plus the set position

double uniform01(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

double gaussian(std::mt19937_64& rng, double sigma) {
  if (sigma <= 0.0) return 0.0;
  return std::normal_distribution<double>(0.0, sigma)(rng);
}

std::vector<O2Element> make_gauge(std::uint64_t seed, std::size_t n, bool random) {
  std::vector<O2Element> g(n);
  if (!random) return g;
  for (std::size_t j = 0; j < n; ++j) {
    auto rng = stream_rng(seed, kGaugeStream, j);
    const double t = uniform01(rng);
    g[j] = O2Element(t, uniform01(rng) < 0.5 ? 1 : -1);
  }
  return g;
}

S1Point noisy_value(const O2Element& gauge, double turn, std::uint64_t seed, std::size_t set, int id, double sigma) {
  double t = turn;
  if (sigma > 0.0) {
    auto rng = stream_rng(seed, kNoiseStream + set, static_cast<std::uint64_t>(id));
    t += gaussian(rng, sigma);
  }
  return o2_apply(gauge, S1Point::from_turn(t));
}

Eigen::VectorXd perturb_base(const Eigen::VectorXd& b, double sigma, std::uint64_t seed, int id) {
  if (sigma <= 0.0) return b;
  auto rng = stream_rng(seed, kBaseNoiseStream, static_cast<std::uint64_t>(id));
  Eigen::VectorXd v = b;
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] += gaussian(rng, sigma);
  return v.normalized();
}

Eigen::Quaterniond random_unit_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const double w = n(rng), x = n(rng), y = n(rng), z = n(rng);
    const double norm = std::sqrt(w * w + x * x + y * y + z * z);
    if (norm > 1e-12) return Eigen::Quaterniond(w / norm, x / norm, y / norm, z / norm);
  }
}

// Unit quaternion rotating unit u onto unit v along the minimizing geodesic.
Eigen::Quaterniond geodesic_rotation(const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
  const Eigen::Vector3d axis = u.cross(v);
  return Eigen::Quaterniond(1.0 + u.dot(v), axis.x(), axis.y(), axis.z()).normalized();
}

// Some q with q i q^-1 = c.
Eigen::Quaterniond center_frame(const Eigen::Vector3d& c) {
  const Eigen::Vector3d e1 = Eigen::Vector3d::UnitX();
  if (c.dot(e1) > -0.5) return geodesic_rotation(e1, c);
  return geodesic_rotation(-e1, c) * Eigen::Quaterniond(0.0, 0.0, 1.0, 0.0);
}

Eigen::Vector3d hopf_base(const Eigen::Quaterniond& q) { return q._transformVector(Eigen::Vector3d::UnitX()); }

// Fiber turn of q in the chart centred at c: arg((r_{c->b} q_c)^-1 q) * exponent.
double fiber_turn(const Eigen::Quaterniond& q, const Eigen::Vector3d& b, const Eigen::Vector3d& c, int exponent) {
  if (1.0 + c.dot(b) < 1e-9) throw Error(ErrorKind::SectionUndefined, "base point at the antipode of a set center");
  const Eigen::Quaterniond section = geodesic_rotation(c, b) * center_frame(c);
  const Eigen::Quaterniond z = section.conjugate() * q;
  return exponent * std::atan2(z.x(), z.w()) / kTwoPi;
}

Eigen::Vector3d as3(const Eigen::VectorXd& v) { return Eigen::Vector3d(v[0], v[1], v[2]); }

Eigen::Vector3d canonical_line(const Eigen::Vector3d& b) {
  if (b.z() < 0.0 || (b.z() == 0.0 && (b.y() < 0.0 || (b.y() == 0.0 && b.x() < 0.0)))) return -b;
  return b;
}

void check_sphere_options(const SphereOptions& opt, bool projective) {
  if (opt.p < 1) throw Error(ErrorKind::SchemaViolation, "exponent p must be positive");
  if (opt.n_samples < 1 || opt.n_sets < 1) throw Error(ErrorKind::SchemaViolation, "sample and set counts must be positive");
  if (!projective && opt.radius >= std::numbers::pi)
    throw Error(ErrorKind::SectionUndefined, "cover radius reaches the antipode of its center");
  if (projective && opt.radius >= std::numbers::pi / 2)
    throw Error(ErrorKind::LiftUndefined, "cover radius admits no lift of a set to the sphere");
}

template <class F>
Trivialization build_trivs(const Cover& cover, F&& value) {
  Trivialization trivs(cover.size());
  for (std::size_t j = 0; j < cover.size(); ++j) {
    trivs[j].samples = cover[j].members;
    trivs[j].values.reserve(cover[j].members.size());
    for (int x : cover[j].members) trivs[j].values.push_back(value(j, x));
  }
  return trivs;
}

struct QuaternionSamples {
  std::vector<Eigen::Quaterniond> q;
  std::vector<Eigen::Vector3d> b;
};

QuaternionSamples sample_quaternions(const SphereOptions& opt) {
  QuaternionSamples s;
  s.q.reserve(static_cast<std::size_t>(opt.n_samples));
  for (int i = 0; i < opt.n_samples; ++i) {
    auto rng = stream_rng(opt.seed, kBaseStream, static_cast<std::uint64_t>(i));
    s.q.push_back(random_unit_quaternion(rng));
    s.b.push_back(hopf_base(s.q.back()));
  }
  return s;
}

}  // namespace

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t key = splitmix64(splitmix64(seed ^ splitmix64(stream)) + index);
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  return std::mt19937_64(seq);
}

std::vector<Eigen::Vector3d> fibonacci_sphere(int n) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(static_cast<std::size_t>(std::max(n, 0)));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * i;
    pts.emplace_back(r * std::cos(a), r * std::sin(a), z);
  }
  return pts;
}

Cover make_cover(const BaseSpace& base, int n_sets, double radius) {
  if (n_sets < 1) throw Error(ErrorKind::NotACover, "a cover needs at least one set");
  if (!(radius > 0.0)) throw Error(ErrorKind::NotACover, "cover radius must be positive");
  std::vector<Eigen::VectorXd> centers;
  std::vector<Eigen::VectorXd> probes;
  switch (base.kind) {
    case BaseKind::Circle: {
      for (int j = 0; j < n_sets; ++j) {
        const double a = std::numbers::pi * j / n_sets;
        centers.push_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
      }
      const int m = 100 * n_sets;
      for (int i = 0; i < m; ++i) {
        const double a = std::numbers::pi * (i + 0.5) / m;
        probes.push_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
      }
      break;
    }
    case BaseKind::Sphere:
      for (const auto& c : fibonacci_sphere(n_sets)) centers.push_back(c);
      for (const auto& c : fibonacci_sphere(20000)) probes.push_back(c);
      break;
    case BaseKind::ProjectivePlane:
      for (const auto& c : fibonacci_sphere(2 * n_sets))
        if (c.z() > 0.0) centers.push_back(c);
      for (const auto& c : fibonacci_sphere(20000))
        if (c.z() >= 0.0) probes.push_back(c);
      break;
    case BaseKind::Abstract:
      throw Error(ErrorKind::UnsupportedBase, "no geometric cover for an abstract base");
  }
  for (const auto& p : probes) {
    bool covered = false;
    for (const auto& c : centers)
      if (base.distance(p, c) < radius) {
        covered = true;
        break;
      }
    if (!covered) throw Error(ErrorKind::NotACover, "radius leaves part of the base uncovered");
  }
  Cover cover;
  for (std::size_t j = 0; j < centers.size(); ++j) {
    CoverSet s;
    s.id = static_cast<int>(j);
    s.center = centers[j];
    s.radius = radius;
    cover.push_back(std::move(s));
  }
  return cover;
}

void assign_members(Cover& cover, const BundleDataset& dataset) {
  for (auto& set : cover) {
    if (!set.center || !set.radius) throw Error(ErrorKind::SchemaViolation, "cover set without center or radius");
    set.members.clear();
    for (std::size_t x = 0; x < dataset.samples.size(); ++x)
      if (dataset.base_space.distance(dataset.samples[x].base, *set.center) < *set.radius)
        set.members.push_back(static_cast<int>(x));
  }
}

namespace {

// Sign of the chart of a line-model circle point: -1 when the representative
// angle has to cross the seam at pi to reach the set center.
int seam_sign(const Eigen::VectorXd& base, const Eigen::VectorXd& center) { return base.dot(center) >= 0.0 ? 1 : -1; }

}  // namespace

SyntheticBundle gen_s1_bundle(const S1Options& opt) {
  if (opt.n_arcs < 3) throw Error(ErrorKind::SchemaViolation, "at least 3 arcs are needed");
  if (opt.n_samples < 1 || opt.fibers_per_base < 1)
    throw Error(ErrorKind::SchemaViolation, "sample counts must be positive");
  SyntheticBundle out;
  out.model = opt.orientable ? "torus" : "klein";
  out.orientable = opt.orientable;
  out.truth = {opt.orientable, 0};
  out.dataset.base_space.kind = BaseKind::Circle;
  const int per = opt.fibers_per_base;
  const int n_base = (opt.n_samples + per - 1) / per;
  for (int i = 0; i < n_base; ++i) {
    auto rng = stream_rng(opt.seed, kBaseStream, static_cast<std::uint64_t>(i));
    const double theta = std::numbers::pi * uniform01(rng);
    const Eigen::VectorXd b = Eigen::Vector2d(std::cos(theta), std::sin(theta));
    for (int f = 0; f < per && static_cast<int>(out.dataset.samples.size()) < opt.n_samples; ++f) {
      const int id = static_cast<int>(out.dataset.samples.size());
      auto frng = stream_rng(opt.seed, kFiberStream, static_cast<std::uint64_t>(id));
      out.fiber_turns.push_back(uniform01(frng));
      out.true_base.push_back(b);
      out.dataset.samples.push_back({id, perturb_base(b, opt.base_noise, opt.seed, id)});
    }
  }
  const double radius = opt.radius > 0.0 ? opt.radius : 0.75 * std::numbers::pi / opt.n_arcs;
  out.cover = make_cover(out.dataset.base_space, opt.n_arcs, radius);
  assign_members(out.cover, out.dataset);
  out.set_gauge = make_gauge(opt.seed, out.cover.size(), opt.random_gauge);
  out.trivs = build_trivs(out.cover, [&](std::size_t j, int x) {
    const int s = opt.orientable ? 1 : seam_sign(out.true_base[x], *out.cover[j].center);
    return noisy_value(out.set_gauge[j], s * out.fiber_turns[x], opt.seed, j, out.dataset.samples[x].id, opt.noise);
  });
  return out;
}

O2Cochain s1_analytic_transitions(const SyntheticBundle& bundle, const Nerve& nerve) {
  if (bundle.dataset.base_space.kind != BaseKind::Circle || bundle.true_base.empty())
    throw Error(ErrorKind::UnsupportedBase, "analytic transitions exist for circle models only");
  O2Cochain omega{1, std::vector<O2Element>(static_cast<std::size_t>(nerve.count(1)))};
  for (int e = 0; e < nerve.count(1); ++e) {
    const auto& s = nerve.at(1, e);
    if (s.overlap.empty()) throw Error(ErrorKind::EmptyOverlap, "edge without samples");
    const int j = s.vertices[0], k = s.vertices[1], x = s.overlap.front();
    int flip = 1;
    if (!bundle.orientable)
      flip = seam_sign(bundle.true_base[x], *bundle.cover[j].center) *
             seam_sign(bundle.true_base[x], *bundle.cover[k].center);
    omega.values[e] = bundle.set_gauge[j] * O2Element(0.0, flip) * bundle.set_gauge[k].inverse();
  }
  return omega;
}

SyntheticBundle gen_lens_bundle(const SphereOptions& opt) {
  check_sphere_options(opt, false);
  SyntheticBundle out;
  out.model = "lens:" + std::to_string(opt.p);
  out.truth = {true, opt.p};
  out.dataset.base_space.kind = BaseKind::Sphere;
  const QuaternionSamples qs = sample_quaternions(opt);
  for (int i = 0; i < opt.n_samples; ++i) {
    out.true_base.push_back(qs.b[i]);
    out.dataset.samples.push_back({i, perturb_base(qs.b[i], opt.base_noise, opt.seed, i)});
  }
  out.cover = make_cover(out.dataset.base_space, opt.n_sets, opt.radius);
  assign_members(out.cover, out.dataset);
  out.set_gauge = make_gauge(opt.seed, out.cover.size(), opt.random_gauge);
  out.trivs = build_trivs(out.cover, [&](std::size_t j, int x) {
    const double t = fiber_turn(qs.q[x], qs.b[x], as3(*out.cover[j].center), opt.p);
    return noisy_value(out.set_gauge[j], t, opt.seed, j, x, opt.noise);
  });
  return out;
}

SyntheticBundle gen_rp2_bundle(const SphereOptions& opt) {
  check_sphere_options(opt, true);
  SyntheticBundle out;
  out.model = "rp2:" + std::to_string(opt.p);
  out.truth = {false, opt.p};
  out.dataset.base_space.kind = BaseKind::ProjectivePlane;
  const QuaternionSamples qs = sample_quaternions(opt);
  for (int i = 0; i < opt.n_samples; ++i) {
    out.true_base.push_back(qs.b[i]);
    out.dataset.samples.push_back(
        {i, perturb_base(Eigen::VectorXd(canonical_line(qs.b[i])), opt.base_noise, opt.seed, i)});
  }
  out.cover = make_cover(out.dataset.base_space, opt.n_sets, opt.radius);
  assign_members(out.cover, out.dataset);
  out.set_gauge = make_gauge(opt.seed, out.cover.size(), opt.random_gauge);
  const Eigen::Quaterniond jq(0.0, 0.0, 1.0, 0.0);
  out.trivs = build_trivs(out.cover, [&](std::size_t j, int x) {
    const Eigen::Vector3d c = as3(*out.cover[j].center);
    // The lift on the hemisphere of c; q j lies over -b.
    const bool same = qs.b[x].dot(c) >= 0.0;
    const double t = same ? fiber_turn(qs.q[x], qs.b[x], c, 2 * opt.p) : fiber_turn(qs.q[x] * jq, -qs.b[x], c, 2 * opt.p);
    return noisy_value(out.set_gauge[j], t, opt.seed, j, x, opt.noise);
  });
  return out;
}

SyntheticBundle gen_disconnected_fiber(const SphereOptions& opt, bool two_copies) {
  check_sphere_options(opt, true);
  SyntheticBundle out;
  out.model = (two_copies ? "star-copies:" : "star:") + std::to_string(opt.p);
  out.dataset.base_space.kind = BaseKind::ProjectivePlane;
  const QuaternionSamples qs = sample_quaternions(opt);
  std::vector<int> copy(static_cast<std::size_t>(opt.n_samples), 1);
  for (int i = 0; i < opt.n_samples; ++i) {
    out.true_base.push_back(qs.b[i]);
    out.dataset.samples.push_back(
        {i, perturb_base(Eigen::VectorXd(canonical_line(qs.b[i])), opt.base_noise, opt.seed, i)});
    if (two_copies) {
      auto rng = stream_rng(opt.seed, kLabelStream, static_cast<std::uint64_t>(opt.n_sets + i));
      copy[i] = uniform01(rng) < 0.5 ? 1 : -1;
    }
  }
  out.cover = make_cover(out.dataset.base_space, opt.n_sets, opt.radius);
  assign_members(out.cover, out.dataset);
  out.set_gauge = make_gauge(opt.seed, out.cover.size(), opt.random_gauge);
  const Eigen::Quaterniond jq(0.0, 0.0, 1.0, 0.0);
  if (two_copies) {
    out.truth = {false, opt.p};
    out.trivs = build_trivs(out.cover, [&](std::size_t j, int x) {
      const Eigen::Vector3d c = as3(*out.cover[j].center);
      const bool same = qs.b[x].dot(c) >= 0.0;
      const double t =
          same ? fiber_turn(qs.q[x], qs.b[x], c, 2 * opt.p) : fiber_turn(qs.q[x] * jq, -qs.b[x], c, 2 * opt.p);
      return noisy_value(out.set_gauge[j], t, opt.seed, j, x, opt.noise);
    });
    for (const auto& set : out.cover) {
      out.labels.emplace_back();
      for (int x : set.members) out.labels.back().push_back(copy[x]);
    }
    return out;
  }
  // After lifting to the sphere: lens bundle with exponent 2p.
  out.truth = {true, 2LL * opt.p};
  out.trivs = build_trivs(out.cover, [&](std::size_t j, int x) {
    const Eigen::Vector3d c = as3(*out.cover[j].center);
    const double side = qs.b[x].dot(c) >= 0.0 ? 1.0 : -1.0;
    const double t = fiber_turn(qs.q[x], qs.b[x], side * c, 2 * opt.p);
    return noisy_value(out.set_gauge[j], t, opt.seed, j, x, opt.noise);
  });
  for (std::size_t j = 0; j < out.cover.size(); ++j) {
    auto rng = stream_rng(opt.seed, kLabelStream, j);
    const int flip = uniform01(rng) < 0.5 ? 1 : -1;
    const Eigen::Vector3d c = as3(*out.cover[j].center);
    out.labels.emplace_back();
    for (int x : out.cover[j].members) out.labels.back().push_back(flip * (qs.b[x].dot(c) >= 0.0 ? 1 : -1));
  }
  return out;
}

SyntheticBundle generate(const ScenarioSpec& spec) {
  const auto colon = spec.model.find(':');
  const std::string name = spec.model.substr(0, colon);
  int p = 1;
  if (colon != std::string::npos) {
    try {
      p = std::stoi(spec.model.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::SchemaViolation, "bad exponent in model '" + spec.model + "'");
    }
  }
  if (name == "torus" || name == "klein") {
    S1Options o;
    o.orientable = name == "torus";
    if (spec.n_samples > 0) o.n_samples = spec.n_samples;
    if (spec.n_sets > 0) o.n_arcs = spec.n_sets;
    o.radius = spec.radius;
    o.noise = spec.noise;
    o.seed = spec.seed;
    return gen_s1_bundle(o);
  }
  SphereOptions o;
  o.p = p;
  if (spec.n_samples > 0) o.n_samples = spec.n_samples;
  if (name != "lens") o.n_sets = 17;  // upper half of the 34-point sphere lattice
  if (spec.n_sets > 0) o.n_sets = spec.n_sets;
  if (spec.radius > 0.0) o.radius = spec.radius;
  o.noise = spec.noise;
  o.seed = spec.seed;
  if (name == "lens") return gen_lens_bundle(o);
  if (name == "rp2") return gen_rp2_bundle(o);
  if (name == "star") return gen_disconnected_fiber(o, false);
  if (name == "star-copies") return gen_disconnected_fiber(o, true);
  throw Error(ErrorKind::SchemaViolation, "unknown model '" + spec.model + "'");
}

}  // namespace circlet
