#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "circlet/cochain.hpp"
#include "circlet/dataset.hpp"
#include "circlet/nerve.hpp"
#include "circlet/unwrap.hpp"

namespace circlet {

// Stream `stream`, item `index` of a seed; independent of evaluation order.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

struct GroundTruth {
  bool sw_trivial = true;
  long long euler_abs = 0;
};

struct SyntheticBundle {
  std::string model;
  BundleDataset dataset;
  Cover cover;
  Trivialization trivs;
  GroundTruth truth;
  ClusterLabels labels;             // disconnected-fiber models only
  std::vector<double> fiber_turns;  // circle models: generating fiber angle per sample
  std::vector<Eigen::VectorXd> true_base;  // before base noise
  std::vector<O2Element> set_gauge; // random isometry applied to each set's coordinates
  bool orientable = true;           // circle models
};

struct S1Options {
  bool orientable = true;
  int n_samples = 600;
  int n_arcs = 12;
  double radius = 0.0;  // 0 selects 0.75 * pi / n_arcs
  double noise = 0.0;   // fiber, turns
  double base_noise = 0.0;  // radians
  std::uint64_t seed = 0;
  int fibers_per_base = 1;
  bool random_gauge = true;
};

// Base circle in the line model: theta in [0, pi) at (cos, sin), centers j*pi/n.
SyntheticBundle gen_s1_bundle(const S1Options& opt);

struct SphereOptions {
  int p = 1;
  int n_samples = 2000;
  int n_sets = 34;
  double radius = 0.6;
  double noise = 0.0;
  double base_noise = 0.0;
  std::uint64_t seed = 0;
  bool random_gauge = true;
};

SyntheticBundle gen_lens_bundle(const SphereOptions& opt);
SyntheticBundle gen_rp2_bundle(const SphereOptions& opt);
// Fiber S^1 + S^1 over the projective plane with per-set cluster labels;
// `two_copies` gives the disconnected total space instead.
SyntheticBundle gen_disconnected_fiber(const SphereOptions& opt, bool two_copies = false);

// Centers and radii only; members are filled by assign_members. Throws
// NotACover when a probe grid point lies outside every set.
Cover make_cover(const BaseSpace& base, int n_sets, double radius);
// Members are samples at distance < radius from the center.
void assign_members(Cover& cover, const BundleDataset& dataset);

std::vector<Eigen::Vector3d> fibonacci_sphere(int n);

// Exact transition cochain of a circle model on the nerve of its cover.
O2Cochain s1_analytic_transitions(const SyntheticBundle& bundle, const Nerve& nerve);

// Model names: torus, klein, lens:P, rp2:P, star:P, star-copies:P.
struct ScenarioSpec {
  std::string model = "torus";
  int n_samples = 0;    // 0 keeps the model default
  int n_sets = 0;
  double radius = 0.0;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

SyntheticBundle generate(const ScenarioSpec& spec);

}  // namespace circlet
