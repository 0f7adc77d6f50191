#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "circlet/circle_algebra.hpp"

namespace circlet {

// circle: unit vectors in R^2 with u ~ -u (a line through the origin).
// sphere: unit vectors in R^3 (any R^n, n >= 2, is accepted; the double
// cover of the circle kind lands in R^2).
// projective_plane: unit vectors in R^3 with u ~ -u.
// abstract: base points are indices into a symmetric distance table.
enum class BaseKind { Circle, Sphere, ProjectivePlane, Abstract };

const char* to_string(BaseKind kind);
BaseKind base_kind_from_string(const std::string& name);

struct BaseSpace {
  BaseKind kind = BaseKind::Sphere;
  Eigen::MatrixXd table;  // abstract only

  // Geodesic distance in radians (or the table entry for abstract bases).
  double distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
  // Coordinate count of a base point (3 for spheres, which also accept others).
  int ambient_dim() const;
};

struct Sample {
  int id = 0;
  Eigen::VectorXd base;
};

struct BundleDataset {
  std::vector<Sample> samples;
  BaseSpace base_space;

  // Position of a sample id; throws SchemaViolation if absent.
  int index_of(int id) const;
  // Unique ids, unit-norm parametric base points, table shape.
  void validate() const;
};

// Sample-indexed cover set. Members are sorted positions into
// BundleDataset::samples; every sample carries its own base point, so the
// base members of a set are the same positions.
struct CoverSet {
  int id = 0;
  std::vector<int> members;
  std::optional<Eigen::VectorXd> center;
  std::optional<double> radius;

  bool contains(int sample) const;
};

using Cover = std::vector<CoverSet>;

// Circle coordinates of the members of one cover set; samples mirrors
// the members of that set.
struct LocalTrivialization {
  std::vector<int> samples;
  std::vector<S1Point> values;

  const S1Point* find(int sample) const;
};

using Trivialization = std::vector<LocalTrivialization>;

// Members of two sorted index lists.
std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace circlet
