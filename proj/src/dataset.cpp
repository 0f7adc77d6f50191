#include "circlet/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "circlet/error.hpp"

namespace circlet {

const char* to_string(BaseKind kind) {
  switch (kind) {
    case BaseKind::Circle: return "circle";
    case BaseKind::Sphere: return "sphere";
    case BaseKind::ProjectivePlane: return "projective_plane";
    case BaseKind::Abstract: return "abstract";
  }
  return "abstract";
}

BaseKind base_kind_from_string(const std::string& name) {
  if (name == "circle") return BaseKind::Circle;
  if (name == "sphere") return BaseKind::Sphere;
  if (name == "projective_plane") return BaseKind::ProjectivePlane;
  if (name == "abstract") return BaseKind::Abstract;
  throw Error(ErrorKind::UnsupportedBase, "unknown base kind '" + name + "'");
}

int BaseSpace::ambient_dim() const {
  switch (kind) {
    case BaseKind::Circle: return 2;
    case BaseKind::Sphere:
    case BaseKind::ProjectivePlane: return 3;
    case BaseKind::Abstract: return 1;
  }
  return 1;
}

double BaseSpace::distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  if (kind == BaseKind::Abstract) {
    const auto i = static_cast<Eigen::Index>(a[0]);
    const auto j = static_cast<Eigen::Index>(b[0]);
    if (i < 0 || j < 0 || i >= table.rows() || j >= table.cols())
      throw Error(ErrorKind::IndexOutOfRange, "abstract base point outside the distance table");
    return table(i, j);
  }
  double dot = a.dot(b);
  if (kind == BaseKind::Circle || kind == BaseKind::ProjectivePlane) dot = std::abs(dot);
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

int BundleDataset::index_of(int id) const {
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (samples[i].id == id) return static_cast<int>(i);
  throw Error(ErrorKind::SchemaViolation, "unknown sample id " + std::to_string(id));
}

void BundleDataset::validate() const {
  std::unordered_set<int> seen;
  const int dim = base_space.ambient_dim();
  for (const auto& s : samples) {
    if (!seen.insert(s.id).second)
      throw Error(ErrorKind::SchemaViolation, "duplicate sample id " + std::to_string(s.id));
    const bool free_dim = base_space.kind == BaseKind::Sphere;
    if (free_dim ? (s.base.size() < 2 || s.base.size() != samples.front().base.size()) : s.base.size() != dim)
      throw Error(ErrorKind::SchemaViolation, "base point of sample " + std::to_string(s.id) +
                                                  " has the wrong dimension");
    if (base_space.kind != BaseKind::Abstract && std::abs(s.base.norm() - 1.0) > 1e-9)
      throw Error(ErrorKind::SchemaViolation, "base point of sample " + std::to_string(s.id) +
                                                  " is not a unit vector");
  }
  if (base_space.kind == BaseKind::Abstract && base_space.table.rows() != base_space.table.cols())
    throw Error(ErrorKind::SchemaViolation, "abstract distance table is not square");
}

bool CoverSet::contains(int sample) const {
  return std::binary_search(members.begin(), members.end(), sample);
}

const S1Point* LocalTrivialization::find(int sample) const {
  auto it = std::lower_bound(samples.begin(), samples.end(), sample);
  if (it == samples.end() || *it != sample) return nullptr;
  return &values[static_cast<std::size_t>(it - samples.begin())];
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace circlet
