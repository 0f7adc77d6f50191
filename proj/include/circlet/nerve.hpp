#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "circlet/dataset.hpp"

namespace circlet {

// Sorted positions into a Cover.
using Simplex = std::vector<int>;

struct NerveSimplex {
  Simplex vertices;
  std::vector<int> overlap;  // samples in every member set
  double weight = 0.0;
  double perturbed_weight = 0.0;  // weight + k*1e-15 inside exact-tie groups
  int filtration_index = 0;       // 1-based; 0 until filtration_order runs
};

inline constexpr int kMaxNerveDim = 3;

class Nerve {
 public:
  // Simplices of each dimension in lexicographic order. Cochains store
  // their values in this order.
  std::array<std::vector<NerveSimplex>, kMaxNerveDim + 1> simplices;
  // (dimension, position) pairs in filtration order once assigned.
  std::vector<std::pair<int, int>> order;

  int count(int dim) const;
  int size() const;
  int max_dim() const;
  // Position of a simplex within its dimension, or -1.
  int find(const Simplex& s) const;
  bool contains(const Simplex& s) const { return find(s) >= 0; }
  const NerveSimplex& at(int dim, int pos) const { return simplices[dim][pos]; }
  bool has_filtration() const { return !order.empty(); }
  const NerveSimplex& by_filtration(int index) const;  // 1-based

  // Rebuilds the lookup tables after simplices are edited.
  void reindex();

 private:
  std::array<std::map<Simplex, int>, kMaxNerveDim + 1> lookup_;
};

// Every tuple of up to max_dim + 1 sets with at least min_overlap common
// members (one by default). Faces of a kept simplex are always kept.
Nerve build_nerve(const Cover& cover, int max_dim = kMaxNerveDim, int min_overlap = 1);

// The first r simplices of the filtration as a stand-alone nerve. Weights
// and filtration indices are carried over.
Nerve stage_subcomplex(const Nerve& nerve, int r);

// Faces of codimension one, in the order obtained by dropping vertex
// 0, 1, ..., p.
std::vector<Simplex> facets(const Simplex& s);

}  // namespace circlet
