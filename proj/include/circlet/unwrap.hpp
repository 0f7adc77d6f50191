#pragma once

#include <vector>

#include "circlet/cochain.hpp"
#include "circlet/dataset.hpp"
#include "circlet/nerve.hpp"

namespace circlet {

// Per cover set, a label +1 or -1 for each member (aligned with members).
using ClusterLabels = std::vector<std::vector<int>>;

// nu_jk = -1 iff some sample is labelled +1 in U_j and -1 in U_k. Throws
// InconsistentClusters if an overlap mixes both patterns or nu fails the
// cocycle condition on a triangle.
Z2Cochain connectivity_cocycle(const Nerve& nerve, const Cover& cover, const ClusterLabels& labels);

struct UnwrapResult {
  BundleDataset dataset;
  Cover cover;
  Trivialization trivs;
  ClusterLabels labels;    // all +1 on the lifted sets
  bool connected = false;  // nu was not a coboundary
  // Lifted set index of (set j, label) is 2j for +1 and 2j+1 for -1.
  std::vector<int> source_set;
  std::vector<int> source_label;
};

// nu a coboundary: two disjoint copies over the same base, labels gauged to
// agree on overlaps. Otherwise the base (circle or projective plane, with
// cover centers) is lifted to its double cover of unit vectors by a
// breadth-first sign propagation over the clusters; the lifted cover has one
// set per cluster centred at +-c_j. Throws PropagationConflict on a
// contradictory sign and UnsupportedBase for other bases.
UnwrapResult unwrap_double_cover(const BundleDataset& dataset, const Cover& cover, const Trivialization& trivs,
                                 const ClusterLabels& labels, const Nerve& nerve, const Z2Cochain& nu);

}  // namespace circlet
