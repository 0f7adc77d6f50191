#pragma once

#include <vector>

#include "circlet/cochain.hpp"
#include "circlet/dataset.hpp"
#include "circlet/nerve.hpp"

namespace circlet {

enum class WeightMode { Mean, Max };

// Chord misalignment |f_j(x) - Omega_jk f_k(x)| over the shared samples of
// one edge.
struct EdgeAlignment {
  double mean_err = 0.0;
  double max_err = 0.0;
  int samples = 0;
};

// One entry per nerve edge; throws EmptyOverlap for an edge without samples.
std::vector<EdgeAlignment> edge_alignment(const Nerve& nerve, const Trivialization& trivs,
                                          const O2Cochain& witness);

// Edge weights from the alignment error, max over facets above dimension 1,
// zero on vertices.
Nerve edge_weights(Nerve nerve, const Trivialization& trivs, const O2Cochain& witness,
                   WeightMode mode = WeightMode::Mean);

// Total order by (weight, dimension, lexicographic vertices), indices 1..|N|.
Nerve filtration_order(Nerve nerve);

struct CutRemoval {
  int sample = 0;  // position in the dataset
  int set = 0;     // cover position that lost it
};

struct CutLogEntry {
  Simplex simplex;
  int filtration_index = 0;  // 0 for an overlap below the nerve's threshold
  std::vector<CutRemoval> removed;  // removals that separated this overlap
};

struct CutResult {
  Cover cover;
  std::vector<CutLogEntry> log;
  std::vector<Simplex> lost;  // kept simplices left without a shared sample
  bool exact() const { return lost.empty(); }
};

// Shrinks the cover until the nerve of its sample overlaps (any shared
// sample counts, up to dimension 3) is the kept subcomplex: simplices
// 1..r of the filtration. Each sample keeps the sets of a kept simplex
// grown in increasing set order, so the lexicographically last vertex of an
// unwanted overlap is the one that loses it; a sample is reassigned when some
// kept simplex would otherwise have no shared sample left. The log lists
// overlaps missing from `nerve` (too few shared samples) first, then
// simplices r+1..|N| in reverse filtration order.
CutResult cut_base(const BundleDataset& dataset, const Cover& cover, const Nerve& nerve, int r);

// The same with every simplex of `nerve` kept; no filtration is needed.
CutResult nerve_consistent_cover(const Cover& cover, const Nerve& nerve);

}  // namespace circlet
