#pragma once

#include <span>
#include <vector>

#include "circlet/circle_algebra.hpp"
#include "circlet/cochain.hpp"
#include "circlet/dataset.hpp"
#include "circlet/nerve.hpp"

namespace circlet {

struct ProcrustesResult {
  O2Element element;
  double minimax_error = 0.0;  // max chord |f_s - element g_s|
  // Both components reached the same max error; the rotation was returned.
  bool component_tie = false;
};

// Minimizes max_s |f_s - Omega g_s| over O(2). Throws TooFewSamples for
// fewer than two pairs and DiameterTooLarge when neither residual set fits
// in an arc shorter than half a turn.
ProcrustesResult procrustes_o2(std::span<const S1Point> f, std::span<const S1Point> g);

struct EdgeWitness {
  O2Element element;
  double max_err = 0.0;
  double mean_err = 0.0;
  int samples = 0;
  bool component_tie = false;
};

struct WitnessResult {
  O2Cochain cochain;               // degree 1, edges j < k
  std::vector<EdgeWitness> edges;  // aligned with nerve edges
};

// One Procrustes fit per edge on the shared samples, Omega_jk taking f_k to
// f_j. Errors are rethrown with the edge named in the message.
WitnessResult assemble_witness_detailed(const Trivialization& trivs, const Nerve& nerve);
O2Cochain assemble_witness(const Trivialization& trivs, const Nerve& nerve);

struct EdgeQuality {
  Simplex edge;
  double max_err = 0.0;
  double mean_err = 0.0;
};

struct QualityReport {
  double epsilon = 0.0;         // max chord misalignment over edges and samples
  double delta_pairwise = 0.0;  // max coverage gap over edge overlaps
  double delta_triple = 0.0;    // max coverage gap over triangle overlaps
  double delta = 0.0;           // max of the two
  double alpha = 0.0;           // epsilon / (1 - delta), infinite when delta >= 1
  double cocycle_epsilon = 0.0;
  bool witness_in_theory_range = true;  // epsilon < sqrt(2)
  std::vector<EdgeQuality> edges;
};

QualityReport triv_quality(const Trivialization& trivs, const O2Cochain& witness, const Nerve& nerve);

// Hausdorff distance from a finite subset of the circle to the whole circle,
// 2 sin(g/4) for the largest angular gap g (radians).
double coverage_gap(std::span<const S1Point> image);

// Sup over sets and samples of the chord distance.
double triv_distance(const Trivialization& a, const Trivialization& b);

}  // namespace circlet
