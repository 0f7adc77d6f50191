#include "circlet/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "circlet/error.hpp"
#include "circlet/parallel.hpp"

namespace circlet {
namespace {

double max_chord(std::span<const S1Point> f, std::span<const S1Point> g, const O2Element& a) {
  double worst = 0.0;
  for (std::size_t s = 0; s < f.size(); ++s) worst = std::max(worst, chord(f[s], o2_apply(a, g[s])));
  return worst;
}

// Midpoint of the shortest arc, or nothing when that arc is half a turn or more.
std::optional<double> admissible_midpoint(const std::vector<double>& angles) {
  try {
    const ArcSummary arc = shortest_enclosing_arc(angles);
    if (arc.width >= 0.5) return std::nullopt;
    return arc.midpoint;
  } catch (const NonUniqueArcError&) {
    return std::nullopt;  // a tied maximal gap is at most half a turn
  }
}

std::string edge_name(const Simplex& e) {
  return "(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")";
}

}  // namespace

ProcrustesResult procrustes_o2(std::span<const S1Point> f, std::span<const S1Point> g) {
  if (f.size() != g.size()) throw Error(ErrorKind::ShapeMismatch, "procrustes_o2 needs paired samples");
  if (f.size() < 2) throw Error(ErrorKind::TooFewSamples, "procrustes_o2 needs at least two samples");

  std::vector<double> diff(f.size()), sum(f.size());
  for (std::size_t s = 0; s < f.size(); ++s) {
    const double a = f[s].turn();
    const double b = g[s].turn();
    diff[s] = a - b;
    sum[s] = a + b;
  }
  const auto theta = admissible_midpoint(diff);
  const auto theta_ref = admissible_midpoint(sum);
  if (!theta && !theta_ref)
    throw Error(ErrorKind::DiameterTooLarge, "both residual sets span half a turn or more");

  std::optional<ProcrustesResult> rot, ref;
  if (theta) rot = ProcrustesResult{O2Element::rotation(*theta), 0.0, false};
  if (theta_ref) ref = ProcrustesResult{O2Element::reflection(*theta_ref), 0.0, false};
  if (rot) rot->minimax_error = max_chord(f, g, rot->element);
  if (ref) ref->minimax_error = max_chord(f, g, ref->element);
  if (rot && ref) {
    if (ref->minimax_error < rot->minimax_error) return *ref;
    rot->component_tie = ref->minimax_error == rot->minimax_error;
    return *rot;
  }
  return rot ? *rot : *ref;
}

WitnessResult assemble_witness_detailed(const Trivialization& trivs, const Nerve& nerve) {
  const int n_edges = nerve.count(1);
  WitnessResult out;
  out.cochain = {1, std::vector<O2Element>(static_cast<std::size_t>(n_edges))};
  out.edges.resize(static_cast<std::size_t>(n_edges));
  parallel_for(static_cast<std::size_t>(n_edges), [&](std::size_t e) {
    const auto& s = nerve.at(1, static_cast<int>(e));
    const int j = s.vertices[0];
    const int k = s.vertices[1];
    std::vector<S1Point> fj, fk;
    fj.reserve(s.overlap.size());
    fk.reserve(s.overlap.size());
    for (int x : s.overlap) {
      const S1Point* a = trivs[j].find(x);
      const S1Point* b = trivs[k].find(x);
      if (!a || !b)
        throw Error(ErrorKind::ShapeMismatch, "edge " + edge_name(s.vertices) + ": trivialization misses a sample");
      fj.push_back(*a);
      fk.push_back(*b);
    }
    ProcrustesResult fit;
    try {
      fit = procrustes_o2(fj, fk);
    } catch (const Error& err) {
      throw Error(err.kind(), "edge " + edge_name(s.vertices) + ": " + err.what());
    }
    double total = 0.0;
    for (std::size_t i = 0; i < fj.size(); ++i) total += chord(fj[i], o2_apply(fit.element, fk[i]));
    out.cochain.values[e] = fit.element;
    out.edges[e] = {fit.element, fit.minimax_error, total / static_cast<double>(fj.size()),
                    static_cast<int>(fj.size()), fit.component_tie};
  });
  return out;
}

O2Cochain assemble_witness(const Trivialization& trivs, const Nerve& nerve) {
  return assemble_witness_detailed(trivs, nerve).cochain;
}

double coverage_gap(std::span<const S1Point> image) {
  if (image.empty()) return 2.0;
  std::vector<double> t(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) t[i] = image[i].turn();
  std::sort(t.begin(), t.end());
  double gap = t.front() + 1.0 - t.back();
  for (std::size_t i = 1; i < t.size(); ++i) gap = std::max(gap, t[i] - t[i - 1]);
  return 2.0 * std::sin(gap * kTwoPi / 4.0);
}

QualityReport triv_quality(const Trivialization& trivs, const O2Cochain& witness, const Nerve& nerve) {
  QualityReport q;
  for (int e = 0; e < nerve.count(1); ++e) {
    const auto& s = nerve.at(1, e);
    const int j = s.vertices[0];
    const int k = s.vertices[1];
    EdgeQuality eq{s.vertices, 0.0, 0.0};
    for (int x : s.overlap) {
      const double err = chord(*trivs[j].find(x), o2_apply(witness.values[e], *trivs[k].find(x)));
      eq.max_err = std::max(eq.max_err, err);
      eq.mean_err += err;
    }
    if (!s.overlap.empty()) eq.mean_err /= static_cast<double>(s.overlap.size());
    q.epsilon = std::max(q.epsilon, eq.max_err);
    q.edges.push_back(std::move(eq));
  }

  auto gap_over = [&](int dim) {
    double worst = 0.0;
    for (const auto& s : nerve.simplices[dim]) {
      for (int l : s.vertices) {
        std::vector<S1Point> image;
        image.reserve(s.overlap.size());
        for (int x : s.overlap) image.push_back(*trivs[l].find(x));
        worst = std::max(worst, coverage_gap(image));
      }
    }
    return worst;
  };
  q.delta_pairwise = gap_over(1);
  q.delta_triple = gap_over(2);
  q.delta = std::max(q.delta_pairwise, q.delta_triple);
  q.alpha = q.delta < 1.0 ? q.epsilon / (1.0 - q.delta) : std::numeric_limits<double>::infinity();
  q.cocycle_epsilon = cocycle_defect(nerve, witness);
  q.witness_in_theory_range = q.epsilon < std::sqrt(2.0);
  return q;
}

double triv_distance(const Trivialization& a, const Trivialization& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "trivializations cover different sets");
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].samples != b[j].samples)
      throw Error(ErrorKind::ShapeMismatch, "trivializations differ in domain on set " + std::to_string(j));
    for (std::size_t i = 0; i < a[j].values.size(); ++i) d = std::max(d, chord(a[j].values[i], b[j].values[i]));
  }
  return d;
}

}  // namespace circlet
