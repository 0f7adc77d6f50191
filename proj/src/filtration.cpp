#include "circlet/filtration.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "circlet/error.hpp"

namespace circlet {

std::vector<EdgeAlignment> edge_alignment(const Nerve& nerve, const Trivialization& trivs,
                                          const O2Cochain& witness) {
  if (static_cast<int>(witness.values.size()) != nerve.count(1))
    throw Error(ErrorKind::ShapeMismatch, "witness does not cover every edge");
  std::vector<EdgeAlignment> out(static_cast<std::size_t>(nerve.count(1)));
  for (int e = 0; e < nerve.count(1); ++e) {
    const auto& s = nerve.at(1, e);
    const int j = s.vertices[0];
    const int k = s.vertices[1];
    if (s.overlap.empty())
      throw Error(ErrorKind::EmptyOverlap,
                  "edge (" + std::to_string(j) + "," + std::to_string(k) + ") has no shared samples");
    double sum = 0.0;
    double worst = 0.0;
    for (int x : s.overlap) {
      const S1Point* fj = trivs[j].find(x);
      const S1Point* fk = trivs[k].find(x);
      if (!fj || !fk) throw Error(ErrorKind::ShapeMismatch, "trivialization misses an overlap sample");
      const double err = chord(*fj, o2_apply(witness.values[e], *fk));
      sum += err;
      worst = std::max(worst, err);
    }
    out[e] = {sum / static_cast<double>(s.overlap.size()), worst, static_cast<int>(s.overlap.size())};
  }
  return out;
}

Nerve edge_weights(Nerve nerve, const Trivialization& trivs, const O2Cochain& witness,
                   WeightMode mode) {
  const auto align = edge_alignment(nerve, trivs, witness);
  for (auto& v : nerve.simplices[0]) v.weight = 0.0;
  for (int e = 0; e < nerve.count(1); ++e)
    nerve.simplices[1][e].weight = mode == WeightMode::Mean ? align[e].mean_err : align[e].max_err;
  for (int d = 2; d <= kMaxNerveDim; ++d) {
    for (auto& s : nerve.simplices[d]) {
      double w = 0.0;
      for (const auto& f : facets(s.vertices)) w = std::max(w, nerve.at(d - 1, nerve.find(f)).weight);
      s.weight = w;
    }
  }
  return nerve;
}

Nerve filtration_order(Nerve nerve) {
  std::vector<std::pair<int, int>> keys;
  for (int d = 0; d <= kMaxNerveDim; ++d)
    for (int i = 0; i < nerve.count(d); ++i) keys.emplace_back(d, i);
  std::stable_sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    const auto& sa = nerve.at(a.first, a.second);
    const auto& sb = nerve.at(b.first, b.second);
    return std::tie(sa.weight, a.first, sa.vertices) < std::tie(sb.weight, b.first, sb.vertices);
  });
  nerve.order = keys;
  int tie_rank = 0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto& s = nerve.simplices[keys[i].first][keys[i].second];
    s.filtration_index = static_cast<int>(i) + 1;
    if (i > 0 && nerve.at(keys[i - 1].first, keys[i - 1].second).weight == s.weight)
      ++tie_rank;
    else
      tie_rank = 0;
    s.perturbed_weight = s.weight + tie_rank * 1e-15;
  }
  return nerve;
}

namespace {

bool is_subset(const Simplex& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Sets kept by each sample; every T[x] is a simplex of the kept complex.
class SampleAssignment {
 public:
  SampleAssignment(const Cover& cover, const std::vector<Simplex>& kept, std::size_t n_samples)
      : containing_(n_samples), kept_(kept.begin(), kept.end()) {
    for (std::size_t j = 0; j < cover.size(); ++j)
      for (int x : cover[j].members) containing_[x].push_back(static_cast<int>(j));
    for (const auto& s : kept) count_[s] = 0;
    T_.resize(n_samples);
    for (std::size_t x = 0; x < n_samples; ++x) {
      T_[x] = grow({}, containing_[x]);
      add_faces(T_[x], 1);
    }
  }

  const std::vector<int>& containing(int x) const { return containing_[x]; }
  const std::vector<int>& kept_sets(int x) const { return T_[x]; }

  // Tries to give an uncovered simplex a sample. A reassignment that leaves
  // other kept simplices without a sample is accepted only if those can be
  // repaired in turn, at most `depth` levels deep.
  bool repair(const Simplex& sigma, const std::function<std::vector<int>(const Simplex&)>& candidates, int depth) {
    for (int x : candidates(sigma)) {
      std::vector<int> preferred = sigma;
      for (int v : T_[x]) preferred.push_back(v);
      for (int v : containing_[x]) preferred.push_back(v);
      const std::vector<int> next = grow(sigma, preferred);
      if (!is_subset(sigma, next)) continue;
      std::vector<Simplex> broken;
      for_faces(T_[x], [&](const Simplex& f) {
        if (count_[f] == 1 && !is_subset(f, next)) broken.push_back(f);
      });
      if (!broken.empty() && depth == 0) continue;
      std::vector<std::vector<int>> saved_T;
      std::map<Simplex, int> saved_count;
      if (!broken.empty()) saved_T = T_, saved_count = count_;
      add_faces(T_[x], -1);
      T_[x] = next;
      add_faces(T_[x], 1);
      if (broken.empty()) return true;
      std::sort(broken.begin(), broken.end(), [](const Simplex& a, const Simplex& b) { return a.size() > b.size(); });
      bool fixed = true;
      for (const auto& t : broken)
        if (!covered(t) && !repair(t, candidates, depth - 1)) {
          fixed = false;
          break;
        }
      if (fixed) return true;
      // Nested repairs may have moved other samples; restore everything.
      T_ = std::move(saved_T);
      count_ = std::move(saved_count);
    }
    return false;
  }

  bool covered(const Simplex& s) const { return count_.at(s) > 0; }

 private:
  bool in_complex(const std::vector<int>& t) const {
    if (t.size() <= static_cast<std::size_t>(kMaxNerveDim + 1)) return kept_.count(t) > 0;
    bool ok = true;
    for_faces(t, [&](const Simplex& f) { ok = ok && kept_.count(f) > 0; });
    return ok;
  }

  // Adds the listed sets in order, skipping any that leave the complex.
  std::vector<int> grow(std::vector<int> start, const std::vector<int>& order) const {
    std::sort(start.begin(), start.end());
    start.erase(std::unique(start.begin(), start.end()), start.end());
    if (!start.empty() && !in_complex(start)) return {};
    for (int v : order) {
      if (std::binary_search(start.begin(), start.end(), v)) continue;
      std::vector<int> t = start;
      t.insert(std::lower_bound(t.begin(), t.end(), v), v);
      if (in_complex(t)) start = std::move(t);
    }
    return start;
  }

  // Faces of t with at most kMaxNerveDim + 1 vertices.
  template <class F>
  static void for_faces(const std::vector<int>& t, F&& f) {
    const std::size_t n = t.size();
    Simplex face;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == n) {
        if (!face.empty()) f(face);
        return;
      }
      rec(i + 1);
      if (face.size() < static_cast<std::size_t>(kMaxNerveDim + 1)) {
        face.push_back(t[i]);
        rec(i + 1);
        face.pop_back();
      }
    };
    rec(0);
  }

  void add_faces(const std::vector<int>& t, int delta) {
    for_faces(t, [&](const Simplex& f) { count_[f] += delta; });
  }

  std::vector<std::vector<int>> containing_;
  std::set<Simplex> kept_;
  std::map<Simplex, int> count_;
  std::vector<std::vector<int>> T_;
};

constexpr int kRepairDepth = 3;

CutResult cut_to(const Cover& cover, const Nerve& nerve, const std::vector<Simplex>& kept,
                 const std::vector<std::pair<Simplex, int>>& dropped) {
  std::size_t n_samples = 0;
  for (const auto& s : cover)
    for (int x : s.members) n_samples = std::max(n_samples, static_cast<std::size_t>(x) + 1);
  SampleAssignment assign(cover, kept, n_samples);

  auto original_overlap = [&](const Simplex& s) {
    std::vector<int> acc = cover[s[0]].members;
    for (std::size_t i = 1; i < s.size() && !acc.empty(); ++i) acc = sorted_intersection(acc, cover[s[i]].members);
    return acc;
  };

  CutResult result;
  // Higher simplices first: covering them covers their faces.
  for (int d = kMaxNerveDim; d >= 0; --d) {
    for (const auto& s : kept) {
      if (static_cast<int>(s.size()) != d + 1 || assign.covered(s)) continue;
      if (!assign.repair(s, original_overlap, kRepairDepth)) result.lost.push_back(s);
    }
  }

  result.cover = cover;
  for (auto& set : result.cover) set.members.clear();
  for (std::size_t x = 0; x < n_samples; ++x)
    for (int j : assign.kept_sets(static_cast<int>(x))) result.cover[j].members.push_back(static_cast<int>(x));

  auto log_entry = [&](const Simplex& s, int index) {
    CutLogEntry entry;
    entry.simplex = s;
    entry.filtration_index = index;
    for (int x : original_overlap(s))
      for (int j : s)
        if (!std::binary_search(result.cover[j].members.begin(), result.cover[j].members.end(), x))
          entry.removed.push_back({x, j});
    return entry;
  };
  const Nerve raw = build_nerve(cover, kMaxNerveDim, 1);
  for (int d = 1; d <= kMaxNerveDim; ++d)
    for (const auto& s : raw.simplices[d])
      if (!nerve.contains(s.vertices)) result.log.push_back(log_entry(s.vertices, 0));
  for (const auto& [s, index] : dropped) result.log.push_back(log_entry(s, index));
  return result;
}

}  // namespace

CutResult cut_base(const BundleDataset& dataset, const Cover& cover, const Nerve& nerve, int r) {
  (void)dataset;
  if (!nerve.has_filtration()) throw Error(ErrorKind::IndexOutOfRange, "nerve has no filtration");
  if (r < 1 || r > nerve.size()) throw Error(ErrorKind::IndexOutOfRange, "stage outside 1..|N|");
  std::vector<Simplex> kept;
  for (int idx = 1; idx <= r; ++idx) kept.push_back(nerve.by_filtration(idx).vertices);
  std::vector<std::pair<Simplex, int>> dropped;
  for (int idx = nerve.size(); idx > r; --idx) dropped.emplace_back(nerve.by_filtration(idx).vertices, idx);
  return cut_to(cover, nerve, kept, dropped);
}

CutResult nerve_consistent_cover(const Cover& cover, const Nerve& nerve) {
  std::vector<Simplex> kept;
  for (int d = 0; d <= kMaxNerveDim; ++d)
    for (const auto& s : nerve.simplices[d]) kept.push_back(s.vertices);
  return cut_to(cover, nerve, kept, {});
}

}  // namespace circlet
