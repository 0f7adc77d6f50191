#include "circlet/unwrap.hpp"

#include <deque>
#include <map>
#include <string>

#include "circlet/char_classes.hpp"
#include "circlet/error.hpp"

namespace circlet {

Z2Cochain connectivity_cocycle(const Nerve& nerve, const Cover& cover, const ClusterLabels& labels) {
  if (labels.size() != cover.size()) throw Error(ErrorKind::ShapeMismatch, "one label list per cover set");
  auto label_of = [&](int j, int x) {
    const auto& m = cover[j].members;
    const auto it = std::lower_bound(m.begin(), m.end(), x);
    return labels[j][static_cast<std::size_t>(it - m.begin())];
  };
  Z2Cochain nu{1, std::vector<int>(static_cast<std::size_t>(nerve.count(1)), 1)};
  for (int e = 0; e < nerve.count(1); ++e) {
    const auto& s = nerve.at(1, e);
    bool same = false, flipped = false;
    for (int x : s.overlap) {
      if (label_of(s.vertices[0], x) == label_of(s.vertices[1], x))
        same = true;
      else
        flipped = true;
    }
    if (same && flipped)
      throw Error(ErrorKind::InconsistentClusters, "overlap of sets " + std::to_string(s.vertices[0]) + " and " +
                                                       std::to_string(s.vertices[1]) + " meets both cluster pairings");
    nu.values[e] = flipped ? -1 : 1;
  }
  if (!is_z2_cocycle(nerve, nu))
    throw Error(ErrorKind::InconsistentClusters, "connectivity cochain fails the cocycle condition");
  return nu;
}

namespace {

// Splits every set into its two clusters; entry 2j holds label +1.
UnwrapResult split_clusters(const BundleDataset& dataset, const Cover& cover, const Trivialization& trivs,
                            const ClusterLabels& labels, const std::vector<int>& gauge) {
  UnwrapResult out;
  out.dataset = dataset;
  for (std::size_t j = 0; j < cover.size(); ++j) {
    for (int want : {1, -1}) {
      CoverSet set;
      set.id = 2 * cover[j].id + (want > 0 ? 0 : 1);
      set.radius = cover[j].radius;
      LocalTrivialization t;
      for (std::size_t m = 0; m < cover[j].members.size(); ++m) {
        if (labels[j][m] * gauge[j] != want) continue;
        set.members.push_back(cover[j].members[m]);
        t.samples.push_back(cover[j].members[m]);
        t.values.push_back(trivs[j].values[m]);
      }
      out.cover.push_back(std::move(set));
      out.trivs.push_back(std::move(t));
      out.labels.push_back(std::vector<int>(out.cover.back().members.size(), 1));
      out.source_set.push_back(static_cast<int>(j));
      out.source_label.push_back(want * gauge[j]);
    }
  }
  return out;
}

}  // namespace

UnwrapResult unwrap_double_cover(const BundleDataset& dataset, const Cover& cover, const Trivialization& trivs,
                                 const ClusterLabels& labels, const Nerve& nerve, const Z2Cochain& nu) {
  if (!is_z2_cocycle(nerve, nu)) throw Error(ErrorKind::PropagationConflict, "nu is not a cocycle");

  if (const auto phi = z2_potential(nerve, nu)) {
    UnwrapResult out = split_clusters(dataset, cover, trivs, labels, *phi);
    for (std::size_t i = 0; i < out.cover.size(); ++i) out.cover[i].center = cover[out.source_set[i]].center;
    out.connected = false;
    return out;
  }

  const BaseKind kind = dataset.base_space.kind;
  if (kind != BaseKind::ProjectivePlane && kind != BaseKind::Circle)
    throw Error(ErrorKind::UnsupportedBase, "double-cover lift needs a circle or projective-plane base");
  for (const auto& s : cover)
    if (!s.center) throw Error(ErrorKind::UnsupportedBase, "double-cover lift needs cover centers");

  const int n = static_cast<int>(cover.size());
  // Cluster (j, label) is node 2j (+1) or 2j+1 (-1); sign = which lift of c_j.
  std::vector<int> sign(static_cast<std::size_t>(2 * n), 0);
  std::vector<std::vector<std::pair<int, int>>> sample_clusters(dataset.samples.size());
  for (int j = 0; j < n; ++j)
    for (std::size_t m = 0; m < cover[j].members.size(); ++m)
      sample_clusters[cover[j].members[m]].emplace_back(j, labels[j][m]);
  auto node = [](int j, int label) { return 2 * j + (label > 0 ? 0 : 1); };
  auto side = [&](int x, int j) { return dataset.samples[x].base.dot(*cover[j].center) >= 0.0 ? 1 : -1; };

  std::vector<std::vector<int>> node_samples(static_cast<std::size_t>(2 * n));
  for (int j = 0; j < n; ++j)
    for (std::size_t m = 0; m < cover[j].members.size(); ++m)
      node_samples[node(j, labels[j][m])].push_back(cover[j].members[m]);

  int components = 0;
  std::deque<int> queue;
  auto assign = [&](int c, int s) {
    if (sign[c] == 0) {
      sign[c] = s;
      queue.push_back(c);
    } else if (sign[c] != s) {
      throw Error(ErrorKind::PropagationConflict,
                  "cluster " + std::to_string(c / 2) + (c % 2 ? "-" : "+") + " reached with both signs");
    }
  };
  for (int start = 0; start < 2 * n; ++start) {
    if (sign[start] != 0 || node_samples[start].empty()) continue;
    ++components;
    assign(start, 1);
    assign(start ^ 1, -1);
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      const int j = c / 2;
      for (int x : node_samples[c]) {
        for (auto [k, label] : sample_clusters[x]) {
          if (k == j) continue;
          const int d = node(k, label);
          const int s = sign[c] * side(x, j) * side(x, k);
          assign(d, s);
          assign(d ^ 1, -s);
        }
      }
    }
  }

  UnwrapResult out;
  out.connected = components == 1;
  out.dataset = dataset;
  out.dataset.base_space.kind = BaseKind::Sphere;
  for (std::size_t x = 0; x < dataset.samples.size(); ++x) {
    if (sample_clusters[x].empty()) continue;
    const auto [j, label] = sample_clusters[x].front();
    out.dataset.samples[x].base = dataset.samples[x].base * (sign[node(j, label)] * side(static_cast<int>(x), j));
  }
  for (int j = 0; j < n; ++j) {
    for (int label : {1, -1}) {
      const int c = node(j, label);
      CoverSet set;
      set.id = 2 * cover[j].id + (label > 0 ? 0 : 1);
      set.center = *cover[j].center * (sign[c] == 0 ? 1 : sign[c]);
      set.radius = cover[j].radius;
      LocalTrivialization t;
      for (std::size_t m = 0; m < cover[j].members.size(); ++m) {
        if (labels[j][m] != label) continue;
        set.members.push_back(cover[j].members[m]);
        t.samples.push_back(cover[j].members[m]);
        t.values.push_back(trivs[j].values[m]);
      }
      out.labels.push_back(std::vector<int>(set.members.size(), 1));
      out.cover.push_back(std::move(set));
      out.trivs.push_back(std::move(t));
      out.source_set.push_back(j);
      out.source_label.push_back(label);
    }
  }
  return out;
}

}  // namespace circlet
