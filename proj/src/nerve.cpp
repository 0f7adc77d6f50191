#include "circlet/nerve.hpp"

#include <algorithm>
#include <set>

#include "circlet/error.hpp"

namespace circlet {

int Nerve::count(int dim) const {
  if (dim < 0 || dim > kMaxNerveDim) return 0;
  return static_cast<int>(simplices[dim].size());
}

int Nerve::size() const {
  int n = 0;
  for (const auto& level : simplices) n += static_cast<int>(level.size());
  return n;
}

int Nerve::max_dim() const {
  for (int d = kMaxNerveDim; d >= 0; --d)
    if (!simplices[d].empty()) return d;
  return -1;
}

int Nerve::find(const Simplex& s) const {
  if (s.empty() || s.size() > kMaxNerveDim + 1) return -1;
  const auto& table = lookup_[s.size() - 1];
  auto it = table.find(s);
  return it == table.end() ? -1 : it->second;
}

const NerveSimplex& Nerve::by_filtration(int index) const {
  if (index < 1 || index > static_cast<int>(order.size()))
    throw Error(ErrorKind::IndexOutOfRange, "filtration index out of range");
  const auto [d, p] = order[index - 1];
  return simplices[d][p];
}

void Nerve::reindex() {
  for (int d = 0; d <= kMaxNerveDim; ++d) {
    std::sort(simplices[d].begin(), simplices[d].end(),
              [](const NerveSimplex& a, const NerveSimplex& b) { return a.vertices < b.vertices; });
    lookup_[d].clear();
    for (int i = 0; i < count(d); ++i) lookup_[d].emplace(simplices[d][i].vertices, i);
  }
  if (!order.empty()) {
    order.clear();
    std::vector<std::pair<int, std::pair<int, int>>> keyed;
    for (int d = 0; d <= kMaxNerveDim; ++d)
      for (int i = 0; i < count(d); ++i) keyed.push_back({simplices[d][i].filtration_index, {d, i}});
    std::sort(keyed.begin(), keyed.end());
    for (const auto& k : keyed) order.push_back(k.second);
  }
}

std::vector<Simplex> facets(const Simplex& s) {
  std::vector<Simplex> out;
  if (s.size() < 2) return out;
  for (std::size_t drop = 0; drop < s.size(); ++drop) {
    Simplex f;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (i != drop) f.push_back(s[i]);
    out.push_back(std::move(f));
  }
  return out;
}

Nerve build_nerve(const Cover& cover, int max_dim, int min_overlap) {
  max_dim = std::clamp(max_dim, 0, kMaxNerveDim);
  Nerve nerve;
  const int n = static_cast<int>(cover.size());
  for (int j = 0; j < n; ++j) nerve.simplices[0].push_back({{j}, cover[j].members});

  // Extend each p-simplex by a larger vertex; lexicographic order of the
  // parents and increasing appended vertex keeps each level sorted.
  for (int d = 1; d <= max_dim; ++d) {
    std::set<Simplex> previous;
    for (const auto& s : nerve.simplices[d - 1]) previous.insert(s.vertices);
    for (const auto& parent : nerve.simplices[d - 1]) {
      for (int v = parent.vertices.back() + 1; v < n; ++v) {
        Simplex probe = parent.vertices;
        probe.push_back(v);
        // Every facet containing v must already exist.
        bool ok = true;
        for (std::size_t drop = 0; drop + 1 < probe.size() && ok && d >= 2; ++drop) {
          Simplex f = probe;
          f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
          ok = previous.count(f) > 0;
        }
        if (!ok) continue;
        auto common = sorted_intersection(parent.overlap, cover[v].members);
        if (common.empty() || static_cast<int>(common.size()) < min_overlap) continue;
        nerve.simplices[d].push_back({std::move(probe), std::move(common)});
      }
    }
  }
  nerve.reindex();
  return nerve;
}

Nerve stage_subcomplex(const Nerve& nerve, int r) {
  if (!nerve.has_filtration()) throw Error(ErrorKind::IndexOutOfRange, "nerve has no filtration");
  if (r < 1 || r > nerve.size()) throw Error(ErrorKind::IndexOutOfRange, "stage outside 1..|N|");
  Nerve out;
  for (int i = 0; i < r; ++i) {
    const auto [d, p] = nerve.order[i];
    out.simplices[d].push_back(nerve.simplices[d][p]);
  }
  out.order.assign(1, {0, 0});  // marks the filtration as present for reindex
  out.reindex();
  return out;
}

}  // namespace circlet
