#include "circlet/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include <openssl/evp.h>

#include "circlet/error.hpp"

namespace circlet::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::SchemaViolation, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    schema(std::string("field '") + key + "': " + e.what());
  }
}

const json& array_field(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) schema(std::string("field '") + key + "' is not an array");
  return a;
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vector_from(const json& a) {
  if (!a.is_array()) schema("expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) schema("expected an array of numbers");
    v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
  }
  return v;
}

std::unordered_map<int, int> sample_positions(const BundleDataset& d) {
  std::unordered_map<int, int> pos;
  for (std::size_t i = 0; i < d.samples.size(); ++i) pos[d.samples[i].id] = static_cast<int>(i);
  return pos;
}

std::unordered_map<int, int> set_positions(const Cover& c) {
  std::unordered_map<int, int> pos;
  for (std::size_t j = 0; j < c.size(); ++j)
    if (!pos.emplace(c[j].id, static_cast<int>(j)).second) schema("duplicate cover set id " + std::to_string(c[j].id));
  return pos;
}

int lookup(const std::unordered_map<int, int>& m, int key, const char* what) {
  const auto it = m.find(key);
  if (it == m.end()) schema(std::string("unknown ") + what + " id " + std::to_string(key));
  return it->second;
}

json simplex_ids(const Simplex& s, const Cover& cover) {
  json a = json::array();
  for (int v : s) a.push_back(cover[v].id);
  return a;
}

// Cover positions of a simplex given by set ids, in the given order.
std::vector<int> simplex_positions(const json& j, const std::unordered_map<int, int>& sets) {
  if (!j.is_array()) schema("simplex is not an array");
  std::vector<int> s;
  for (const auto& v : j) s.push_back(lookup(sets, v.get<int>(), "cover set"));
  return s;
}

template <class T, class Read>
Cochain<T> read_cochain(const json& j, const Nerve& n, const Cover& cover, int degree, Read&& read) {
  if (!j.is_array()) schema("cochain is not a list");
  const auto sets = set_positions(cover);
  Cochain<T> c{degree, std::vector<T>(static_cast<std::size_t>(n.count(degree)))};
  std::vector<char> seen(c.values.size(), 0);
  for (const auto& entry : j) {
    std::vector<int> s = simplex_positions(field(entry, "simplex"), sets);
    if (static_cast<int>(s.size()) != degree + 1) schema("simplex of the wrong dimension");
    const bool sorted = std::is_sorted(s.begin(), s.end());
    std::vector<int> key = s;
    std::sort(key.begin(), key.end());
    const int pos = n.find(key);
    if (pos < 0) schema("simplex outside the nerve");
    c.values[pos] = read(field(entry, "value"), sorted);
    seen[pos] = 1;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) schema("cochain misses a nerve simplex");
  return c;
}

template <class T, class Write>
json write_cochain(const Cochain<T>& c, const Nerve& n, const Cover& cover, Write&& write) {
  json a = json::array();
  for (int i = 0; i < n.count(c.degree); ++i)
    a.push_back({{"simplex", simplex_ids(n.at(c.degree, i).vertices, cover)}, {"value", write(c.values[i])}});
  return a;
}

json o2_json(const O2Element& g) { return {{"turn", g.turn}, {"sign", g.sign}}; }

O2Element o2_from(const json& v) {
  const int sign = get<int>(v, "sign");
  if (sign != 1 && sign != -1) schema("O(2) sign must be +1 or -1");
  return O2Element(get<double>(v, "turn"), sign);
}

json point_json(const PersistencePoint& p) { return {{"index", p.index}, {"weight", p.weight}}; }

json class_persistence_json(const ClassPersistence& c) {
  return {{"cobirth", point_json(c.cobirth)},         {"codeath", point_json(c.codeath)},
          {"limit", c.limit},                          {"cross_checked", c.cross_checked},
          {"methods_agree", c.methods_agree},          {"matrix_codeath", c.matrix_codeath}};
}

}  // namespace

json dataset_to_json(const BundleDataset& d) {
  json base = {{"kind", to_string(d.base_space.kind)}};
  if (d.base_space.kind == BaseKind::Abstract) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < d.base_space.table.rows(); ++i) rows.push_back(vector_json(d.base_space.table.row(i).transpose()));
    base["table"] = rows;
  }
  json samples = json::array();
  for (const auto& s : d.samples) samples.push_back({{"id", s.id}, {"base", vector_json(s.base)}});
  return {{"base_space", base}, {"samples", samples}};
}

BundleDataset dataset_from_json(const json& j) {
  BundleDataset d;
  const json& base = field(j, "base_space");
  try {
    d.base_space.kind = base_kind_from_string(get<std::string>(base, "kind"));
  } catch (const Error& e) {
    schema(e.what());
  }
  if (d.base_space.kind == BaseKind::Abstract) {
    const json& rows = array_field(base, "table");
    d.base_space.table.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Eigen::VectorXd r = vector_from(rows[i]);
      if (r.size() != static_cast<Eigen::Index>(rows.size())) schema("abstract distance table is not square");
      d.base_space.table.row(static_cast<Eigen::Index>(i)) = r.transpose();
    }
  }
  for (const auto& s : array_field(j, "samples")) d.samples.push_back({get<int>(s, "id"), vector_from(field(s, "base"))});
  d.validate();
  return d;
}

json cover_to_json(const Cover& c, const BundleDataset& d) {
  json sets = json::array();
  for (const auto& s : c) {
    json members = json::array();
    for (int x : s.members) members.push_back(d.samples[x].id);
    json o = {{"id", s.id}, {"members", members}};
    if (s.center) o["center"] = vector_json(*s.center);
    if (s.radius) o["radius"] = *s.radius;
    sets.push_back(o);
  }
  return {{"sets", sets}};
}

Cover cover_from_json(const json& j, const BundleDataset& d) {
  const auto pos = sample_positions(d);
  Cover c;
  for (const auto& s : array_field(j, "sets")) {
    CoverSet set;
    set.id = get<int>(s, "id");
    for (const auto& m : array_field(s, "members")) set.members.push_back(lookup(pos, m.get<int>(), "sample"));
    std::sort(set.members.begin(), set.members.end());
    if (std::adjacent_find(set.members.begin(), set.members.end()) != set.members.end())
      schema("cover set " + std::to_string(set.id) + " lists a sample twice");
    if (s.contains("center")) set.center = vector_from(s.at("center"));
    if (s.contains("radius")) set.radius = get<double>(s, "radius");
    c.push_back(std::move(set));
  }
  if (c.empty()) schema("cover has no sets");
  set_positions(c);
  return c;
}

json trivs_to_json(const Trivialization& t, const Cover& c, const BundleDataset& d) {
  json sets = json::array();
  for (std::size_t j = 0; j < t.size(); ++j) {
    json values = json::array();
    for (std::size_t m = 0; m < t[j].samples.size(); ++m)
      values.push_back({{"sample", d.samples[t[j].samples[m]].id}, {"angle_turns", t[j].values[m].turn()}});
    sets.push_back({{"id", c[j].id}, {"values", values}});
  }
  return {{"sets", sets}};
}

Trivialization trivs_from_json(const json& j, const Cover& c, const BundleDataset& d) {
  const auto samples = sample_positions(d);
  const auto sets = set_positions(c);
  Trivialization t(c.size());
  std::vector<char> seen(c.size(), 0);
  for (const auto& s : array_field(j, "sets")) {
    const int pos = lookup(sets, get<int>(s, "id"), "cover set");
    if (seen[pos]) schema("trivialization for set " + std::to_string(c[pos].id) + " given twice");
    seen[pos] = 1;
    std::vector<std::pair<int, double>> vals;
    for (const auto& v : array_field(s, "values"))
      vals.emplace_back(lookup(samples, get<int>(v, "sample"), "sample"), get<double>(v, "angle_turns"));
    std::sort(vals.begin(), vals.end());
    for (const auto& [x, a] : vals) {
      t[pos].samples.push_back(x);
      t[pos].values.push_back(S1Point::from_turn(a));
    }
    if (t[pos].samples != c[pos].members)
      schema("trivialization of set " + std::to_string(c[pos].id) + " does not match its members");
  }
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!seen[k]) schema("no trivialization for set " + std::to_string(c[k].id));
  return t;
}

json labels_to_json(const ClusterLabels& l, const Cover& c, const BundleDataset& d) {
  json sets = json::array();
  for (std::size_t j = 0; j < c.size(); ++j) {
    json labels = json::array();
    for (std::size_t m = 0; m < c[j].members.size(); ++m)
      labels.push_back({{"sample", d.samples[c[j].members[m]].id}, {"label", l[j][m]}});
    sets.push_back({{"id", c[j].id}, {"labels", labels}});
  }
  return {{"sets", sets}};
}

ClusterLabels labels_from_json(const json& j, const Cover& c, const BundleDataset& d) {
  const auto samples = sample_positions(d);
  const auto sets = set_positions(c);
  ClusterLabels out(c.size());
  std::vector<char> seen(c.size(), 0);
  for (const auto& s : array_field(j, "sets")) {
    const int pos = lookup(sets, get<int>(s, "id"), "cover set");
    seen[pos] = 1;
    std::vector<std::pair<int, int>> vals;
    for (const auto& v : array_field(s, "labels")) {
      const int label = get<int>(v, "label");
      if (label != 1 && label != -1) schema("cluster labels must be +1 or -1");
      vals.emplace_back(lookup(samples, get<int>(v, "sample"), "sample"), label);
    }
    std::sort(vals.begin(), vals.end());
    std::vector<int> xs;
    for (const auto& [x, label] : vals) {
      xs.push_back(x);
      out[pos].push_back(label);
    }
    if (xs != c[pos].members) schema("labels of set " + std::to_string(c[pos].id) + " do not match its members");
  }
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!seen[k]) schema("no labels for set " + std::to_string(c[k].id));
  return out;
}

json cochain_to_json(const Z2Cochain& c, const Nerve& n, const Cover& cover) {
  return write_cochain(c, n, cover, [](int v) { return json(v); });
}
json cochain_to_json(const IntCochain& c, const Nerve& n, const Cover& cover) {
  return write_cochain(c, n, cover, [](long long v) { return json(v); });
}
json cochain_to_json(const RealCochain& c, const Nerve& n, const Cover& cover) {
  return write_cochain(c, n, cover, [](double v) { return json(v); });
}
json cochain_to_json(const O2Cochain& c, const Nerve& n, const Cover& cover) {
  return write_cochain(c, n, cover, [](const O2Element& v) { return o2_json(v); });
}

Z2Cochain z2_cochain_from_json(const json& j, const Nerve& n, const Cover& cover, int degree) {
  return read_cochain<int>(j, n, cover, degree, [](const json& v, bool sorted) {
    if (!sorted) schema("Z2 cochain simplices must be listed in cover order");
    const int x = v.get<int>();
    if (x != 1 && x != -1) schema("Z2 cochain values must be +1 or -1");
    return x;
  });
}

IntCochain int_cochain_from_json(const json& j, const Nerve& n, const Cover& cover, int degree) {
  return read_cochain<long long>(j, n, cover, degree, [](const json& v, bool sorted) {
    if (!sorted) schema("integer cochain simplices must be listed in cover order");
    if (!v.is_number_integer()) schema("integer cochain value is not an integer");
    return v.get<long long>();
  });
}

RealCochain real_cochain_from_json(const json& j, const Nerve& n, const Cover& cover, int degree) {
  return read_cochain<double>(j, n, cover, degree, [](const json& v, bool sorted) {
    if (!sorted) schema("real cochain simplices must be listed in cover order");
    return v.get<double>();
  });
}

O2Cochain o2_cochain_from_json(const json& j, const Nerve& n, const Cover& cover) {
  return read_cochain<O2Element>(j, n, cover, 1, [](const json& v, bool sorted) {
    const O2Element g = o2_from(v);
    return sorted ? g : g.inverse();
  });
}

json quality_to_json(const QualityReport& q) {
  json edges = json::array();
  for (const auto& e : q.edges) edges.push_back({{"edge", e.edge}, {"max_err", e.max_err}, {"mean_err", e.mean_err}});
  return {{"epsilon", q.epsilon},
          {"delta_pairwise", q.delta_pairwise},
          {"delta_triple", q.delta_triple},
          {"delta", q.delta},
          {"alpha", std::isfinite(q.alpha) ? json(q.alpha) : json(nullptr)},
          {"cocycle_epsilon", q.cocycle_epsilon},
          {"witness_in_theory_range", q.witness_in_theory_range}};
}

json witness_to_json(const WitnessResult& w, const Nerve& weighted, const Cover& cover, const QualityReport& q,
                     int min_overlap) {
  json edges = json::array();
  for (int e = 0; e < weighted.count(1); ++e) {
    const auto& s = weighted.at(1, e);
    const auto& ew = w.edges[e];
    edges.push_back({{"edge", simplex_ids(s.vertices, cover)},
                     {"turn", ew.element.turn},
                     {"sign", ew.element.sign},
                     {"weight", s.weight},
                     {"max_err", ew.max_err},
                     {"mean_err", ew.mean_err},
                     {"samples", ew.samples},
                     {"component_tie", ew.component_tie}});
  }
  return {{"min_overlap", min_overlap}, {"edges", edges}, {"quality", quality_to_json(q)}};
}

int witness_min_overlap(const json& j) { return j.contains("min_overlap") ? get<int>(j, "min_overlap") : 1; }

O2Cochain witness_from_json(const json& j, const Nerve& n, const Cover& cover) {
  json entries = json::array();
  for (const auto& e : array_field(j, "edges")) entries.push_back({{"simplex", field(e, "edge")}, {"value", e}});
  return o2_cochain_from_json(entries, n, cover);
}

json persistence_to_json(const PersistenceReport& p) {
  json stages = json::array();
  for (const auto& s : p.stages) stages.push_back({{"stage", s.stage}, {"simplices", s.simplices}});
  return {{"b_sw", point_json(p.sw.cobirth)},
          {"d_sw", point_json(p.sw.codeath)},
          {"b_euler", point_json(p.euler.cobirth)},
          {"d_euler", point_json(p.euler.codeath)},
          {"w_max", p.w_max},
          {"nerve_size", p.nerve_size},
          {"sw", class_persistence_json(p.sw)},
          {"euler", class_persistence_json(p.euler)},
          {"stages", stages}};
}

json ground_truth_to_json(const SyntheticBundle& b) {
  return {{"model", b.model},
          {"sw_trivial", b.truth.sw_trivial},
          {"euler_abs", b.truth.euler_abs},
          {"samples", b.dataset.samples.size()},
          {"sets", b.cover.size()}};
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 computation failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) schema("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    schema(path + ": " + e.what());
  }
}

std::string write_json_file(const std::string& path, const json& j) {
  const std::string text = dump(j);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::SchemaViolation, "cannot write " + path);
  out << text;
  return sha256_hex(text);
}

}  // namespace circlet::io
