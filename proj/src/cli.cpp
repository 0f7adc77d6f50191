#include "circlet/cli.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <gmp.h>

#include "circlet/char_classes.hpp"
#include "circlet/error.hpp"
#include "circlet/filtration.hpp"
#include "circlet/io.hpp"
#include "circlet/projection.hpp"
#include "circlet/synthetic.hpp"
#include "circlet/unwrap.hpp"
#include "circlet/witness.hpp"

namespace circlet {

namespace {

using io::json;

constexpr const char* kVersion = "1.0.0";
constexpr int kDefaultMinOverlap = 3;

struct Options {
  std::string dataset, cover, trivs, witness, labels, classes;
  std::string out = ".";
  std::string model = "torus";
  int samples = 0;
  int sets = 0;
  double radius = 0.0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  int stage = 0;  // 0 selects the full nerve
  int dim = 4;
  int min_overlap = 0;  // 0 selects the witness file's value or the default
  std::string weight_mode = "mean";
};

json versions() {
  return {{"circlet", kVersion},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"gmp", gmp_version}};
}

// Records input digests, stamps outputs with them, and writes manifest.json.
class Run {
 public:
  Run(std::string command, const Options& o, json config)
      : command_(std::move(command)), dir_(o.out), config_(std::move(config)), seed_(o.seed),
        start_(std::chrono::steady_clock::now()) {
    std::filesystem::create_directories(dir_);
    config_hash_ = io::sha256_hex(config_.dump());
  }

  json load(const std::string& path, const char* what) {
    if (path.empty()) throw Error(ErrorKind::SchemaViolation, std::string("--") + what + " is required");
    const json j = io::read_json_file(path);
    inputs_[path] = io::sha256_hex(io::dump(j));
    return j;
  }

  void write(const std::string& name, json body) {
    body["provenance"] = {{"command", command_}, {"config_hash", config_hash_}, {"inputs_digest", inputs_digest()}};
    outputs_[name] = io::write_json_file((dir_ / name).string(), body);
  }

  void finish() {
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    json inputs = json::object();
    for (const auto& [p, d] : inputs_) inputs[p] = d;
    json outputs = json::object();
    for (const auto& [p, d] : outputs_) outputs[p] = d;
    const json manifest = {{"command", command_}, {"config", config_},       {"config_hash", config_hash_},
                           {"inputs", inputs},    {"inputs_digest", inputs_digest()}, {"outputs", outputs},
                           {"seed", seed_},       {"versions", versions()},  {"timings", {{"seconds", seconds}}}};
    io::write_json_file((dir_ / "manifest.json").string(), manifest);
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::string inputs_digest() const {
    std::string all;
    for (const auto& [p, d] : inputs_) all += d + "\n";
    return io::sha256_hex(all);
  }

  std::string command_;
  std::filesystem::path dir_;
  json config_;
  std::string config_hash_;
  std::uint64_t seed_;
  std::chrono::steady_clock::time_point start_;
  std::map<std::string, std::string> inputs_;
  std::map<std::string, std::string> outputs_;
};

json config_of(const std::string& command, const Options& o) {
  return {{"command", command}, {"model", o.model},     {"samples", o.samples},         {"sets", o.sets},
          {"radius", o.radius}, {"noise", o.noise},     {"seed", o.seed},               {"stage", o.stage},
          {"dim", o.dim},       {"min_overlap", o.min_overlap}, {"weight_mode", o.weight_mode}};
}

struct Bundle {
  BundleDataset dataset;
  Cover cover;
  Trivialization trivs;
};

Bundle load_bundle(Run& run, const Options& o, bool with_trivs) {
  Bundle b;
  b.dataset = io::dataset_from_json(run.load(o.dataset, "dataset"));
  b.cover = io::cover_from_json(run.load(o.cover, "cover"), b.dataset);
  if (with_trivs) b.trivs = io::trivs_from_json(run.load(o.trivs, "trivs"), b.cover, b.dataset);
  return b;
}

WeightMode weight_mode(const Options& o) {
  if (o.weight_mode == "mean") return WeightMode::Mean;
  if (o.weight_mode == "max") return WeightMode::Max;
  throw Error(ErrorKind::SchemaViolation, "weight mode must be mean or max");
}

struct WitnessData {
  int min_overlap = kDefaultMinOverlap;
  Nerve nerve;  // weighted and filtration-ordered when trivializations are known
  O2Cochain omega;
};

// Witness from --witness when given, otherwise assembled from the trivializations.
WitnessData witness_data(Run& run, const Options& o, const Bundle& b, bool need_filtration) {
  WitnessData w;
  if (!o.witness.empty()) {
    const json j = run.load(o.witness, "witness");
    w.min_overlap = o.min_overlap > 0 ? o.min_overlap : io::witness_min_overlap(j);
    w.nerve = build_nerve(b.cover, kMaxNerveDim, w.min_overlap);
    w.omega = io::witness_from_json(j, w.nerve, b.cover);
  } else {
    if (b.trivs.empty()) throw Error(ErrorKind::SchemaViolation, "--witness or --trivs is required");
    w.min_overlap = o.min_overlap > 0 ? o.min_overlap : kDefaultMinOverlap;
    w.nerve = build_nerve(b.cover, kMaxNerveDim, w.min_overlap);
    w.omega = assemble_witness(b.trivs, w.nerve);
  }
  if (need_filtration) w.nerve = filtration_order(edge_weights(w.nerve, b.trivs, w.omega, weight_mode(o)));
  return w;
}

void cmd_synth(const Options& o, std::ostream& out) {
  Run run("synth", o, config_of("synth", o));
  ScenarioSpec spec;
  spec.model = o.model;
  spec.n_samples = o.samples;
  spec.n_sets = o.sets;
  spec.radius = o.radius;
  spec.noise = o.noise;
  spec.seed = o.seed;
  const SyntheticBundle b = generate(spec);
  run.write("dataset.json", io::dataset_to_json(b.dataset));
  run.write("cover.json", io::cover_to_json(b.cover, b.dataset));
  run.write("trivs.json", io::trivs_to_json(b.trivs, b.cover, b.dataset));
  if (!b.labels.empty()) run.write("labels.json", io::labels_to_json(b.labels, b.cover, b.dataset));
  const json truth = io::ground_truth_to_json(b);
  run.write("truth.json", truth);
  run.finish();
  out << truth.dump() << "\n";
}

void cmd_witness(const Options& o, std::ostream& out) {
  Run run("witness", o, config_of("witness", o));
  const Bundle b = load_bundle(run, o, true);
  const int m = o.min_overlap > 0 ? o.min_overlap : kDefaultMinOverlap;
  const Nerve nerve = build_nerve(b.cover, kMaxNerveDim, m);
  const WitnessResult w = assemble_witness_detailed(b.trivs, nerve);
  const Nerve weighted = edge_weights(nerve, b.trivs, w.cochain, weight_mode(o));
  const QualityReport q = triv_quality(b.trivs, w.cochain, nerve);
  run.write("witness.json", io::witness_to_json(w, weighted, b.cover, q, m));
  run.finish();
  out << json{{"edges", nerve.count(1)}, {"epsilon", q.epsilon}, {"delta", q.delta}}.dump() << "\n";
}

json classes_json(const Nerve& nerve, const Cover& cover, const CharClassResult& c, int min_overlap) {
  return {{"min_overlap", min_overlap},
          {"sw", io::cochain_to_json(c.sw, nerve, cover)},
          {"euler", io::cochain_to_json(c.euler, nerve, cover)},
          {"sw_trivial", z2_potential(nerve, c.sw).has_value()},
          {"bracket_margin", c.bracket_margin},
          {"witness_defect", c.witness_defect},
          {"defect_warning", c.defect_warning}};
}

void cmd_classes(const Options& o, std::ostream& out) {
  Run run("classes", o, config_of("classes", o));
  const Bundle b = load_bundle(run, o, !o.trivs.empty());
  const WitnessData w = witness_data(run, o, b, false);
  const CharClassResult c = euler_cochain(w.nerve, w.omega);
  json j = classes_json(w.nerve, b.cover, c, w.min_overlap);
  if (!b.trivs.empty()) j["quality"] = io::quality_to_json(triv_quality(b.trivs, w.omega, w.nerve));
  run.write("classes.json", j);
  run.finish();
  out << json{{"sw_trivial", j["sw_trivial"]}, {"bracket_margin", c.bracket_margin}}.dump() << "\n";
}

void cmd_euler(const Options& o, std::ostream& out) {
  Run run("euler", o, config_of("euler", o));
  const Bundle b = load_bundle(run, o, false);
  const json cj = run.load(o.classes, "classes");
  const int m = o.min_overlap > 0 ? o.min_overlap : io::witness_min_overlap(cj);
  const Nerve nerve = build_nerve(b.cover, kMaxNerveDim, m);
  const Z2Cochain sw = io::z2_cochain_from_json(cj.at("sw"), nerve, b.cover, 1);
  const IntCochain e = io::int_cochain_from_json(cj.at("euler"), nerve, b.cover, 2);
  const FundamentalClass mu = fundamental_class_twisted(nerve, sw);
  const EulerNumber n = euler_number(e, mu.mu);
  const json j = {{"euler_number", {{"value", n.value}, {"sign_convention", n.sign_convention}}},
                  {"fundamental_class", io::cochain_to_json(mu.mu, nerve, b.cover)},
                  {"kernel_rank", mu.kernel_rank},
                  {"boundary_rank", mu.boundary_rank},
                  {"sw_trivial", z2_potential(nerve, sw).has_value()}};
  run.write("euler.json", j);
  run.finish();
  out << json{{"euler_number", n.value}}.dump() << "\n";
}

void cmd_persist(const Options& o, std::ostream& out) {
  Run run("persist", o, config_of("persist", o));
  const Bundle b = load_bundle(run, o, true);
  const WitnessData w = witness_data(run, o, b, true);
  const CharClassResult c = euler_cochain(w.nerve, w.omega);
  const PersistenceReport p = persistence(w.nerve, c.sw, c.euler);
  json j = io::persistence_to_json(p);
  j["min_overlap"] = w.min_overlap;
  run.write("persistence.json", j);
  run.finish();
  out << json{{"b_sw", p.sw.cobirth.index}, {"d_sw", p.sw.codeath.index}, {"b_euler", p.euler.cobirth.index},
              {"d_euler", p.euler.codeath.index}}
             .dump()
      << "\n";
}

json curve_json(const std::vector<ReductionErrorPoint>& curve) {
  json a = json::array();
  for (const auto& p : curve) a.push_back({{"dim", p.dim}, {"max_error", p.max_error}, {"mean_error", p.mean_error}});
  return a;
}

void cmd_coordinatize(const Options& o, std::ostream& out) {
  Run run("coordinatize", o, config_of("coordinatize", o));
  const Bundle b = load_bundle(run, o, true);
  const WitnessData w = witness_data(run, o, b, true);
  const int r = o.stage > 0 ? o.stage : w.nerve.size();
  const BundleMapResult m = bundle_map(b.dataset, b.cover, w.nerve, b.trivs, w.omega, r, o.dim);
  json samples = json::array();
  for (std::size_t x = 0; x < b.dataset.samples.size(); ++x) {
    json v = json::array();
    for (Eigen::Index i = 0; i < m.coords[x].size(); ++i) v.push_back(m.coords[x][i]);
    samples.push_back({{"id", b.dataset.samples[x].id}, {"vector", v}});
  }
  run.write("coords.json", {{"reduction", m.reduction},
                            {"stage", m.stage},
                            {"dim", m.dim},
                            {"overlap_residual", m.overlap_residual},
                            {"plane_residual", m.plane_residual},
                            {"max_reduction_error", m.max_reduction_error},
                            {"cut_log_entries", m.cut_log.size()},
                            {"cut_exact", m.cut_exact},
                            {"samples", samples}});
  run.write("reduction_curve.json", {{"reduction", m.reduction}, {"curve", curve_json(m.reduction_curve)}});
  run.finish();
  out << json{{"overlap_residual", m.overlap_residual}, {"stage", r}, {"dim", o.dim}}.dump() << "\n";
}

void cmd_trivialize(const Options& o, std::ostream& out) {
  Run run("trivialize", o, config_of("trivialize", o));
  const Bundle b = load_bundle(run, o, true);
  const WitnessData w = witness_data(run, o, b, false);
  try {
    const GlobalTrivialization g = global_trivialize(b.dataset, b.cover, w.nerve, b.trivs, w.omega);
    json samples = json::array();
    for (std::size_t x = 0; x < b.dataset.samples.size(); ++x) {
      json base = json::array();
      for (Eigen::Index i = 0; i < b.dataset.samples[x].base.size(); ++i) base.push_back(b.dataset.samples[x].base[i]);
      samples.push_back({{"id", b.dataset.samples[x].id}, {"base", base}, {"angle_turns", g.angle_turns[x]}});
    }
    run.write("coords.json", {{"overlap_residual", g.overlap_residual}, {"samples", samples}});
    run.finish();
    out << json{{"overlap_residual", g.overlap_residual}}.dump() << "\n";
  } catch (const NotTrivializableError&) {
    run.finish();
    throw;
  }
}

void cmd_unwrap(const Options& o, std::ostream& out) {
  Run run("unwrap", o, config_of("unwrap", o));
  const Bundle b = load_bundle(run, o, true);
  const ClusterLabels labels = io::labels_from_json(run.load(o.labels, "labels"), b.cover, b.dataset);
  const int m = o.min_overlap > 0 ? o.min_overlap : kDefaultMinOverlap;
  const Nerve nerve = build_nerve(b.cover, kMaxNerveDim, m);
  const Z2Cochain nu = connectivity_cocycle(nerve, b.cover, labels);
  const bool nu_trivial = z2_potential(nerve, nu).has_value();
  const UnwrapResult u = unwrap_double_cover(b.dataset, b.cover, b.trivs, labels, nerve, nu);
  run.write("dataset.json", io::dataset_to_json(u.dataset));
  run.write("cover.json", io::cover_to_json(u.cover, u.dataset));
  run.write("trivs.json", io::trivs_to_json(u.trivs, u.cover, u.dataset));
  run.write("labels.json", io::labels_to_json(u.labels, u.cover, u.dataset));
  json sources = json::array();
  for (std::size_t i = 0; i < u.cover.size(); ++i)
    sources.push_back({{"id", u.cover[i].id}, {"source_set", b.cover[u.source_set[i]].id}, {"label", u.source_label[i]}});
  run.write("unwrap.json", {{"nu", io::cochain_to_json(nu, nerve, b.cover)},
                            {"nu_trivial", nu_trivial},
                            {"connected", u.connected},
                            {"sources", sources}});
  run.finish();
  out << json{{"nu_trivial", nu_trivial}, {"connected", u.connected}, {"sets", u.cover.size()}}.dump() << "\n";
}

void cmd_report(const Options& o, std::ostream& out) {
  Run run("report", o, config_of("report", o));
  const Bundle b = load_bundle(run, o, true);
  const WitnessData w = witness_data(run, o, b, true);
  json report = {{"min_overlap", w.min_overlap},
                 {"nerve", {w.nerve.count(0), w.nerve.count(1), w.nerve.count(2), w.nerve.count(3)}}};
  report["quality"] = io::quality_to_json(triv_quality(b.trivs, w.omega, w.nerve));
  const CharClassResult c = euler_cochain(w.nerve, w.omega);
  const bool sw_trivial = z2_potential(w.nerve, c.sw).has_value();
  json classes = {{"sw", sw_trivial ? "0" : "nonzero"}, {"bracket_margin", c.bracket_margin}};
  try {
    const FundamentalClass mu = fundamental_class_twisted(w.nerve, c.sw);
    classes["euler_number"] = euler_number(c.euler, mu.mu).value;
  } catch (const Error& e) {
    classes["euler_number"] = nullptr;
    classes["euler_error"] = e.what();
  }
  report["classes"] = classes;
  report["persistence"] = io::persistence_to_json(persistence(w.nerve, c.sw, c.euler));
  try {
    const int d = std::min(o.dim > 0 ? o.dim : 4, 2 * static_cast<int>(b.cover.size()));
    const BundleMapResult m = bundle_map(b.dataset, b.cover, w.nerve, b.trivs, w.omega, w.nerve.size(), d);
    report["reduction_curve"] = curve_json(m.reduction_curve);
    report["reduction"] = m.reduction;
  } catch (const Error& e) {
    report["reduction_curve"] = nullptr;
    report["reduction_error"] = e.what();
  }
  run.write("report.json", report);
  run.finish();
  out << json{{"sw", classes["sw"]}, {"euler_number", classes["euler_number"]}}.dump() << "\n";
}

void add_bundle_inputs(CLI::App* sub, Options& o, bool trivs, bool witness) {
  sub->add_option("--dataset", o.dataset, "dataset JSON")->required();
  sub->add_option("--cover", o.cover, "cover JSON")->required();
  if (trivs) sub->add_option("--trivs", o.trivs, "local trivializations JSON");
  if (witness) sub->add_option("--witness", o.witness, "witness JSON (assembled from --trivs when absent)");
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--min-overlap", o.min_overlap, "samples needed for a nerve simplex");
  sub->add_option("--weight-mode", o.weight_mode, "edge weight: mean or max");
}

void obstruction(std::ostream& out, const std::string& reason, const std::string& what,
                 const std::filesystem::path& dir) {
  const json j = {{"status", "obstruction"}, {"reason", reason}, {"message", what}};
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  io::write_json_file((dir / "obstruction.json").string(), j);
  out << j.dump() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Characteristic classes and coordinates for discrete circle bundles", "circlet");
  app.require_subcommand(1);
  Options o;

  auto* synth = app.add_subcommand("synth", "generate a synthetic bundle with known invariants");
  synth->add_option("--model", o.model, "torus, klein, lens:P, rp2:P, star:P or star-copies:P");
  synth->add_option("--samples", o.samples, "sample count");
  synth->add_option("--sets", o.sets, "cover set count");
  synth->add_option("--radius", o.radius, "cover radius in radians");
  synth->add_option("--noise", o.noise, "fiber noise standard deviation in turns");
  add_common(synth, o);

  auto* witness = app.add_subcommand("witness", "assemble the O(2) witness cochain");
  add_bundle_inputs(witness, o, true, false);
  add_common(witness, o);

  auto* classes = app.add_subcommand("classes", "orientation class and twisted Euler cochain");
  add_bundle_inputs(classes, o, true, true);
  add_common(classes, o);

  auto* euler = app.add_subcommand("euler", "twisted Euler number from a classes file");
  add_bundle_inputs(euler, o, false, false);
  euler->add_option("--classes", o.classes, "classes JSON")->required();
  add_common(euler, o);

  auto* persist = app.add_subcommand("persist", "cobirth and codeath in the weights filtration");
  add_bundle_inputs(persist, o, true, true);
  add_common(persist, o);

  auto* coordinatize = app.add_subcommand("coordinatize", "bundle map into a Stiefel-fiber model");
  add_bundle_inputs(coordinatize, o, true, true);
  coordinatize->add_option("--stage", o.stage, "filtration stage (default: full nerve)");
  coordinatize->add_option("--dim", o.dim, "target dimension");
  add_common(coordinatize, o);

  auto* trivialize = app.add_subcommand("trivialize", "global fiber coordinate of a trivial bundle");
  add_bundle_inputs(trivialize, o, true, true);
  add_common(trivialize, o);

  auto* unwrap = app.add_subcommand("unwrap", "lift a disconnected-fiber bundle to the double cover");
  add_bundle_inputs(unwrap, o, true, false);
  unwrap->add_option("--labels", o.labels, "cluster labels JSON")->required();
  add_common(unwrap, o);

  auto* report = app.add_subcommand("report", "plot-ready summary tables and curves");
  add_bundle_inputs(report, o, true, true);
  report->add_option("--dim", o.dim, "target dimension for the reduction curve");
  add_common(report, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (synth->parsed()) cmd_synth(o, out);
    if (witness->parsed()) cmd_witness(o, out);
    if (classes->parsed()) cmd_classes(o, out);
    if (euler->parsed()) cmd_euler(o, out);
    if (persist->parsed()) cmd_persist(o, out);
    if (coordinatize->parsed()) cmd_coordinatize(o, out);
    if (trivialize->parsed()) cmd_trivialize(o, out);
    if (unwrap->parsed()) cmd_unwrap(o, out);
    if (report->parsed()) cmd_report(o, out);
  } catch (const NotTrivializableError& e) {
    obstruction(out, e.obstruction(), e.what(), o.out);
    return 2;
  } catch (const Error& e) {
    const ExitClass cls = exit_class(e.kind());
    if (cls == ExitClass::Obstruction) obstruction(out, to_string(e.kind()), e.what(), o.out);
    err << "circlet: " << e.what() << "\n";
    return static_cast<int>(cls);
  } catch (const std::exception& e) {
    err << "circlet: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace circlet
