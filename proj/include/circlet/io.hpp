#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "circlet/char_classes.hpp"
#include "circlet/cochain.hpp"
#include "circlet/dataset.hpp"
#include "circlet/filtration.hpp"
#include "circlet/nerve.hpp"
#include "circlet/projection.hpp"
#include "circlet/synthetic.hpp"
#include "circlet/unwrap.hpp"
#include "circlet/witness.hpp"

namespace circlet::io {

using nlohmann::json;

// All parse functions throw Error(SchemaViolation) on malformed input.

json dataset_to_json(const BundleDataset& d);
BundleDataset dataset_from_json(const json& j);

// Members are written as sample ids and read back as sample positions.
json cover_to_json(const Cover& c, const BundleDataset& d);
Cover cover_from_json(const json& j, const BundleDataset& d);

json trivs_to_json(const Trivialization& t, const Cover& c, const BundleDataset& d);
Trivialization trivs_from_json(const json& j, const Cover& c, const BundleDataset& d);

json labels_to_json(const ClusterLabels& l, const Cover& c, const BundleDataset& d);
ClusterLabels labels_from_json(const json& j, const Cover& c, const BundleDataset& d);

// Cochains: list of {simplex: [set ids], value}. O(2) values are {turn, sign}.
json cochain_to_json(const Z2Cochain& c, const Nerve& n, const Cover& cover);
json cochain_to_json(const IntCochain& c, const Nerve& n, const Cover& cover);
json cochain_to_json(const RealCochain& c, const Nerve& n, const Cover& cover);
json cochain_to_json(const O2Cochain& c, const Nerve& n, const Cover& cover);
Z2Cochain z2_cochain_from_json(const json& j, const Nerve& n, const Cover& cover, int degree);
IntCochain int_cochain_from_json(const json& j, const Nerve& n, const Cover& cover, int degree);
RealCochain real_cochain_from_json(const json& j, const Nerve& n, const Cover& cover, int degree);
O2Cochain o2_cochain_from_json(const json& j, const Nerve& n, const Cover& cover);

// {min_overlap, edges: [{edge, turn, sign, weight, max_err, mean_err}], quality}.
json witness_to_json(const WitnessResult& w, const Nerve& weighted, const Cover& cover, const QualityReport& q,
                     int min_overlap);
O2Cochain witness_from_json(const json& j, const Nerve& n, const Cover& cover);
int witness_min_overlap(const json& j);

json quality_to_json(const QualityReport& q);
json persistence_to_json(const PersistenceReport& p);
json ground_truth_to_json(const SyntheticBundle& b);

std::string sha256_hex(const std::string& bytes);

// Stable text form: two-space indent, trailing newline.
std::string dump(const json& j);
json read_json_file(const std::string& path);
// Returns the SHA-256 of the written bytes.
std::string write_json_file(const std::string& path, const json& j);

}  // namespace circlet::io
