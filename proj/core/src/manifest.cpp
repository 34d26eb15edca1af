// SPDX-License-Identifier: Apache-2.0
#include "mrisynth/manifest.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <set>

#include "mrisynth/errors.hpp"

namespace mrisynth {

using nlohmann::json;

std::string to_string(Split s) { return s == Split::Train ? "train" : "test"; }

Split split_from_string(const std::string& s) {
  if (s == "train") return Split::Train;
  if (s == "test") return Split::Test;
  throw ValidationError("unknown split tag '" + s + "'");
}

std::vector<const InstanceRecord*> DatasetManifest::split_records(Split s) const {
  std::vector<const InstanceRecord*> out;
  for (const auto& r : records) {
    if (r.split == s) out.push_back(&r);
  }
  return out;
}

std::vector<int64_t> DatasetManifest::patients(Split s) const {
  std::set<int64_t> ids;
  for (const auto& r : records) {
    if (r.split == s) ids.insert(r.patient_id);
  }
  return {ids.begin(), ids.end()};
}

void save_manifest(DatasetManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");

  json header = {{"kind", "dataset_manifest"},
                 {"version", 1},
                 {"seed", m.seed},
                 {"image_size", m.image_size},
                 {"slices_per_patient", m.slices_per_patient}};
  out << header.dump() << "\n";
  for (const auto& r : m.records) {
    json line = {{"patient", r.patient_id}, {"slice", r.slice_index},
                 {"split", to_string(r.split)}, {"mask", r.mask_path},
                 {"image", r.image_path},      {"atlas", r.atlas_path}};
    out << line.dump() << "\n";
  }
  if (!out) throw IoError("short write to '" + path.string() + "'");
  m.root = path.parent_path();
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");

  DatasetManifest m;
  m.root = path.parent_path();

  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw IoError("bad manifest line in '" + path.string() + "': " + e.what());
    }
    if (!saw_header) {
      if (j.value("kind", "") != "dataset_manifest")
        throw IoError("'" + path.string() + "' is not a dataset manifest");
      m.seed = j.value("seed", uint64_t{0});
      m.image_size = j.value("image_size", int64_t{0});
      m.slices_per_patient = j.value("slices_per_patient", int64_t{0});
      saw_header = true;
      continue;
    }
    InstanceRecord r;
    r.patient_id = j.at("patient").get<int64_t>();
    r.slice_index = j.at("slice").get<int64_t>();
    r.split = split_from_string(j.at("split").get<std::string>());
    r.mask_path = j.at("mask").get<std::string>();
    r.image_path = j.at("image").get<std::string>();
    r.atlas_path = j.value("atlas", "");
    m.records.push_back(std::move(r));
  }
  if (!saw_header) throw IoError("'" + path.string() + "' is empty");
  return m;
}

ValidationReport validate_manifest(const DatasetManifest& m, bool require_atlas) {
  ValidationReport rep;

  std::set<int64_t> train, test;
  for (const auto& r : m.records) {
    (r.split == Split::Train ? train : test).insert(r.patient_id);
    for (const auto* p : {&r.mask_path, &r.image_path}) {
      if (!std::filesystem::exists(m.resolve(*p)))
        rep.fail("missing file: " + m.resolve(*p).string());
    }
    if (require_atlas) {
      if (r.atlas_path.empty() || !std::filesystem::exists(m.resolve(r.atlas_path)))
        rep.fail("missing atlas: " + (r.atlas_path.empty() ? "<unset>" : m.resolve(r.atlas_path).string()));
    }
  }

  std::vector<int64_t> overlap;
  std::set_intersection(train.begin(), train.end(), test.begin(), test.end(),
                        std::back_inserter(overlap));
  for (int64_t id : overlap) {
    rep.fail("patient " + std::to_string(id) + " appears in both splits");
  }
  return rep;
}

}  // namespace mrisynth
