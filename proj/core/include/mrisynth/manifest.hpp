// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mrisynth/types.hpp"

namespace mrisynth {

enum class Split { Train, Test };

std::string to_string(Split s);
Split split_from_string(const std::string& s);

struct InstanceRecord {
  int64_t patient_id = 0;
  int64_t slice_index = 0;
  Split split = Split::Train;
  std::string mask_path;   // relative to the manifest directory
  std::string image_path;
  std::string atlas_path;
};

// JSON-lines manifest: one header line, then one record per line. Paths are
// stored relative to the manifest file so a dataset directory is relocatable.
struct DatasetManifest {
  uint64_t seed = 0;
  int64_t image_size = 0;
  int64_t slices_per_patient = 0;
  std::vector<InstanceRecord> records;
  std::filesystem::path root;  // set on load / save

  std::vector<const InstanceRecord*> split_records(Split s) const;
  std::vector<int64_t> patients(Split s) const;

  std::filesystem::path resolve(const std::string& rel) const { return root / rel; }
};

void save_manifest(DatasetManifest& m, const std::filesystem::path& path);
DatasetManifest load_manifest(const std::filesystem::path& path);

// Referenced files exist and the patient-level split is disjoint.
ValidationReport validate_manifest(const DatasetManifest& m, bool require_atlas = true);

}  // namespace mrisynth
