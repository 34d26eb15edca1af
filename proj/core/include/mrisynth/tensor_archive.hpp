// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <torch/torch.h>

#include <filesystem>
#include <string>
#include <vector>

namespace mrisynth {

// Single-tensor archive file (.arc):
//
//   bytes 0..3   magic "TARC"
//   bytes 4..7   uint32 LE header length
//   then         JSON header {version, role, dtype, layout, shape}
//   then         raw little-endian payload, C-contiguous
//
// The payload length must equal product(shape) * element_size exactly.
// Known roles pin dtype/rank/channels so a file cannot be silently
// reinterpreted as the wrong domain object.
struct TensorArchive {
  std::string role;  // "label_map" | "mask" | "mri" | "atlas" | "seg_prob" | "tensor"
  torch::Tensor tensor;
};

// dtype codes shared with the checkpoint container
std::string dtype_code(torch::ScalarType t);
torch::ScalarType dtype_from_code(const std::string& code);
int64_t dtype_size(torch::ScalarType t);

// Layout string for a role ("hw" for rank-2, "chw" for rank-3).
std::string archive_layout(const torch::Tensor& t);

void save_archive(const TensorArchive& a, const std::filesystem::path& path);
TensorArchive load_archive(const std::filesystem::path& path);

// Throws ArchiveError{RoleMismatch} when the tensor does not satisfy the
// role's dtype/rank/channel constraints.
void check_role(const std::string& role, const torch::Tensor& t);

}  // namespace mrisynth
