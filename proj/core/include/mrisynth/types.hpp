// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <torch/torch.h>

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace mrisynth {

// Label values of the 5-class lesion map.
enum Label : uint8_t {
  kBackground = 0,
  kNormalBrain = 1,
  kEdema = 2,
  kCavity = 3,
  kTumor = 4,
};
constexpr int64_t kNumLabels = 5;
constexpr int64_t kNumSequences = 5;
constexpr int64_t kAtlasChannels = 15;  // 3 adjacent slices x 5 sequences

// Canonical sequence order; every [C,H,W] image tensor in the toolkit uses it.
inline const std::array<const char*, kNumSequences> kSequenceNames = {
    "T1w", "Gd-T1w", "T2w", "FLAIR", "APTw"};

// uint8 [H,W] grid with values 0..4. Construction validates.
class LabelMap {
 public:
  explicit LabelMap(torch::Tensor labels);

  int64_t height() const { return t_.size(0); }
  int64_t width() const { return t_.size(1); }
  const torch::Tensor& tensor() const { return t_; }

 private:
  torch::Tensor t_;
};

// float32 [5,H,W] with a one-hot partition at every pixel.
class OneHotMask {
 public:
  explicit OneHotMask(torch::Tensor planes);

  int64_t height() const { return t_.size(1); }
  int64_t width() const { return t_.size(2); }
  const torch::Tensor& tensor() const { return t_; }

 private:
  struct Trusted {};
  OneHotMask(torch::Tensor planes, Trusted) : t_(std::move(planes)) {}
  torch::Tensor t_;
  friend OneHotMask one_hot_encode(const LabelMap&);
};

// float32 [5,H,W], values in [-1,1], sequences in canonical order.
class MriInstance {
 public:
  explicit MriInstance(torch::Tensor sequences);

  int64_t height() const { return t_.size(1); }
  int64_t width() const { return t_.size(2); }
  const torch::Tensor& tensor() const { return t_; }

 private:
  torch::Tensor t_;
};

// float32 [15,H,W], slice-major (prev, current, next), values in [-1,1].
class AtlasStack {
 public:
  explicit AtlasStack(torch::Tensor channels);

  int64_t height() const { return t_.size(1); }
  int64_t width() const { return t_.size(2); }
  const torch::Tensor& tensor() const { return t_; }

 private:
  torch::Tensor t_;
};

// float32 [5,H,W], probabilities summing to 1 per pixel.
class SegProbMap {
 public:
  explicit SegProbMap(torch::Tensor probs);

  int64_t height() const { return t_.size(1); }
  int64_t width() const { return t_.size(2); }
  const torch::Tensor& tensor() const { return t_; }

 private:
  torch::Tensor t_;
};

OneHotMask one_hot_encode(const LabelMap& m);

// Per-pixel argmax over 5 channels, ties resolved to the lowest class index.
LabelMap decode_argmax(const torch::Tensor& channels);
inline LabelMap decode_argmax(const OneHotMask& m) { return decode_argmax(m.tensor()); }
inline LabelMap decode_argmax(const SegProbMap& p) { return decode_argmax(p.tensor()); }

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> violations;

  void fail(std::string what) {
    pass = false;
    violations.push_back(std::move(what));
  }
};

// Checks an instance triple on raw tensors (so malformed data can be
// reported instead of throwing at construction).
ValidationReport validate_instance(const torch::Tensor& mask_onehot, const torch::Tensor& image,
                                   const torch::Tensor& atlas);

// Typed archive helpers.
void save_label_map(const LabelMap& m, const std::filesystem::path& path);
LabelMap load_label_map(const std::filesystem::path& path);
void save_mri(const MriInstance& m, const std::filesystem::path& path);
MriInstance load_mri(const std::filesystem::path& path);
void save_atlas(const AtlasStack& a, const std::filesystem::path& path);
AtlasStack load_atlas(const std::filesystem::path& path);

}  // namespace mrisynth
