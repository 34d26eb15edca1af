// SPDX-License-Identifier: Apache-2.0
#include "mrisynth/types.hpp"

#include <sstream>

#include "mrisynth/errors.hpp"
#include "mrisynth/tensor_archive.hpp"

namespace mrisynth {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

std::string shape_str(const torch::Tensor& t) {
  std::ostringstream os;
  os << t.sizes();
  return os.str();
}

}  // namespace

LabelMap::LabelMap(torch::Tensor labels) : t_(std::move(labels)) {
  require(t_.defined() && t_.dim() == 2, "label map must be a 2-D grid");
  require(t_.scalar_type() == torch::kUInt8, "label map must be uint8");
  require(t_.size(0) > 0 && t_.size(1) > 0, "label map dimensions must be positive");
  t_ = t_.contiguous();
  if ((t_ >= kNumLabels).any().item<bool>()) {
    // name the first offending pixel
    auto bad = (t_ >= kNumLabels).nonzero();
    const int64_t y = bad[0][0].item<int64_t>();
    const int64_t x = bad[0][1].item<int64_t>();
    const int v = t_[y][x].item<uint8_t>();
    std::ostringstream os;
    os << "label " << v << " at (" << y << "," << x << ") is out of range 0.." << (kNumLabels - 1);
    throw ValidationError(os.str());
  }
}

OneHotMask::OneHotMask(torch::Tensor planes) : t_(std::move(planes)) {
  require(t_.defined() && t_.dim() == 3 && t_.size(0) == kNumLabels,
          "one-hot mask must be [5,H,W]");
  require(t_.scalar_type() == torch::kFloat32, "one-hot mask must be float32");
  t_ = t_.contiguous();
  require(((t_ == 0) | (t_ == 1)).all().item<bool>(), "one-hot mask values must be 0 or 1");
  require((t_.sum(0) == 1).all().item<bool>(), "one-hot mask channels must sum to 1 per pixel");
}

MriInstance::MriInstance(torch::Tensor sequences) : t_(std::move(sequences)) {
  require(t_.defined() && t_.dim() == 3, "image must be [5,H,W]");
  require(t_.size(0) == kNumSequences,
          "image must have exactly " + std::to_string(kNumSequences) + " sequence planes, got " +
              shape_str(t_));
  require(t_.scalar_type() == torch::kFloat32, "image must be float32");
  t_ = t_.contiguous();
  require(t_.isfinite().all().item<bool>(), "image values must be finite");
  require((t_ >= -1).all().item<bool>() && (t_ <= 1).all().item<bool>(),
          "image values must lie in [-1,1]");
}

AtlasStack::AtlasStack(torch::Tensor channels) : t_(std::move(channels)) {
  require(t_.defined() && t_.dim() == 3, "atlas must be [15,H,W]");
  require(t_.size(0) == kAtlasChannels,
          "atlas must have exactly " + std::to_string(kAtlasChannels) + " channels, got " +
              shape_str(t_));
  require(t_.scalar_type() == torch::kFloat32, "atlas must be float32");
  t_ = t_.contiguous();
  require(t_.isfinite().all().item<bool>(), "atlas values must be finite");
  require((t_ >= -1).all().item<bool>() && (t_ <= 1).all().item<bool>(),
          "atlas values must lie in [-1,1]");
}

SegProbMap::SegProbMap(torch::Tensor probs) : t_(std::move(probs)) {
  require(t_.defined() && t_.dim() == 3 && t_.size(0) == kNumLabels, "probability map must be [5,H,W]");
  require(t_.scalar_type() == torch::kFloat32, "probability map must be float32");
  t_ = t_.contiguous();
  require(t_.isfinite().all().item<bool>(), "probabilities must be finite");
  require((t_ >= 0).all().item<bool>() && (t_ <= 1).all().item<bool>(),
          "probabilities must lie in [0,1]");
  require(((t_.sum(0) - 1).abs() <= 1e-5).all().item<bool>(),
          "probabilities must sum to 1 per pixel");
}

OneHotMask one_hot_encode(const LabelMap& m) {
  auto idx = m.tensor().to(torch::kLong).unsqueeze(0);
  auto planes = torch::zeros({kNumLabels, m.height(), m.width()}, torch::kFloat32);
  planes.scatter_(0, idx, 1.0f);
  return OneHotMask(std::move(planes), OneHotMask::Trusted{});
}

LabelMap decode_argmax(const torch::Tensor& channels) {
  if (!channels.defined() || channels.dim() != 3 || channels.size(0) != kNumLabels) {
    throw ValidationError("argmax decode expects [5,H,W], got " +
                          (channels.defined() ? shape_str(channels) : std::string("undefined")));
  }
  if (!channels.isfinite().all().item<bool>()) {
    throw ValidationError("argmax decode expects finite values");
  }
  auto best_val = channels[0];
  auto best_idx = torch::zeros({channels.size(1), channels.size(2)}, torch::kUInt8);
  for (int64_t c = 1; c < kNumLabels; ++c) {
    auto better = channels[c] > best_val;  // strict: ties keep the lower index
    best_val = torch::where(better, channels[c], best_val);
    best_idx = torch::where(better, torch::full_like(best_idx, static_cast<uint8_t>(c)), best_idx);
  }
  return LabelMap(best_idx);
}

ValidationReport validate_instance(const torch::Tensor& mask_onehot, const torch::Tensor& image,
                                   const torch::Tensor& atlas) {
  ValidationReport r;

  auto spatial = [](const torch::Tensor& t) {
    return std::pair<int64_t, int64_t>{t.size(t.dim() - 2), t.size(t.dim() - 1)};
  };

  if (!mask_onehot.defined() || mask_onehot.dim() != 3) {
    r.fail("mask: not a [C,H,W] tensor");
  } else {
    if (mask_onehot.size(0) != kNumLabels)
      r.fail("mask channels != " + std::to_string(kNumLabels));
    auto f = mask_onehot.to(torch::kFloat32);
    if (!((f == 0) | (f == 1)).all().item<bool>())
      r.fail("mask: values outside {0,1}");
    else if (!(f.sum(0) == 1).all().item<bool>())
      r.fail("mask: one-hot partition violated");
  }

  if (!image.defined() || image.dim() != 3) {
    r.fail("image: not a [C,H,W] tensor");
  } else {
    if (image.size(0) != kNumSequences) r.fail("image channels != " + std::to_string(kNumSequences));
    if (!image.isfinite().all().item<bool>())
      r.fail("image: non-finite values");
    else if (!((image >= -1).all().item<bool>() && (image <= 1).all().item<bool>()))
      r.fail("image: range ([-1,1] violated)");
    if (mask_onehot.defined() && mask_onehot.dim() == 3 && spatial(image) != spatial(mask_onehot))
      r.fail("image/mask spatial shape mismatch");
  }

  if (!atlas.defined() || atlas.dim() != 3) {
    r.fail("atlas: not a [C,H,W] tensor");
  } else {
    if (atlas.size(0) != kAtlasChannels)
      r.fail("atlas channels != " + std::to_string(kAtlasChannels));
    if (!atlas.isfinite().all().item<bool>())
      r.fail("atlas: non-finite values");
    else if (!((atlas >= -1).all().item<bool>() && (atlas <= 1).all().item<bool>()))
      r.fail("atlas: range ([-1,1] violated)");
    if (image.defined() && image.dim() == 3 && spatial(atlas) != spatial(image))
      r.fail("atlas/image spatial shape mismatch");
  }

  return r;
}

void save_label_map(const LabelMap& m, const std::filesystem::path& path) {
  save_archive({"label_map", m.tensor()}, path);
}

LabelMap load_label_map(const std::filesystem::path& path) {
  auto a = load_archive(path);
  if (a.role != "label_map")
    throw ArchiveError(ArchiveError::Kind::RoleMismatch,
                       "'" + path.string() + "' holds role '" + a.role + "', expected 'label_map'");
  return LabelMap(a.tensor);
}

void save_mri(const MriInstance& m, const std::filesystem::path& path) {
  save_archive({"mri", m.tensor()}, path);
}

MriInstance load_mri(const std::filesystem::path& path) {
  auto a = load_archive(path);
  if (a.role != "mri")
    throw ArchiveError(ArchiveError::Kind::RoleMismatch,
                       "'" + path.string() + "' holds role '" + a.role + "', expected 'mri'");
  return MriInstance(a.tensor);
}

void save_atlas(const AtlasStack& a, const std::filesystem::path& path) {
  save_archive({"atlas", a.tensor()}, path);
}

AtlasStack load_atlas(const std::filesystem::path& path) {
  auto a = load_archive(path);
  if (a.role != "atlas")
    throw ArchiveError(ArchiveError::Kind::RoleMismatch,
                       "'" + path.string() + "' holds role '" + a.role + "', expected 'atlas'");
  return AtlasStack(a.tensor);
}

}  // namespace mrisynth
