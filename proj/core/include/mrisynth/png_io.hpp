// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <torch/torch.h>

#include <filesystem>
#include <vector>

namespace mrisynth {

// 8-bit grayscale PNG; values linearly rescaled from [-1,1] to [0,255].
void write_png_gray(const torch::Tensor& plane, const std::filesystem::path& path);

// Raw u8 plane (e.g. label maps scaled by the caller).
void write_png_gray_u8(const torch::Tensor& plane, const std::filesystem::path& path);

// Tiles [-1,1] planes into rows x cols (row-major order) with a 2px gutter.
void write_png_grid(const std::vector<torch::Tensor>& planes, int64_t cols,
                    const std::filesystem::path& path);

}  // namespace mrisynth
