// SPDX-License-Identifier: Apache-2.0
#include "mrisynth/tensor_archive.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <cstring>
#include <fstream>

#include "mrisynth/errors.hpp"

namespace mrisynth {

using nlohmann::json;

namespace {

constexpr char kMagic[4] = {'T', 'A', 'R', 'C'};
constexpr int kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "archive payloads are little-endian; add byteswap before porting");

struct RoleSpec {
  torch::ScalarType dtype;
  int64_t rank;      // -1 = any
  int64_t channels;  // leading dim; -1 = any
};

const std::pair<const char*, RoleSpec> kRoles[] = {
    {"label_map", {torch::kUInt8, 2, -1}},
    {"mask", {torch::kUInt8, 3, 5}},
    {"mri", {torch::kFloat32, 3, 5}},
    {"atlas", {torch::kFloat32, 3, 15}},
    {"seg_prob", {torch::kFloat32, 3, 5}},
};

const RoleSpec* find_role(const std::string& role) {
  for (const auto& [name, spec] : kRoles) {
    if (role == name) return &spec;
  }
  return nullptr;
}

}  // namespace

std::string dtype_code(torch::ScalarType t) {
  switch (t) {
    case torch::kFloat32: return "f32";
    case torch::kFloat64: return "f64";
    case torch::kInt64: return "i64";
    case torch::kUInt8: return "u8";
    default: throw ConfigError("unsupported archive dtype: " + std::string(c10::toString(t)));
  }
}

torch::ScalarType dtype_from_code(const std::string& code) {
  if (code == "f32") return torch::kFloat32;
  if (code == "f64") return torch::kFloat64;
  if (code == "i64") return torch::kInt64;
  if (code == "u8") return torch::kUInt8;
  throw ArchiveError(ArchiveError::Kind::BadHeader, "unknown dtype code '" + code + "'");
}

int64_t dtype_size(torch::ScalarType t) {
  return static_cast<int64_t>(torch::elementSize(t));
}

std::string archive_layout(const torch::Tensor& t) {
  switch (t.dim()) {
    case 1: return "c";
    case 2: return "hw";
    case 3: return "chw";
    default: return "raw";
  }
}

void check_role(const std::string& role, const torch::Tensor& t) {
  if (role == "tensor") return;
  const RoleSpec* spec = find_role(role);
  if (spec == nullptr) {
    throw ArchiveError(ArchiveError::Kind::RoleMismatch, "unknown archive role '" + role + "'");
  }
  if (t.scalar_type() != spec->dtype) {
    throw ArchiveError(ArchiveError::Kind::RoleMismatch,
                       "role '" + role + "' expects dtype " + dtype_code(spec->dtype) + ", got " +
                           dtype_code(t.scalar_type()));
  }
  if (spec->rank >= 0 && t.dim() != spec->rank) {
    throw ArchiveError(ArchiveError::Kind::RoleMismatch,
                       "role '" + role + "' expects rank " + std::to_string(spec->rank) +
                           ", got " + std::to_string(t.dim()));
  }
  if (spec->channels >= 0 && t.size(0) != spec->channels) {
    throw ArchiveError(ArchiveError::Kind::RoleMismatch,
                       "role '" + role + "' expects " + std::to_string(spec->channels) +
                           " channels, got " + std::to_string(t.size(0)));
  }
}

void save_archive(const TensorArchive& a, const std::filesystem::path& path) {
  check_role(a.role, a.tensor);
  auto t = a.tensor.to(torch::kCPU).contiguous();

  json header;
  header["version"] = kVersion;
  header["role"] = a.role;
  header["dtype"] = dtype_code(t.scalar_type());
  header["layout"] = archive_layout(t);
  header["shape"] = std::vector<int64_t>(t.sizes().begin(), t.sizes().end());
  const std::string h = header.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(kMagic, 4);
  const uint32_t hlen = static_cast<uint32_t>(h.size());
  out.write(reinterpret_cast<const char*>(&hlen), 4);
  out.write(h.data(), static_cast<std::streamsize>(h.size()));
  out.write(static_cast<const char*>(t.data_ptr()),
            static_cast<std::streamsize>(t.numel() * dtype_size(t.scalar_type())));
  if (!out) throw IoError("short write to '" + path.string() + "'");
}

TensorArchive load_archive(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");

  char magic[4];
  uint32_t hlen = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&hlen), 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw ArchiveError(ArchiveError::Kind::BadMagic, "'" + path.string() + "' is not a tensor archive");
  }

  std::string h(hlen, '\0');
  in.read(h.data(), hlen);
  if (!in) throw ArchiveError(ArchiveError::Kind::BadHeader, "truncated header in '" + path.string() + "'");

  json header;
  try {
    header = json::parse(h);
  } catch (const json::exception& e) {
    throw ArchiveError(ArchiveError::Kind::BadHeader,
                       "bad header in '" + path.string() + "': " + e.what());
  }
  if (!header.contains("role") || !header.contains("dtype") || !header.contains("shape")) {
    throw ArchiveError(ArchiveError::Kind::BadHeader, "missing header fields in '" + path.string() + "'");
  }

  const auto role = header["role"].get<std::string>();
  const auto dtype = dtype_from_code(header["dtype"].get<std::string>());
  const auto shape = header["shape"].get<std::vector<int64_t>>();

  int64_t numel = 1;
  for (int64_t d : shape) {
    if (d <= 0) throw ArchiveError(ArchiveError::Kind::BadHeader, "non-positive dim in '" + path.string() + "'");
    numel *= d;
  }

  auto t = torch::empty(shape, torch::TensorOptions().dtype(dtype));
  const int64_t want = numel * dtype_size(dtype);
  in.read(static_cast<char*>(t.data_ptr()), want);
  if (in.gcount() != want || in.peek() != std::ifstream::traits_type::eof()) {
    throw ArchiveError(ArchiveError::Kind::PayloadMismatch,
                       "payload length mismatch in '" + path.string() + "'");
  }

  check_role(role, t);
  return {role, t};
}

}  // namespace mrisynth
