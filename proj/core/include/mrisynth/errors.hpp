// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace mrisynth {

// Error categories map onto CLI exit codes: config/usage -> 1, I/O -> 2,
// validation -> 3, numerical -> 4.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Archive failures carry a kind so tests can distinguish corrupt files from
// wrongly-typed ones.
struct ArchiveError : std::runtime_error {
  enum class Kind { BadMagic, BadHeader, PayloadMismatch, RoleMismatch };

  ArchiveError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

}  // namespace mrisynth
