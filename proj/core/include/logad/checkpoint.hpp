/* Copyright 2026 The logad Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "logad/numerics.hpp"

namespace logad {

/// Model checkpoint container.
///
/// On disk:
///
///     logad-checkpoint 1
///     kind <kind>
///     meta <key> <value>          (zero or more; values contain no newline)
///     tensor <name> <rows> <cols> (one line per tensor, in order)
///     end
///     <raw payload>
///
/// The payload is every tensor's row-major data, in header order, as IEEE-754
/// binary64 values in little-endian byte order. Save/load is bit-exact.
struct Checkpoint {
  std::string kind;
  std::map<std::string, std::string> meta;
  std::vector<std::pair<std::string, Matrix>> tensors;

  const Matrix& tensor(const std::string& name) const;
  const std::string& meta_value(const std::string& key) const;

  void save(const std::filesystem::path& path) const;
  /// Throws std::runtime_error on I/O failure, a bad header, a version
  /// mismatch or a truncated payload.
  static Checkpoint load(const std::filesystem::path& path);
};

}  // namespace logad
