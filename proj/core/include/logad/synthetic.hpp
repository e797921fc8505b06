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

#include <cstddef>
#include <cstdint>
#include <filesystem>

namespace logad {

enum class SyntheticFormat {
  generic,  // bare messages plus a "<path>.labels" sidecar
  bgl,      // BGL-style lines: alert tag, 8 header columns, message
};

/// Two-class corpus whose classes draw tokens from disjoint vocabularies
/// ("n0".."n{k-1}" for normal, "a0".."a{k-1}" for anomalous messages).
struct SyntheticCorpusOptions {
  std::size_t messages = 2000;
  double anomaly_fraction = 0.1;
  std::size_t vocab_per_class = 50;
  std::size_t min_tokens = 40;
  std::size_t max_tokens = 48;
  std::uint64_t seed = 0;
  SyntheticFormat format = SyntheticFormat::generic;
};

struct SyntheticCorpusStats {
  std::size_t normal = 0;
  std::size_t anomalous = 0;
};

/// Writes the corpus (and, for the generic format, its label sidecar).
/// Output bytes depend only on the options.
SyntheticCorpusStats write_separable_corpus(const std::filesystem::path& path,
                                            const SyntheticCorpusOptions& options);

}  // namespace logad
