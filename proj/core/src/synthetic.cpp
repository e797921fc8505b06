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


#include "logad/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "logad/random.hpp"

namespace logad {

SyntheticCorpusStats write_separable_corpus(const std::filesystem::path& path,
                                            const SyntheticCorpusOptions& options) {
  if (options.messages == 0 || options.vocab_per_class == 0 ||
      options.min_tokens > options.max_tokens || options.min_tokens == 0) {
    throw std::invalid_argument("synthetic corpus: invalid size options");
  }
  if (!(options.anomaly_fraction >= 0.0 && options.anomaly_fraction <= 1.0)) {
    throw std::invalid_argument("synthetic corpus: anomaly fraction must lie in [0, 1]");
  }
  Rng rng(options.seed);
  SyntheticCorpusStats stats;
  stats.anomalous = static_cast<std::size_t>(
      std::llround(options.anomaly_fraction * static_cast<double>(options.messages)));
  stats.normal = options.messages - stats.anomalous;

  std::vector<std::uint8_t> anomalous(options.messages, 0);
  for (std::size_t i = 0; i < stats.anomalous; ++i) anomalous[i] = 1;
  Rng order_rng = rng.derive(1);
  seeded_shuffle(anomalous, order_rng);

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::ofstream labels;
  if (options.format == SyntheticFormat::generic) {
    labels.open(path.string() + ".labels", std::ios::binary);
    if (!labels) throw std::runtime_error("cannot write " + path.string() + ".labels");
  }

  Rng token_rng = rng.derive(2);
  const std::size_t span = options.max_tokens - options.min_tokens + 1;
  for (std::size_t m = 0; m < options.messages; ++m) {
    const bool bad = anomalous[m] != 0;
    if (options.format == SyntheticFormat::bgl) {
      const std::uint64_t stamp = 1117838570 + m;
      out << (bad ? "KERNDTLB" : "-") << ' ' << stamp << " 2005.06.03 R02-M1-N0-C:J12-U11 "
          << "2005-06-03-15.42.50.675872 R02-M1-N0-C:J12-U11 RAS KERNEL "
          << (bad ? "FATAL" : "INFO");
    }
    const std::size_t count = options.min_tokens + token_rng.below(span);
    for (std::size_t t = 0; t < count; ++t) {
      if (t > 0 || options.format == SyntheticFormat::bgl) out << ' ';
      out << (bad ? 'a' : 'n') << token_rng.below(options.vocab_per_class);
    }
    out << '\n';
    if (labels.is_open()) labels << (m + 1) << ' ' << (bad ? 0 : 1) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
  return stats;
}

}  // namespace logad
