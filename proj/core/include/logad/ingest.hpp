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
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "logad/random.hpp"

namespace logad {

/// Binary class label. Normal messages are the positive class.
enum class Label : std::uint8_t { negative = 0, positive = 1 };

constexpr int to_int(Label label) noexcept { return static_cast<int>(label); }
/// Throws std::invalid_argument for anything other than 0 or 1.
Label label_from_int(long value);

enum class DatasetKind { bgl, thunderbird, openstack, imdb, generic };

DatasetKind dataset_kind_from_string(std::string_view name);
std::string_view to_string(DatasetKind kind) noexcept;
/// 100 for IMDB, 40 otherwise.
std::size_t default_sequence_length(DatasetKind kind) noexcept;

/// Raised for unreadable inputs and malformed files; the message carries
/// file and line context.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RawRecord {
  std::vector<std::string> tokens;
  Label label = Label::positive;
  DatasetKind dataset = DatasetKind::generic;
  /// 1-based line number in the source file (file ordinal for IMDB).
  std::uint64_t source_line = 0;
};

/// Lowercases, splits on whitespace, strips punctuation from both token
/// edges and drops tokens left empty. Interior punctuation is kept.
std::vector<std::string> tokenize(std::string_view text);

using RecordSink = std::function<void(RawRecord&&)>;

struct ParseOptions {
  /// Sidecar label file for openstack/generic corpora. Defaults to
  /// "<path>.labels".
  std::optional<std::filesystem::path> label_file;
};

/// Streams labeled records from a raw corpus into `sink`, one line (or IMDB
/// review file) at a time.
///
/// - bgl, thunderbird: a first field of "-" means normal (label 1); any
///   other alert tag means anomalous (label 0). The message content after
///   the fixed header columns (9 for BGL, 8 for Thunderbird) is tokenized.
/// - openstack, generic: labels come from the sidecar file, one
///   "<line-number> <0|1>" pair per line with strictly increasing 1-based
///   line numbers. Corpus lines without an entry are skipped. OpenStack
///   lines drop their 6 leading header columns; generic lines are used whole.
/// - imdb: `path` is a directory searched recursively, in sorted order, for
///   .txt files whose parent directory is named "pos" (label 1) or "neg"
///   (label 0).
///
/// Records with no tokens are skipped. Returns the number of records emitted.
std::uint64_t parse_dataset(const std::filesystem::path& path, DatasetKind dataset,
                            const RecordSink& sink, const ParseOptions& options = {});

/// Keeps records with at least `min_len` tokens.
bool passes_length_filter(const RawRecord& record, std::size_t min_len = 5) noexcept;
std::vector<RawRecord> filter_short(std::vector<RawRecord> records, std::size_t min_len = 5);
/// Streaming form: forwards only records passing the length filter.
RecordSink filter_short(RecordSink downstream, std::size_t min_len = 5);

/// Frequency-ranked token index. Index 0 is reserved for padding and
/// out-of-vocabulary tokens; indices 1..V follow descending corpus
/// frequency with ties in ascending lexicographic order.
class Vocabulary {
 public:
  class Builder {
   public:
    void add(std::span<const std::string> tokens);
    /// Throws std::invalid_argument if no tokens were added.
    Vocabulary build() const;

   private:
    std::unordered_map<std::string, std::uint64_t> counts_;
  };

  Vocabulary() = default;

  static Vocabulary from_records(std::span<const RawRecord> records);
  /// Builds from tokens already in rank order (index 1 first).
  static Vocabulary from_ranked(std::vector<std::string> ranked);

  /// 0 for unknown tokens.
  std::uint32_t index_of(std::string_view token) const;
  const std::string& token_at(std::uint32_t index) const;
  /// V, the number of real tokens.
  std::size_t size() const noexcept { return ranked_.size(); }
  const std::vector<std::string>& ranked_tokens() const noexcept { return ranked_; }

  /// "<token> <index>" lines sorted by index.
  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

  bool operator==(const Vocabulary& other) const { return ranked_ == other.ranked_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> ranked_;
  std::unordered_map<std::string, std::uint32_t, Hash, std::equal_to<>> index_;
};

/// Fixed-length index sequence with its label. Also used for the assembled
/// classifier examples, which share the representation and file format.
struct TokenSequence {
  std::vector<std::uint32_t> indices;
  Label label = Label::positive;

  bool operator==(const TokenSequence&) const = default;
};
using LabeledExample = TokenSequence;

/// Maps tokens to indices (unknown -> 0), keeps the first `length` tokens
/// and pads with 0 at the end.
TokenSequence encode(const RawRecord& record, const Vocabulary& vocab, std::size_t length);

struct PreprocessOptions {
  std::size_t sequence_length = 40;
  std::size_t min_tokens = 5;
  ParseOptions parse;
};

struct PreprocessedCorpus {
  std::vector<TokenSequence> positive;
  std::vector<TokenSequence> negative;
  Vocabulary vocabulary;
  std::uint64_t parsed_records = 0;
  std::uint64_t kept_records = 0;
};

/// parse -> tokenize -> filter -> vocabulary -> encode -> shuffle. The corpus
/// is streamed twice (vocabulary pass, then encoding pass) and never held in
/// memory as text. Both class lists are shuffled with `rng`, positives first.
PreprocessedCorpus preprocess_corpus(const std::filesystem::path& path, DatasetKind dataset,
                                     const PreprocessOptions& options, Rng& rng);

/// Encoded dataset file:
///
///     logad-encoded 1
///     length <L>
///     vocab <V>
///     rows <N>
///     config <hash>
///     <i_1> ... <i_L> <label>     (N rows)
struct EncodedDataset {
  std::size_t length = 0;
  std::size_t vocab_size = 0;
  std::string config_hash;
  std::vector<TokenSequence> rows;
};

void write_encoded(const std::filesystem::path& path, const EncodedDataset& dataset);
/// Validates the header, row count, row width, index range and labels.
EncodedDataset read_encoded(const std::filesystem::path& path);

}  // namespace logad
