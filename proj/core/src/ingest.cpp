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

#include "logad/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

namespace logad {
namespace fs = std::filesystem;

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::string_view next_field(std::string_view& rest) {
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) {
    ++i;
  }
  std::size_t j = i;
  while (j < rest.size() && !is_space(rest[j])) {
    ++j;
  }
  std::string_view field = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return field;
}

std::string_view skip_fields(std::string_view line, std::size_t count) {
  for (std::size_t k = 0; k < count && !line.empty(); ++k) {
    next_field(line);
  }
  return line;
}

std::string where(const fs::path& path, std::uint64_t line) {
  return path.string() + ":" + std::to_string(line);
}

template <class Int>
bool parse_int(std::string_view text, Int& out) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

/// Streams "<line> <label>" pairs in increasing line order.
class SidecarReader {
 public:
  explicit SidecarReader(fs::path path) : path_(std::move(path)), in_(path_) {
    if (!in_) {
      throw IngestError("cannot open label file " + path_.string());
    }
    advance();
  }

  /// Label for corpus line `line`, if the sidecar lists it.
  std::optional<Label> label_for(std::uint64_t line) {
    if (!pending_ || pending_->first != line) {
      return std::nullopt;
    }
    const Label label = pending_->second;
    advance();
    return label;
  }

  /// Entries left after the corpus ended point past its last line.
  void finish(std::uint64_t corpus_lines) const {
    if (pending_) {
      throw IngestError("malformed label file " + where(path_, sidecar_line_) + ": line " +
                        std::to_string(pending_->first) + " exceeds corpus length " +
                        std::to_string(corpus_lines));
    }
  }

 private:
  void advance() {
    pending_.reset();
    std::string text;
    while (std::getline(in_, text)) {
      ++sidecar_line_;
      std::string_view rest = text;
      const std::string_view number = next_field(rest);
      if (number.empty()) {
        continue;
      }
      const std::string_view label = next_field(rest);
      const std::string_view extra = next_field(rest);
      std::uint64_t line = 0;
      if (!parse_int(number, line) || line == 0 || (label != "0" && label != "1") ||
          !extra.empty()) {
        throw IngestError("malformed label file " + where(path_, sidecar_line_) + ": '" + text +
                          "'");
      }
      if (line <= last_line_) {
        throw IngestError("malformed label file " + where(path_, sidecar_line_) +
                          ": line numbers must be strictly increasing");
      }
      last_line_ = line;
      pending_.emplace(line, label == "1" ? Label::positive : Label::negative);
      return;
    }
  }

  fs::path path_;
  std::ifstream in_;
  std::uint64_t sidecar_line_ = 0;
  std::uint64_t last_line_ = 0;
  std::optional<std::pair<std::uint64_t, Label>> pending_;
};

std::uint64_t parse_alert_tagged(const fs::path& path, DatasetKind dataset,
                                 std::size_t header_fields, const RecordSink& sink) {
  std::ifstream in(path);
  if (!in) {
    throw IngestError("cannot open " + path.string());
  }
  std::string text;
  std::uint64_t line = 0;
  std::uint64_t emitted = 0;
  while (std::getline(in, text)) {
    ++line;
    std::string_view rest = text;
    const std::string_view tag = next_field(rest);
    if (tag.empty()) {
      continue;
    }
    RawRecord record;
    record.label = tag == "-" ? Label::positive : Label::negative;
    record.dataset = dataset;
    record.source_line = line;
    // The tag is the first header column.
    record.tokens = tokenize(skip_fields(rest, header_fields - 1));
    if (record.tokens.empty()) {
      continue;
    }
    sink(std::move(record));
    ++emitted;
  }
  if (in.bad()) {
    throw IngestError("read error in " + path.string());
  }
  return emitted;
}

std::uint64_t parse_sidecar_labeled(const fs::path& path, DatasetKind dataset,
                                    std::size_t header_fields, const RecordSink& sink,
                                    const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw IngestError("cannot open " + path.string());
  }
  SidecarReader labels(options.label_file.value_or(fs::path(path.string() + ".labels")));
  std::string text;
  std::uint64_t line = 0;
  std::uint64_t emitted = 0;
  while (std::getline(in, text)) {
    ++line;
    const std::optional<Label> label = labels.label_for(line);
    if (!label) {
      continue;
    }
    RawRecord record;
    record.label = *label;
    record.dataset = dataset;
    record.source_line = line;
    record.tokens = tokenize(skip_fields(text, header_fields));
    if (record.tokens.empty()) {
      continue;
    }
    sink(std::move(record));
    ++emitted;
  }
  if (in.bad()) {
    throw IngestError("read error in " + path.string());
  }
  labels.finish(line);
  return emitted;
}

std::uint64_t parse_imdb(const fs::path& root, const RecordSink& sink) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw IngestError("imdb path is not a directory: " + root.string());
  }
  std::vector<std::pair<fs::path, Label>> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") {
      continue;
    }
    const std::string parent = entry.path().parent_path().filename().string();
    if (parent == "pos") {
      files.emplace_back(entry.path(), Label::positive);
    } else if (parent == "neg") {
      files.emplace_back(entry.path(), Label::negative);
    }
  }
  std::sort(files.begin(), files.end());

  std::uint64_t ordinal = 0;
  std::uint64_t emitted = 0;
  for (const auto& [file, label] : files) {
    ++ordinal;
    std::ifstream in(file);
    if (!in) {
      throw IngestError("cannot open " + file.string());
    }
    std::ostringstream body;
    body << in.rdbuf();
    RawRecord record;
    record.label = label;
    record.dataset = DatasetKind::imdb;
    record.source_line = ordinal;
    record.tokens = tokenize(body.str());
    if (record.tokens.empty()) {
      continue;
    }
    sink(std::move(record));
    ++emitted;
  }
  return emitted;
}

}  // namespace

Label label_from_int(long value) {
  if (value == 0) return Label::negative;
  if (value == 1) return Label::positive;
  throw std::invalid_argument("label must be 0 or 1, got " + std::to_string(value));
}

DatasetKind dataset_kind_from_string(std::string_view name) {
  if (name == "bgl") return DatasetKind::bgl;
  if (name == "thunderbird") return DatasetKind::thunderbird;
  if (name == "openstack") return DatasetKind::openstack;
  if (name == "imdb") return DatasetKind::imdb;
  if (name == "generic") return DatasetKind::generic;
  throw std::invalid_argument("unknown dataset '" + std::string(name) + "'");
}

std::string_view to_string(DatasetKind kind) noexcept {
  switch (kind) {
    case DatasetKind::bgl: return "bgl";
    case DatasetKind::thunderbird: return "thunderbird";
    case DatasetKind::openstack: return "openstack";
    case DatasetKind::imdb: return "imdb";
    case DatasetKind::generic: return "generic";
  }
  return "generic";
}

std::size_t default_sequence_length(DatasetKind kind) noexcept {
  return kind == DatasetKind::imdb ? 100 : 40;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string_view rest = text;
  for (;;) {
    std::string_view field = next_field(rest);
    if (field.empty()) {
      break;
    }
    while (!field.empty() && is_punct(field.front())) field.remove_prefix(1);
    while (!field.empty() && is_punct(field.back())) field.remove_suffix(1);
    if (field.empty()) {
      continue;
    }
    std::string token(field);
    for (char& c : token) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

std::uint64_t parse_dataset(const fs::path& path, DatasetKind dataset, const RecordSink& sink,
                            const ParseOptions& options) {
  switch (dataset) {
    case DatasetKind::bgl:
      return parse_alert_tagged(path, dataset, 9, sink);
    case DatasetKind::thunderbird:
      return parse_alert_tagged(path, dataset, 8, sink);
    case DatasetKind::openstack:
      return parse_sidecar_labeled(path, dataset, 6, sink, options);
    case DatasetKind::generic:
      return parse_sidecar_labeled(path, dataset, 0, sink, options);
    case DatasetKind::imdb:
      return parse_imdb(path, sink);
  }
  throw IngestError("unknown dataset kind");
}

bool passes_length_filter(const RawRecord& record, std::size_t min_len) noexcept {
  return record.tokens.size() >= min_len;
}

std::vector<RawRecord> filter_short(std::vector<RawRecord> records, std::size_t min_len) {
  std::erase_if(records, [min_len](const RawRecord& r) { return !passes_length_filter(r, min_len); });
  return records;
}

RecordSink filter_short(RecordSink downstream, std::size_t min_len) {
  return [downstream = std::move(downstream), min_len](RawRecord&& record) {
    if (passes_length_filter(record, min_len)) {
      downstream(std::move(record));
    }
  };
}

void Vocabulary::Builder::add(std::span<const std::string> tokens) {
  for (const auto& t : tokens) {
    ++counts_[t];
  }
}

Vocabulary Vocabulary::Builder::build() const {
  if (counts_.empty()) {
    throw std::invalid_argument("cannot build a vocabulary from an empty corpus");
  }
  std::vector<std::pair<const std::string*, std::uint64_t>> entries;
  entries.reserve(counts_.size());
  for (const auto& [token, count] : counts_) {
    entries.emplace_back(&token, count);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return *a.first < *b.first;
  });
  std::vector<std::string> ranked;
  ranked.reserve(entries.size());
  for (const auto& e : entries) {
    ranked.push_back(*e.first);
  }
  return from_ranked(std::move(ranked));
}

Vocabulary Vocabulary::from_records(std::span<const RawRecord> records) {
  Builder builder;
  for (const auto& r : records) {
    builder.add(r.tokens);
  }
  return builder.build();
}

Vocabulary Vocabulary::from_ranked(std::vector<std::string> ranked) {
  Vocabulary vocab;
  vocab.ranked_ = std::move(ranked);
  vocab.index_.reserve(vocab.ranked_.size());
  for (std::size_t i = 0; i < vocab.ranked_.size(); ++i) {
    const auto [it, inserted] =
        vocab.index_.emplace(vocab.ranked_[i], static_cast<std::uint32_t>(i + 1));
    if (!inserted) {
      throw std::invalid_argument("duplicate vocabulary token '" + vocab.ranked_[i] + "'");
    }
  }
  return vocab;
}

std::uint32_t Vocabulary::index_of(std::string_view token) const {
  auto it = index_.find(token);
  return it == index_.end() ? 0U : it->second;
}

const std::string& Vocabulary::token_at(std::uint32_t index) const {
  if (index == 0 || index > ranked_.size()) {
    throw std::out_of_range("vocabulary index " + std::to_string(index) + " out of range");
  }
  return ranked_[index - 1];
}

void Vocabulary::save(const fs::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IngestError("cannot open " + path.string() + " for writing");
  }
  for (std::size_t i = 0; i < ranked_.size(); ++i) {
    out << ranked_[i] << ' ' << (i + 1) << '\n';
  }
  if (!out) {
    throw IngestError("write failed for " + path.string());
  }
}

Vocabulary Vocabulary::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IngestError("cannot open " + path.string());
  }
  std::vector<std::string> ranked;
  std::string text;
  std::uint64_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::string_view rest = text;
    const std::string_view token = next_field(rest);
    const std::string_view index = next_field(rest);
    std::uint64_t value = 0;
    if (token.empty() || !parse_int(index, value) || value != ranked.size() + 1 ||
        !next_field(rest).empty()) {
      throw IngestError("malformed vocabulary " + where(path, line));
    }
    ranked.emplace_back(token);
  }
  return from_ranked(std::move(ranked));
}

TokenSequence encode(const RawRecord& record, const Vocabulary& vocab, std::size_t length) {
  TokenSequence seq;
  seq.label = record.label;
  seq.indices.assign(length, 0U);
  const std::size_t n = std::min(length, record.tokens.size());
  for (std::size_t i = 0; i < n; ++i) {
    seq.indices[i] = vocab.index_of(record.tokens[i]);
  }
  return seq;
}

PreprocessedCorpus preprocess_corpus(const fs::path& path, DatasetKind dataset,
                                     const PreprocessOptions& options, Rng& rng) {
  if (options.sequence_length == 0) {
    throw std::invalid_argument("sequence length must be positive");
  }
  PreprocessedCorpus corpus;

  Vocabulary::Builder builder;
  corpus.parsed_records = parse_dataset(
      path, dataset,
      filter_short([&](RawRecord&& r) { builder.add(r.tokens); }, options.min_tokens),
      options.parse);
  corpus.vocabulary = builder.build();

  parse_dataset(
      path, dataset,
      filter_short(
          [&](RawRecord&& r) {
            auto& bucket = r.label == Label::positive ? corpus.positive : corpus.negative;
            bucket.push_back(encode(r, corpus.vocabulary, options.sequence_length));
            ++corpus.kept_records;
          },
          options.min_tokens),
      options.parse);

  seeded_shuffle(corpus.positive, rng);
  seeded_shuffle(corpus.negative, rng);
  return corpus;
}

void write_encoded(const fs::path& path, const EncodedDataset& dataset) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IngestError("cannot open " + path.string() + " for writing");
  }
  out << "logad-encoded 1\n"
      << "length " << dataset.length << '\n'
      << "vocab " << dataset.vocab_size << '\n'
      << "rows " << dataset.rows.size() << '\n'
      << "config " << (dataset.config_hash.empty() ? "-" : dataset.config_hash) << '\n';
  for (const auto& row : dataset.rows) {
    if (row.indices.size() != dataset.length) {
      throw std::invalid_argument("write_encoded: row length differs from header length");
    }
    for (const auto idx : row.indices) {
      out << idx << ' ';
    }
    out << to_int(row.label) << '\n';
  }
  if (!out) {
    throw IngestError("write failed for " + path.string());
  }
}

EncodedDataset read_encoded(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IngestError("cannot open " + path.string());
  }
  std::uint64_t line = 0;
  auto header = [&](std::string_view key) {
    std::string text;
    if (!std::getline(in, text)) {
      throw IngestError("truncated encoded header in " + path.string());
    }
    ++line;
    std::string_view rest = text;
    if (next_field(rest) != key) {
      throw IngestError("expected '" + std::string(key) + "' at " + where(path, line));
    }
    return std::string(next_field(rest));
  };
  if (header("logad-encoded") != "1") {
    throw IngestError("unsupported encoded-dataset version in " + path.string());
  }
  EncodedDataset ds;
  std::uint64_t rows = 0;
  if (!parse_int(header("length"), ds.length) || !parse_int(header("vocab"), ds.vocab_size) ||
      !parse_int(header("rows"), rows)) {
    throw IngestError("malformed encoded header in " + path.string());
  }
  ds.config_hash = header("config");
  if (ds.config_hash == "-") {
    ds.config_hash.clear();
  }
  ds.rows.reserve(rows);
  std::string text;
  while (std::getline(in, text)) {
    ++line;
    std::string_view rest = text;
    TokenSequence seq;
    seq.indices.reserve(ds.length);
    std::vector<std::uint64_t> values;
    for (std::string_view f = next_field(rest); !f.empty(); f = next_field(rest)) {
      std::uint64_t v = 0;
      if (!parse_int(f, v)) {
        throw IngestError("non-integer field at " + where(path, line));
      }
      values.push_back(v);
    }
    if (values.empty()) {
      continue;
    }
    if (values.size() != ds.length + 1 || values.back() > 1) {
      throw IngestError("malformed row at " + where(path, line));
    }
    for (std::size_t i = 0; i < ds.length; ++i) {
      if (values[i] > ds.vocab_size) {
        throw IngestError("index out of range at " + where(path, line));
      }
      seq.indices.push_back(static_cast<std::uint32_t>(values[i]));
    }
    seq.label = values.back() == 1 ? Label::positive : Label::negative;
    ds.rows.push_back(std::move(seq));
  }
  if (ds.rows.size() != rows) {
    throw IngestError("row count mismatch in " + path.string() + ": header says " +
                      std::to_string(rows) + ", found " + std::to_string(ds.rows.size()));
  }
  return ds;
}

}  // namespace logad
