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


#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "logad/ingest.hpp"
#include "logad/synthetic.hpp"
#include "support/oracles.hpp"

namespace logad {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("logad_ingest_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

std::vector<RawRecord> collect(const fs::path& p, DatasetKind kind, ParseOptions opts = {}) {
  std::vector<RawRecord> out;
  parse_dataset(p, kind, [&](RawRecord&& r) { out.push_back(std::move(r)); }, opts);
  return out;
}

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("Kernel PANIC!"), (std::vector<std::string>{"kernel", "panic"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("data-cache error, corrected"),
            (std::vector<std::string>{"data-cache", "error", "corrected"}));
  EXPECT_EQ(tokenize("  ...  (x)  \t"), (std::vector<std::string>{"x"}));
}

TEST(ParseDataset, BglLabelsFromAlertTag) {
  TempDir dir("bgl");
  const fs::path p = dir.path() / "bgl.log";
  write(p,
        "- 1117838570 2005.06.03 R02-M1-N0-C:J12-U11 2005-06-03-15.42.50.675872 "
        "R02-M1-N0-C:J12-U11 RAS KERNEL INFO instruction cache parity error corrected\n"
        "APPREAD 1117869872 2005.06.04 R04-M1-N4-I:J18-U11 2005-06-04-00.24.32.432192 "
        "R04-M1-N4-I:J18-U11 RAS APP FATAL ciod: failed to read message prefix on control "
        "stream\n");
  const auto records = collect(p, DatasetKind::bgl);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].label, Label::positive);
  EXPECT_EQ(records[0].tokens,
            (std::vector<std::string>{"instruction", "cache", "parity", "error", "corrected"}));
  EXPECT_EQ(records[0].source_line, 1u);
  EXPECT_EQ(records[1].label, Label::negative);
  EXPECT_EQ(records[1].tokens.front(), "ciod");
}

TEST(ParseDataset, ThunderbirdSkipsEightColumns) {
  TempDir dir("tbird");
  const fs::path p = dir.path() / "tbird.log";
  write(p,
        "- 1131566461 2005.11.09 dn228 Nov 9 12:01:01 dn228/dn228 crond(pam_unix)[2915]: "
        "session closed for user root\n"
        "VAPI 1131566462 2005.11.09 tbird-admin1 Nov 9 12:01:02 local@tbird-admin1 "
        "postfix/postdrop[10896]: warning: unable to look up public/pickup\n");
  const auto records = collect(p, DatasetKind::thunderbird);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].label, Label::positive);
  EXPECT_EQ(records[0].tokens.front(), "crond(pam_unix)[2915");
  EXPECT_EQ(records[1].label, Label::negative);
}

TEST(ParseDataset, GenericUsesSidecarAndSkipsUnlistedLines) {
  TempDir dir("generic");
  const fs::path p = dir.path() / "c.log";
  write(p, "alpha beta\ngamma delta\nepsilon zeta\n");
  write(dir.path() / "c.log.labels", "1 1\n3 0\n");
  const auto records = collect(p, DatasetKind::generic);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].source_line, 1u);
  EXPECT_EQ(records[0].label, Label::positive);
  EXPECT_EQ(records[1].source_line, 3u);
  EXPECT_EQ(records[1].label, Label::negative);
}

TEST(ParseDataset, SidecarErrorsCarryContext) {
  TempDir dir("sidecar_bad");
  const fs::path p = dir.path() / "c.log";
  write(p, "a b\nc d\n");
  write(dir.path() / "c.log.labels", "2 1\n1 0\n");
  EXPECT_THROW(collect(p, DatasetKind::generic), IngestError);
  write(dir.path() / "c.log.labels", "1 7\n");
  EXPECT_THROW(collect(p, DatasetKind::generic), IngestError);
  write(dir.path() / "c.log.labels", "1 1\n9 0\n");
  EXPECT_THROW(collect(p, DatasetKind::generic), IngestError);
  EXPECT_THROW(collect(dir.path() / "missing.log", DatasetKind::generic), IngestError);
}

TEST(ParseDataset, OpenStackSkipsSixColumns) {
  TempDir dir("openstack");
  const fs::path p = dir.path() / "os.log";
  write(p,
        "nova-api.log.1.2017-05-16_13:53:08 2017-05-16 00:00:00.008 25746 INFO "
        "nova.osapi_compute.wsgi.server [req-38101a0b] 10.11.10.1 \"GET /v2/servers\"\n");
  write(dir.path() / "os.log.labels", "1 0\n");
  const auto records = collect(p, DatasetKind::openstack);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].tokens.front(), "req-38101a0b");
  EXPECT_EQ(records[0].label, Label::negative);
}

TEST(ParseDataset, ImdbDirectoryLayout) {
  TempDir dir("imdb");
  write(dir.path() / "train" / "pos" / "1_9.txt", "A wonderful film.");
  write(dir.path() / "train" / "neg" / "2_1.txt", "Dull and slow.");
  write(dir.path() / "train" / "unsup" / "3_0.txt", "ignored");
  const auto records = collect(dir.path(), DatasetKind::imdb);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].label, Label::negative);
  EXPECT_EQ(records[1].label, Label::positive);
  EXPECT_EQ(records[1].tokens, (std::vector<std::string>{"a", "wonderful", "film"}));
}

TEST(FilterShort, Boundary) {
  RawRecord four{{"a", "b", "c", "d"}};
  RawRecord five{{"a", "b", "c", "d", "e"}};
  EXPECT_FALSE(passes_length_filter(four));
  EXPECT_TRUE(passes_length_filter(five));
}

TEST(FilterShort, MatchesBruteForceCount) {
  testing::Gen gen(21);
  std::vector<RawRecord> records(500);
  std::size_t expected = 0;
  for (auto& r : records) {
    r.tokens.assign(gen.index(10), "t");
    expected += r.tokens.size() >= 5;
  }
  EXPECT_EQ(filter_short(records).size(), expected);
  std::size_t streamed = 0;
  const RecordSink sink = filter_short([&](RawRecord&&) { ++streamed; });
  for (auto r : records) sink(std::move(r));
  EXPECT_EQ(streamed, expected);
}

TEST(Vocabulary, FrequencyRankWithLexicographicTies) {
  std::vector<RawRecord> records{{{"error", "error", "warn"}}};
  const Vocabulary v = Vocabulary::from_records(records);
  EXPECT_EQ(v.index_of("error"), 1u);
  EXPECT_EQ(v.index_of("warn"), 2u);
  EXPECT_EQ(v.index_of("unseen"), 0u);
  EXPECT_EQ(v.size(), 2u);

  std::vector<RawRecord> distinct{{{"zeta", "alpha", "mu"}}};
  EXPECT_EQ(Vocabulary::from_records(distinct).ranked_tokens(),
            (std::vector<std::string>{"alpha", "mu", "zeta"}));
}

TEST(Vocabulary, AddingOccurrencesNeverRaisesIndex) {
  testing::Gen gen(22);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RawRecord> records(1);
    for (int i = 0; i < 60; ++i) records[0].tokens.push_back("w" + std::to_string(gen.index(15)));
    const Vocabulary before = Vocabulary::from_records(records);
    const std::string& token = before.token_at(static_cast<std::uint32_t>(1 + gen.index(before.size())));
    const std::uint32_t old_index = before.index_of(token);
    records[0].tokens.push_back(token);
    EXPECT_LE(Vocabulary::from_records(records).index_of(token), old_index);
  }
}

TEST(Vocabulary, SaveLoadRoundTrip) {
  TempDir dir("vocab");
  std::vector<RawRecord> records{{{"b", "a", "b", "c", "c", "c"}}};
  const Vocabulary v = Vocabulary::from_records(records);
  v.save(dir.path() / "v.txt");
  EXPECT_EQ(Vocabulary::load(dir.path() / "v.txt"), v);
}

TEST(Encode, PaddingTruncationAndOov) {
  const Vocabulary v = Vocabulary::from_ranked({"error", "warn"});
  RawRecord r{{"error", "warn"}};
  EXPECT_EQ(encode(r, v, 5).indices, (std::vector<std::uint32_t>{1, 2, 0, 0, 0}));
  RawRecord oov{{"warn", "mystery", "error"}};
  EXPECT_EQ(encode(oov, v, 3).indices, (std::vector<std::uint32_t>{2, 0, 1}));
  RawRecord longer;
  for (int i = 0; i < 45; ++i) longer.tokens.push_back(i < 40 ? "error" : "warn");
  const auto e = encode(longer, v, 40);
  EXPECT_EQ(e.indices, std::vector<std::uint32_t>(40, 1));
}

TEST(Preprocess, ToyCorpusCountsAndDeterminism) {
  TempDir dir("toy");
  const fs::path p = dir.path() / "toy.log";
  std::ostringstream corpus, labels;
  for (int i = 0; i < 10; ++i) {
    corpus << "token" << i << " shared words appear here often\n";
    labels << i + 1 << ' ' << (i < 6 ? 1 : 0) << '\n';
  }
  corpus << "too short\n";
  labels << "11 1\n";
  write(p, corpus.str());
  write(dir.path() / "toy.log.labels", labels.str());
  Rng a(3), b(3);
  const auto first = preprocess_corpus(p, DatasetKind::generic, {}, a);
  const auto second = preprocess_corpus(p, DatasetKind::generic, {}, b);
  EXPECT_EQ(first.positive.size(), 6u);
  EXPECT_EQ(first.negative.size(), 4u);
  EXPECT_EQ(first.parsed_records, 11u);
  EXPECT_EQ(first.kept_records, 10u);
  EXPECT_EQ(first.positive, second.positive);
  EXPECT_EQ(first.negative, second.negative);
  EXPECT_EQ(first.vocabulary, second.vocabulary);
}

TEST(Preprocess, BglSampleMatchesBruteForceRecount) {
  TempDir dir("bgl_sample");
  const fs::path p = dir.path() / "bgl.log";
  SyntheticCorpusOptions opts;
  opts.messages = 2000;
  opts.min_tokens = 2;
  opts.max_tokens = 9;
  opts.seed = 5;
  opts.format = SyntheticFormat::bgl;
  write_separable_corpus(p, opts);

  std::size_t normal = 0, anomalous = 0;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string tag, field;
    fields >> tag;
    for (int i = 0; i < 8; ++i) fields >> field;
    std::size_t count = 0;
    while (fields >> field) ++count;
    if (count < 5) continue;
    (tag == "-" ? normal : anomalous) += 1;
  }
  Rng rng(1);
  const auto corpus = preprocess_corpus(p, DatasetKind::bgl, {}, rng);
  EXPECT_EQ(corpus.positive.size(), normal);
  EXPECT_EQ(corpus.negative.size(), anomalous);
  EXPECT_GT(normal, 0u);
  EXPECT_GT(anomalous, 0u);
}

TEST(EncodedDataset, RoundTrip) {
  TempDir dir("encoded");
  testing::Gen gen(23);
  EncodedDataset data{6, 9, "00ff00ff00ff00ff", {}};
  for (int i = 0; i < 20; ++i) data.rows.push_back(gen.example(6, 9));
  write_encoded(dir.path() / "d.enc", data);
  const EncodedDataset back = read_encoded(dir.path() / "d.enc");
  EXPECT_EQ(back.length, 6u);
  EXPECT_EQ(back.vocab_size, 9u);
  EXPECT_EQ(back.config_hash, data.config_hash);
  EXPECT_EQ(back.rows, data.rows);
}

TEST(Names, DatasetAndLabelParsing) {
  EXPECT_EQ(dataset_kind_from_string("imdb"), DatasetKind::imdb);
  EXPECT_EQ(to_string(DatasetKind::thunderbird), "thunderbird");
  EXPECT_THROW(dataset_kind_from_string("hdfs"), std::invalid_argument);
  EXPECT_EQ(label_from_int(0), Label::negative);
  EXPECT_THROW(label_from_int(2), std::invalid_argument);
  EXPECT_EQ(default_sequence_length(DatasetKind::imdb), 100u);
  EXPECT_EQ(default_sequence_length(DatasetKind::bgl), 40u);
}

}  // namespace
}  // namespace logad
