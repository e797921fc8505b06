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


// Acceptance runner: one PASS/FAIL/SKIPPED line per criterion. Exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "logad/assembly.hpp"
#include "logad/autoencoder.hpp"
#include "logad/metrics.hpp"
#include "logad/pipeline.hpp"
#include "logad/recurrent.hpp"
#include "logad/synthetic.hpp"
#include "support/oracles.hpp"

namespace {

namespace fs = std::filesystem;
using namespace logad;
using logad::testing::Gen;

enum class Verdict { pass, fail, skipped };

struct Outcome {
  Verdict verdict = Verdict::pass;
  std::string detail;
};

class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ = failed_ || !ok;
  }
  bool failed() const { return failed_; }
  std::string failures() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    return s;
  }

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
};

Outcome finish(const Checks& c, const std::string& summary) {
  if (c.failed()) return {Verdict::fail, summary + " | " + c.failures()};
  return {Verdict::pass, summary};
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome gradients() {
  const auto start = std::chrono::steady_clock::now();
  Checks c;
  double worst = 0.0;
  for (const Arch arch : {Arch::lstm, Arch::blstm, Arch::gru}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      Rng rng(seed);
      ClassifierParams p = init_classifier(arch, 20, 3, 4, rng);
      Gen gen(seed);
      for (Matrix* m : p.params()) *m += gen.matrix(m->rows(), m->cols(), 0.5);
      std::vector<LabeledExample> batch;
      for (int i = 0; i < 3; ++i) batch.push_back(gen.example(5, 20));
      std::vector<const LabeledExample*> refs;
      for (const auto& e : batch) refs.push_back(&e);
      const Matrix mask = make_feature_dropout(p, refs.size(), 0.3, rng);
      const auto loss = [&] { return classifier_loss(classify_forward(p, refs, mask)); };
      const ClassifierParams grads = classify_backward(p, classify_forward(p, refs, mask));
      const auto report = grad_check(loss, p.params(), grads.params(), 1e-5, 1e-4, p.param_names());
      worst = std::max(worst, report.max_rel_error);
      c.expect(report.passed, std::string(to_string(arch)) + " seed " + std::to_string(seed) +
                                  " rel " + fmt(report.max_rel_error));
    }
  }
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    const std::size_t hidden[] = {5, 3, 3};
    AutoencoderParams p = init_autoencoder(6, hidden, 0.01, rng);
    Gen gen(seed);
    std::vector<AeSample> samples;
    for (int b = 0; b < 2; ++b) {
      TokenSequence s = gen.example(6, 12);
      s.indices[0] = 1 + static_cast<std::uint32_t>(gen.index(12));
      samples.push_back(normalize_sequence(s, 12));
    }
    const AeSample* refs[] = {&samples[0], &samples[1]};
    const AeBatch batch = make_batch(refs);
    const DropoutMasks masks = make_dropout_masks(p, 2, 0.3, rng);
    const auto loss = [&] {
      return ae_batch_loss(p, ae_forward(p, batch.inputs, masks).output(), batch.targets);
    };
    const std::vector<Matrix> grads =
        ae_backward(p, ae_forward(p, batch.inputs, masks), batch.targets);
    ConstParamList grad_refs;
    for (const auto& g : grads) grad_refs.push_back(&g);
    const auto report = grad_check(loss, p.params(), grad_refs, 1e-5, 1e-4, p.param_names());
    worst = std::max(worst, report.max_rel_error);
    c.expect(report.passed, "autoencoder seed " + std::to_string(seed) + " rel " +
                                fmt(report.max_rel_error));
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 120.0, "took " + fmt(elapsed) + " s");
  return finish(c, "3 archs + autoencoder x 5 seeds, worst rel error " + fmt(worst) + ", " +
                       fmt(elapsed) + " s");
}

Outcome cell_fidelity() {
  Checks c;
  Gen gen(2);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t in = 1 + gen.index(5);
    const std::size_t hidden = 1 + gen.index(5);
    const LstmCellParams lp = gen.lstm(in, hidden);
    const Vector x = gen.vector(static_cast<Eigen::Index>(in), 2.0);
    const LstmState prev{gen.vector(static_cast<Eigen::Index>(hidden)),
                         gen.vector(static_cast<Eigen::Index>(hidden), 2.0)};
    const LstmState got = lstm_step(lp, x, prev);
    const auto want = testing::oracle_lstm(lp, testing::to_std(x), testing::to_std(prev.h),
                                           testing::to_std(prev.c));
    worst = std::max({worst, (got.h - testing::to_eigen(want.h)).cwiseAbs().maxCoeff(),
                      (got.c - testing::to_eigen(want.c)).cwiseAbs().maxCoeff()});

    const GruCellParams gp = gen.gru(in, hidden);
    const Vector h = gru_step(gp, x, prev.h);
    const auto want_h = testing::oracle_gru(gp, testing::to_std(x), testing::to_std(prev.h));
    worst = std::max(worst, (h - testing::to_eigen(want_h)).cwiseAbs().maxCoeff());
  }
  c.expect(worst <= 1e-12, "max deviation " + fmt(worst));

  const std::size_t hidden = 6;
  LstmCellParams zero = gen.lstm(4, hidden);
  for (GateParams* g : {&zero.input, &zero.forget, &zero.output, &zero.candidate}) {
    g->w.setZero();
    g->u.setZero();
    g->b.setZero();
  }
  for (int trial = 0; trial < 20; ++trial) {
    const LstmState prev{gen.vector(hidden), gen.vector(hidden, 3.0)};
    const LstmState next = lstm_step(zero, gen.vector(4), prev);
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(hidden); ++k) {
      c.expect(next.c(k) == 0.5 * prev.c(k), "zero-parameter cell state");
      c.expect(next.h(k) == 0.5 * std::tanh(0.5 * prev.c(k)), "zero-parameter hidden state");
    }
  }
  return finish(c, "100 instances, max deviation " + fmt(worst) + "; zero-parameter identity exact");
}

Outcome metrics_oracle() {
  Checks c;
  Gen gen(3);
  std::vector<Label> preds, actual;
  for (int i = 0; i < 1000; ++i) {
    preds.push_back(gen.coin(0.4) ? Label::negative : Label::positive);
    actual.push_back(gen.coin(0.3) ? Label::negative : Label::positive);
  }
  double worst = 0.0;
  for (const Label pos : {Label::negative, Label::positive}) {
    std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      const bool p = preds[i] == pos, a = actual[i] == pos;
      tp += p && a;
      tn += !p && !a;
      fp += p && !a;
      fn += !p && a;
    }
    const ConfusionMatrix cm = confusion(preds, actual, pos);
    c.expect(cm == ConfusionMatrix{tp, tn, fp, fn}, "counts differ");
    const double acc = double(tp + tn) / 1000.0;
    const double p = double(tp) / double(tp + fp);
    const double r = double(tp) / double(tp + fn);
    worst = std::max({worst, std::abs(accuracy(cm) - acc), std::abs(precision(cm).value - p),
                      std::abs(recall(cm).value - r),
                      std::abs(f_measure(p, r) - 2 * p * r / (p + r))});
  }
  c.expect(worst <= 1e-12, "ratio deviation " + fmt(worst));
  const double f = f_measure(0.980, 0.913);
  c.expect(std::abs(f - 0.945) <= 0.0005, "f_measure(0.980, 0.913) = " + fmt(f, 6));
  return finish(c, "1000 pairs, ratio deviation " + fmt(worst) + "; f_measure(0.980, 0.913) = " +
                       fmt(f, 6));
}

Outcome split_arithmetic() {
  struct Case {
    const char* name;
    std::size_t n;
    DatasetKind kind;
    std::size_t test, train, validation;
  };
  const Case cases[] = {
      {"BGL", 4'747'962, DatasetKind::bgl, 4'510'564, 11'869, 225'529},
      {"IMDB", 49'565, DatasetKind::imdb, 47'087, 2'106, 372},
      {"OpenStack", 155'508, DatasetKind::openstack, 147'733, 6'608, 1'167},
      {"Thunderbird", 6'248'239, DatasetKind::thunderbird, 5'935'828, 15'620, 296'791},
  };
  Checks c;
  auto off = [](std::size_t a, std::size_t b) { return std::max(a, b) - std::min(a, b); };
  std::string summary;
  for (const Case& k : cases) {
    const SplitSizes s = split_sizes(k.n, SplitSpec::for_dataset(k.kind));
    const std::size_t worst =
        std::max({off(s.test, k.test), off(s.train, k.train), off(s.validation, k.validation)});
    c.expect(worst <= 1, std::string(k.name) + " off by " + std::to_string(worst));
    summary += (summary.empty() ? "" : ", ") + std::string(k.name) + " " +
               std::to_string(s.train) + "/" + std::to_string(s.validation) + "/" +
               std::to_string(s.test);
  }
  return finish(c, summary + " (train/validation/test)");
}

struct SyntheticRuns {
  fs::path corpus;
  std::vector<std::pair<Arch, fs::path>> outputs;
};

RunConfig synthetic_config(const fs::path& corpus, const fs::path& out, Arch arch) {
  RunConfig config;
  config.dataset = DatasetKind::generic;
  config.input = corpus;
  config.arch = arch;
  config.seed = 20240601;
  config.out = out;
  return config;
}

Outcome desk_scale(const fs::path& work, SyntheticRuns& runs) {
  SyntheticCorpusOptions opts;
  opts.messages = 2000;
  opts.anomaly_fraction = 0.1;
  opts.vocab_per_class = 50;
  opts.seed = 11;
  runs.corpus = work / "synthetic.log";
  write_separable_corpus(runs.corpus, opts);

  Checks c;
  std::string summary;
  for (const Arch arch : {Arch::lstm, Arch::blstm, Arch::gru}) {
    const fs::path out = work / ("run_" + std::string(to_string(arch)));
    std::ostringstream log;
    const std::clock_t begin = std::clock();
    cmd_run_all(synthetic_config(runs.corpus, out, arch), false, log);
    const double cpu = double(std::clock() - begin) / CLOCKS_PER_SEC;
    runs.outputs.emplace_back(arch, out);
    const MetricsReport m = metrics_from_json(slurp(RunLayout{out}.metrics_json(arch)));
    const std::string name(to_string(arch));
    c.expect(m.test_accuracy >= 0.95, name + " accuracy " + fmt(m.test_accuracy, 4));
    c.expect(cpu < 300.0, name + " CPU " + fmt(cpu) + " s");
    summary += (summary.empty() ? "" : ", ") + name + " " + fmt(100 * m.test_accuracy, 4) +
               "% in " + fmt(cpu) + " s CPU";
  }
  return finish(c, summary);
}

Outcome real_data(const fs::path& work) {
  const char* source = std::getenv("LOGAD_BGL_PATH");
  if (source == nullptr || *source == '\0') {
    return {Verdict::skipped, "set LOGAD_BGL_PATH to a BGL log to run"};
  }
  const fs::path prefix = work / "bgl_prefix.log";
  {
    std::ifstream in(source);
    if (!in) return {Verdict::fail, std::string("cannot open ") + source};
    std::ofstream out(prefix);
    std::string line;
    for (int i = 0; i < 100'000 && std::getline(in, line); ++i) out << line << '\n';
  }
  RunConfig config;
  config.dataset = DatasetKind::bgl;
  config.input = prefix;
  config.seed = 1;
  config.out = work / "bgl";
  std::ostringstream log;
  cmd_run_all(config, false, log);
  const RunLayout layout{config.out};
  const MetricsReport m = metrics_from_json(slurp(layout.metrics_json(config.arch)));
  const std::string table = slurp(layout.metrics_table(config.arch));
  Checks c;
  c.expect(m.test_accuracy > m.majority_baseline,
           "accuracy " + fmt(m.test_accuracy, 5) + " vs baseline " + fmt(m.majority_baseline, 5));
  c.expect(table.find("Precision") != std::string::npos && table.find("F-measure") != std::string::npos,
           "table lacks per-label columns");
  return finish(c, "accuracy " + fmt(100 * m.test_accuracy, 5) + "% vs majority " +
                       fmt(100 * m.majority_baseline, 5) + "%");
}

Outcome determinism(const fs::path& work, const SyntheticRuns& runs) {
  if (runs.outputs.empty()) return {Verdict::fail, "no reference run"};
  const auto& [arch, first] = runs.outputs.front();
  const fs::path second = work / "rerun";
  std::ostringstream log;
  cmd_run_all(synthetic_config(runs.corpus, second, arch), false, log);
  const std::string a = slurp(RunLayout{first}.metrics_json(arch));
  const std::string b = slurp(RunLayout{second}.metrics_json(arch));
  Checks c;
  c.expect(!a.empty() && a == b, "metrics JSON differs");
  return finish(c, std::string(to_string(arch)) + " metrics JSON, " + std::to_string(a.size()) +
                       " bytes, identical across fresh output directories");
}

Outcome noise_and_dedupe() {
  Checks c;
  Gen gen(8);
  std::size_t trials = 0;
  for (; trials < 200; ++trials) {
    std::vector<FeatureSequence> base;
    for (int i = 0; i < 40; ++i) {
      FeatureSequence f;
      f.values.resize(5);
      for (auto& v : f.values) v = gen.real(0.0, 50.0);
      f.label = gen.coin() ? Label::positive : Label::negative;
      base.push_back(f);
    }
    // Same vector with the other label is not a duplicate.
    FeatureSequence flipped = base[0];
    flipped.label = flipped.label == Label::positive ? Label::negative : Label::positive;
    base.push_back(flipped);
    std::vector<FeatureSequence> input = base;
    const std::size_t copies = gen.index(60);
    for (std::size_t k = 0; k < copies; ++k) {
      input.insert(input.begin() + static_cast<std::ptrdiff_t>(gen.index(input.size() + 1)),
                   base[gen.index(base.size())]);
    }
    const auto out = remove_duplicates(input);
    c.expect(out.size() == base.size(), "kept " + std::to_string(out.size()) + " of " +
                                            std::to_string(base.size()) + " distinct");
    for (const auto& f : base) {
      c.expect(std::count_if(out.begin(), out.end(), [&](const FeatureSequence& g) {
                 return g.values == f.values && g.label == f.label;
               }) == 1, "distinct pair not kept exactly once");
    }
  }

  Rng rng(Rng(8).derive(4));
  const std::vector<double> draws = gaussian_sample(rng, 0.0, 0.1, 1'000'000);
  double mean = 0.0;
  for (const double d : draws) mean += d;
  mean /= double(draws.size());
  double ss = 0.0;
  for (const double d : draws) ss += (d - mean) * (d - mean);
  const double variance = ss / double(draws.size() - 1);
  c.expect(std::abs(variance - 0.1) <= 0.01, "sample variance " + fmt(variance, 6));
  return finish(c, std::to_string(trials) + " constructed inputs deduped exactly; variance of 10^6 draws " +
                       fmt(variance, 6));
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "logad_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  SyntheticRuns runs;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"gradient correctness", gradients},
      {"cell-equation fidelity", cell_fidelity},
      {"metrics oracle", metrics_oracle},
      {"split arithmetic", split_arithmetic},
      {"desk-scale learning", [&] { return desk_scale(work, runs); }},
      {"real-data smoke", [&] { return real_data(work); }},
      {"determinism", [&] { return determinism(work, runs); }},
      {"noise and dedupe", noise_and_dedupe},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {Verdict::fail, std::string("threw: ") + e.what()};
    }
    const char* tag = o.verdict == Verdict::pass ? "PASS" : o.verdict == Verdict::fail ? "FAIL" : "SKIPPED";
    failures += o.verdict == Verdict::fail;
    std::cout << "[" << tag << "] criterion " << i + 1 << " (" << criteria[i].first
              << "): " << o.detail << std::endl;
  }
  fs::remove_all(work);
  return failures == 0 ? 0 : 1;
}
