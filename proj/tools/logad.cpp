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


#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "logad/pipeline.hpp"
#include "logad/synthetic.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::string dataset;
  std::string arch;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string input;
  std::string label_file;
  bool force = false;
};

void add_common(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  cmd.add_option("--dataset", f.dataset, "bgl | thunderbird | openstack | imdb | generic")
      ->check(CLI::IsMember({"bgl", "thunderbird", "openstack", "imdb", "generic"}));
  cmd.add_option("--arch", f.arch, "lstm | blstm | gru")
      ->check(CLI::IsMember({"lstm", "blstm", "gru"}));
  cmd.add_option("--seed", f.seed, "random seed (required here or in the config)");
  cmd.add_option("--out", f.out, "output directory");
  cmd.add_option("--input", f.input, "corpus file, or the review root for imdb");
  cmd.add_option("--label-file", f.label_file, "label sidecar for openstack and generic");
  cmd.add_flag("--force", f.force, "rerun and overwrite outputs from other configurations");
}

logad::RunConfig resolve(const CommonFlags& f) {
  logad::RunConfig config = f.config.empty() ? logad::RunConfig{} : logad::load_run_config(f.config);
  if (!f.dataset.empty()) config.dataset = logad::dataset_kind_from_string(f.dataset);
  if (!f.arch.empty()) config.arch = logad::arch_from_string(f.arch);
  if (f.seed) config.seed = *f.seed;
  if (!f.out.empty()) config.out = f.out;
  if (!f.input.empty()) config.input = f.input;
  if (!f.label_file.empty()) config.label_file = f.label_file;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logad: autoencoder-assisted recurrent log anomaly detection"};
  app.require_subcommand(1);

  CommonFlags flags;
  using Stage = logad::StageOutcome (*)(const logad::RunConfig&, bool, std::ostream&);
  struct Entry {
    const char* name;
    const char* help;
    Stage stage;
  };
  const Entry entries[] = {
      {"preprocess", "tokenize, filter and encode the corpus", &logad::cmd_preprocess},
      {"train-ae", "train the positive and negative autoencoders", &logad::cmd_train_ae},
      {"assemble", "extract features, dedupe, add noise and split", &logad::cmd_assemble},
      {"train-eval", "cross-validate the classifier and score the test split",
       &logad::cmd_train_eval},
  };
  std::optional<Stage> chosen;
  bool run_all = false;
  for (const Entry& e : entries) {
    CLI::App* cmd = app.add_subcommand(e.name, e.help);
    add_common(*cmd, flags);
    cmd->callback([&chosen, stage = e.stage] { chosen = stage; });
  }
  CLI::App* all = app.add_subcommand("run-all", "run every stage in order");
  add_common(*all, flags);
  all->callback([&run_all] { run_all = true; });

  logad::SyntheticCorpusOptions synth;
  std::string synth_out;
  std::string synth_format = "generic";
  bool synth_run = false;
  CLI::App* synth_cmd = app.add_subcommand("synth", "write a two-class synthetic corpus");
  synth_cmd->add_option("--out", synth_out, "corpus path")->required();
  synth_cmd->add_option("--messages", synth.messages, "number of messages");
  synth_cmd->add_option("--anomaly-fraction", synth.anomaly_fraction, "fraction labelled 0");
  synth_cmd->add_option("--vocab-per-class", synth.vocab_per_class, "tokens per class");
  synth_cmd->add_option("--min-tokens", synth.min_tokens, "shortest message");
  synth_cmd->add_option("--max-tokens", synth.max_tokens, "longest message");
  synth_cmd->add_option("--seed", synth.seed, "random seed")->required();
  synth_cmd->add_option("--format", synth_format, "generic | bgl")
      ->check(CLI::IsMember({"generic", "bgl"}));
  synth_cmd->callback([&synth_run] { synth_run = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (synth_run) {
      synth.format =
          synth_format == "bgl" ? logad::SyntheticFormat::bgl : logad::SyntheticFormat::generic;
      const auto stats = logad::write_separable_corpus(synth_out, synth);
      std::cout << "synth: wrote " << synth_out << " (" << stats.normal << " normal, "
                << stats.anomalous << " anomalous)\n";
      return 0;
    }
    const logad::RunConfig config = resolve(flags);
    if (run_all) {
      logad::cmd_run_all(config, flags.force, std::cout);
    } else if (chosen) {
      (*chosen)(config, flags.force, std::cout);
    }
  } catch (const std::exception& e) {
    std::cout.flush();
    std::cerr << "logad: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
