// Copyright 2026 The HeadTags Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_options.hpp"
#include "commands.hpp"

namespace {

using namespace headtags;
using namespace headtags::cli;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

std::optional<std::vector<std::size_t>> parse_k_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string item(utf8::trim(std::string_view(text).substr(start, comma - start)));
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    const unsigned long k = std::stoul(item);
    if (k < 1) return std::nullopt;
    out.push_back(k);
    start = comma + 1;
  }
  return out;
}

struct Output {
  std::optional<std::string> report_path;
  std::string format = "text";
};

void add_common(CLI::App* sub, Output& output) {
  sub->add_option("--config", "Config file of key = value lines");
  sub->add_option("--report", output.report_path, "Also write the JSON report to this file");
  sub->add_option("--format", output.format, "Standard output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

std::optional<std::string> getenv_string(const std::string& name) {
  const char* value = std::getenv(name.c_str());
  if (value == nullptr) return std::nullopt;
  return std::string(value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilingual headline and tag generation toolkit", "headtags"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  Output output;

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate a corpus and write its canonical form");
  ingest_cmd->add_option("--input", ingest.input, "Corpus file")->required();
  ingest_cmd->add_option("--output", ingest.output, "Canonical corpus file")->required();
  ingest_cmd->add_flag("--strict", ingest.strict, "Fail on the first invalid line");

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics, overall and per language");
  stats_cmd->add_option("--input", stats.input, "Corpus file")->required();
  stats_cmd->add_option("--vocab", stats.vocab, "Subword vocabulary for token counts");

  SplitOptions split;
  auto* split_cmd = app.add_subcommand("split", "Per-language train/val/test split");
  split_cmd->add_option("--input", split.input, "Corpus file")->required();
  split_cmd->add_option("--output-dir", split.output_dir, "Directory for train/val/test files")->required();
  split_cmd->add_option("--seed", split.seed, "Shuffle seed")->required();
  split_cmd->add_option("--train", split.ratios.train, "Train ratio")->capture_default_str();
  split_cmd->add_option("--val", split.ratios.val, "Validation ratio")->capture_default_str();
  split_cmd->add_option("--test", split.ratios.test, "Test ratio")->capture_default_str();

  RetrieveOptions retrieve;
  std::string modality = "caption";
  std::string mode = "retrieved+article";
  auto* retrieve_cmd = app.add_subcommand("retrieve", "Select article sentences closest to images or captions");
  retrieve_cmd->add_option("--input", retrieve.input, "Corpus file")->required();
  retrieve_cmd->add_option("--embeddings", retrieve.embeddings, "Precomputed embedding table");
  retrieve_cmd->add_option("--service-url", retrieve.service_url, "Embedding service base URL");
  retrieve_cmd->add_option("--image-dir", retrieve.image_dir, "Directory holding image files")
      ->capture_default_str();
  retrieve_cmd->add_option("--batch-limit", retrieve.batch_limit, "Items per service request")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  retrieve_cmd->add_option("--modality", modality, "Query modality")
      ->check(CLI::IsMember({"image", "caption"}))
      ->capture_default_str();
  retrieve_cmd->add_option("--k", retrieve.k, "Sentences to select")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  retrieve_cmd->add_option("--mode", mode, "Content composition")
      ->check(CLI::IsMember({"article", "retrieved", "retrieved+article"}))
      ->capture_default_str();
  retrieve_cmd->add_option("--output", retrieve.output, "Selected content file")->required();
  retrieve_cmd->add_flag("--strict", retrieve.strict, "Abort on a record that cannot be retrieved");

  PrepareOptions prepare;
  auto* prepare_cmd = app.add_subcommand("prepare", "Build the instruction dataset");
  prepare_cmd->add_option("--input", prepare.input, "Corpus file")->required();
  prepare_cmd->add_option("--content", prepare.content, "Selected content from retrieve");
  prepare_cmd->add_option("--fraction", prepare.fraction, "Share of controlled examples")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  prepare_cmd->add_option("--seed", prepare.seed, "Mixture seed")->required();
  prepare_cmd->add_option("--output", prepare.output, "Instruction dataset file")->required();

  EvalHeadlineOptions eval_headline;
  auto* eval_headline_cmd = app.add_subcommand("eval-headline", "ROUGE, BLEU and length ratio");
  eval_headline_cmd->add_option("--hyps", eval_headline.hyps, "Generated headlines, one per line")->required();
  eval_headline_cmd->add_option("--refs", eval_headline.refs, "Reference headlines, one per line")->required();
  eval_headline_cmd->add_option("--vocab", eval_headline.vocab, "Subword vocabulary")->required();
  eval_headline_cmd->add_flag("--parse-outputs", eval_headline.parse_outputs,
                              "Hypotheses are raw model outputs");

  EvalTagsOptions eval_tags;
  std::string k_list = "3,5";
  auto* eval_tags_cmd = app.add_subcommand("eval-tags", "F1@K, F1@M and F1@O");
  eval_tags_cmd->add_option("--preds", eval_tags.preds, "Predicted tag lists")->required();
  eval_tags_cmd->add_option("--golds", eval_tags.golds, "Gold tag lists")->required();
  eval_tags_cmd->add_option("--language", eval_tags.language, "Language code")->required();
  eval_tags_cmd->add_option("--k", k_list, "Comma-separated K values")
      ->check([](const std::string& s) { return parse_k_list(s) ? std::string() : "expected K values like 3,5"; })
      ->capture_default_str();
  eval_tags_cmd->add_flag("--parse-outputs", eval_tags.parse_outputs, "Predictions are raw model outputs");

  for (auto* sub : app.get_subcommands({})) add_common(sub, output);

  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> final_args = args;
  if (!args.empty()) {
    if (CLI::App* sub = app.get_subcommand_no_throw(args.front())) {
      const std::vector<std::string> rest(args.begin() + 1, args.end());
      std::set<std::string> names;
      for (const CLI::Option* opt : sub->get_options()) {
        for (const auto& name : opt->get_lnames()) {
          if (name != "help" && name != "config") names.insert(name);
        }
      }
      std::map<std::string, std::string> config;
      try {
        auto config_path = find_config_arg(rest);
        if (!config_path) config_path = getenv_string("HEADTAGS_CONFIG");
        if (config_path) config = parse_config(io::read_file(*config_path), *config_path);
      } catch (const Error& e) {
        std::cerr << "headtags: error: " << e.what() << '\n';
        return kExitUsage;
      }
      final_args = {args.front()};
      for (auto& a : layered_args(rest, names, config, getenv_string)) final_args.push_back(std::move(a));
    }
  }

  std::vector<char*> raw = {argv[0]};
  for (auto& a : final_args) raw.push_back(a.data());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  Log log(std::cerr);
  Report report;
  try {
    if (*ingest_cmd) {
      report = run_ingest(ingest, log);
    } else if (*stats_cmd) {
      report = run_stats(stats, Segmenter::load_default(), Stemmer::load_default());
    } else if (*split_cmd) {
      report = run_split(split);
    } else if (*retrieve_cmd) {
      retrieve.modality = modality == "image" ? Modality::kImage : Modality::kCaption;
      retrieve.mode = parse_content_mode(mode);
      report = run_retrieve(retrieve, Segmenter::load_default(), log);
    } else if (*prepare_cmd) {
      report = run_prepare(prepare, log);
    } else if (*eval_headline_cmd) {
      report = run_eval_headline(eval_headline);
    } else if (*eval_tags_cmd) {
      eval_tags.k_values = *parse_k_list(k_list);
      report = run_eval_tags(eval_tags, Stemmer::load_default());
    }
    if (output.report_path) io::write_file_atomic(*output.report_path, report.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "headtags: error: " << e.what() << '\n';
    return kExitError;
  }

  if (output.format == "json") {
    std::cout << report.dump(2) << '\n';
  } else {
    print_summary(report, std::cout);
  }
  return 0;
}
