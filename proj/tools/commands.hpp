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


// Subcommand implementations. Each returns a JSON report; the caller prints
// it or a text summary.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "headtags/embed_client.hpp"
#include "headtags/headtags.hpp"

namespace headtags::cli {

using Report = nlohmann::ordered_json;

class Log {
 public:
  explicit Log(std::ostream& out) : out_(&out) {}
  void warn(const std::string& message) { write("warning", message); }
  void info(const std::string& message) { write("info", message); }

 private:
  void write(const char* level, const std::string& message) {
    std::lock_guard lock(mutex_);
    *out_ << "headtags: " << level << ": " << message << '\n';
  }
  std::ostream* out_;
  std::mutex mutex_;
};

inline Report metric_json(const MetricReport& metrics) {
  Report out = Report::object();
  for (const auto& [key, value] : metrics) out[key] = value;
  return out;
}

inline std::string format_number(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

/// Flattened `key: value` lines for the human-readable summary.
inline void print_summary(const Report& report, std::ostream& out, const std::string& prefix = "") {
  for (const auto& [key, value] : report.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      print_summary(value, out, name);
    } else if (value.is_array()) {
      out << name << ": " << value.size() << " item(s)\n";
    } else if (value.is_number_float()) {
      out << name << ": " << format_number(value.get<double>()) << '\n';
    } else if (value.is_string()) {
      out << name << ": " << value.get<std::string>() << '\n';
    } else {
      out << name << ": " << value.dump() << '\n';
    }
  }
}

// ---- ingest ----------------------------------------------------------------

struct IngestOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  bool strict = false;
};

inline Report run_ingest(const IngestOptions& opt, Log& log) {
  const auto loaded = load_corpus_lenient(opt.input);
  if (opt.strict && !loaded.rejects.empty()) {
    const auto& first = loaded.rejects.front();
    throw Error(first.code, first.detail, first.line);
  }
  if (loaded.records.empty() && loaded.rejects.empty()) log.warn(opt.input.string() + " holds no records");
  for (const auto& r : loaded.rejects) log.warn("rejected " + r.message);
  write_corpus(opt.output, loaded.records);
  Report report;
  report["command"] = "ingest";
  report["input"] = opt.input.string();
  report["output"] = opt.output.string();
  report["kept"] = loaded.records.size();
  report["rejected"] = loaded.rejects.size();
  Report rejects = Report::array();
  for (const auto& r : loaded.rejects) {
    rejects.push_back({{"line", r.line}, {"code", errc_name(r.code)}, {"detail", r.detail}});
  }
  report["rejects"] = rejects;
  return report;
}

// ---- stats -----------------------------------------------------------------

struct StatsOptions {
  std::filesystem::path input;
  std::optional<std::filesystem::path> vocab;
};

inline Report stats_json(const CorpusStats& s) {
  Report out;
  out["n_samples"] = s.n_samples;
  out["avg_words"] = s.avg_words;
  out["avg_sentences"] = s.avg_sentences;
  out["avg_headline_words"] = s.avg_headline_words;
  Report novel;
  for (std::size_t n = 1; n <= kMaxNovelOrder; ++n) novel[std::to_string(n)] = s.novel_ngram_pct[n - 1];
  out["novel_ngram_pct"] = novel;
  out["compression_ratio_pct"] = s.compression_ratio_pct;
  out["avg_image_caption_pairs"] = s.avg_image_caption_pairs;
  out["avg_tags"] = s.avg_tags;
  out["present_tag_pct"] = s.present_tag_pct;
  if (s.avg_subword_tokens) out["avg_subword_tokens"] = *s.avg_subword_tokens;
  return out;
}

inline Report run_stats(const StatsOptions& opt, const Segmenter& segmenter, const Stemmer& stemmer) {
  const auto records = load_corpus(opt.input);
  std::optional<SubwordVocab> vocab;
  if (opt.vocab) vocab = SubwordVocab::load(*opt.vocab);
  const auto stats = compute_stats(records, segmenter, stemmer, vocab ? &*vocab : nullptr);
  Report report;
  report["command"] = "stats";
  report["summary"] = stats_json(stats.summary);
  Report by_language;
  for (const auto& [code, row] : stats.by_language) by_language[code] = stats_json(row);
  report["by_language"] = by_language;
  return report;
}

// ---- split -----------------------------------------------------------------

struct SplitOptions {
  std::filesystem::path input;
  std::filesystem::path output_dir;
  std::uint64_t seed = 0;
  SplitRatios ratios;
};

inline Report run_split(const SplitOptions& opt) {
  check_ratios(opt.ratios);
  const auto records = load_corpus(opt.input);
  const auto split = split_corpus(records, opt.ratios, opt.seed);
  std::filesystem::create_directories(opt.output_dir);
  Report report;
  report["command"] = "split";
  report["seed"] = opt.seed;
  report["total"] = records.size();
  Report by_language;
  for (const auto& [name, part] : {std::pair{"train", &split.train}, std::pair{"val", &split.val},
                                   std::pair{"test", &split.test}}) {
    write_corpus(opt.output_dir / (std::string(name) + ".jsonl"), *part);
    report[name] = part->size();
    for (const auto& r : *part) {
      auto& row = by_language[r.language];
      if (row.is_null()) row = {{"train", 0}, {"val", 0}, {"test", 0}};
      row[name] = row[name].get<std::size_t>() + 1;
    }
  }
  report["by_language"] = by_language;
  return report;
}

// ---- retrieve --------------------------------------------------------------

struct RetrieveOptions {
  std::filesystem::path input;
  std::optional<std::filesystem::path> embeddings;
  std::optional<std::string> service_url;
  std::filesystem::path image_dir = ".";
  std::size_t batch_limit = 64;
  Modality modality = Modality::kCaption;
  std::size_t k = 5;
  ContentMode mode = ContentMode::kRetrievedPlusArticle;
  std::filesystem::path output;
  bool strict = false;
};

inline std::unique_ptr<EmbeddingProvider> make_provider(const RetrieveOptions& opt) {
  if (opt.embeddings.has_value() == opt.service_url.has_value()) {
    throw Error(Errc::kInvalidArgument, "give exactly one of --embeddings and --service-url");
  }
  if (opt.embeddings) return std::make_unique<EmbeddingTable>(EmbeddingTable::load(*opt.embeddings));
  EmbedClientOptions client;
  client.batch_limit = opt.batch_limit;
  client.image_dir = opt.image_dir;
  return std::make_unique<HttpEmbeddingProvider>(*opt.service_url, client);
}

inline Report run_retrieve(const RetrieveOptions& opt, const Segmenter& segmenter, Log& log) {
  if (opt.k < 1) throw Error(Errc::kInvalidArgument, "k must be >= 1");
  const auto records = load_corpus(opt.input);
  auto provider = make_provider(opt);
  std::string out;
  std::size_t missing = 0, no_queries = 0;
  for (const auto& record : records) {
    RetrievalResult result;
    try {
      result = retrieve(record, opt.modality, opt.k, *provider, segmenter);
    } catch (const Error& e) {
      const bool no_query = e.code() == Errc::kNoImages || e.code() == Errc::kNoCaptions;
      if (opt.strict || !(no_query || e.code() == Errc::kProviderError)) throw;
      (no_query ? no_queries : missing) += 1;
      log.warn("skipping " + record.id + ": " + e.what());
      continue;
    }
    nlohmann::ordered_json row;
    row["id"] = record.id;
    row["modality"] = opt.modality == Modality::kImage ? "image" : "caption";
    row["k"] = opt.k;
    row["mode"] = content_mode_name(opt.mode);
    row["indices"] = result.selection.indices;
    row["scores"] = result.selection.scores;
    row["sentences"] = result.sentences;
    row["content"] = build_selected_content(&result.sentences, record, opt.mode);
    out += row.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
  }
  io::write_file_atomic(opt.output, out);
  Report report;
  report["command"] = "retrieve";
  report["records"] = records.size();
  report["written"] = records.size() - missing - no_queries;
  report["skipped_missing_embedding"] = missing;
  report["skipped_no_queries"] = no_queries;
  report["output"] = opt.output.string();
  return report;
}

// ---- prepare ---------------------------------------------------------------

struct PrepareOptions {
  std::filesystem::path input;
  std::optional<std::filesystem::path> content;
  double fraction = 0.7;
  std::uint64_t seed = 0;
  std::filesystem::path output;
};

/// id -> content from a retrieve output file.
inline std::map<std::string, std::string> load_content(const std::filesystem::path& path) {
  std::map<std::string, std::string> out;
  const auto lines = io::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (utf8::trim(lines[i]).empty()) continue;
    try {
      const auto row = nlohmann::json::parse(lines[i]);
      out[row.at("id").get<std::string>()] = row.at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kMalformedLine, path.string() + ": " + e.what(), i + 1);
    }
  }
  return out;
}

inline Report run_prepare(const PrepareOptions& opt, Log& log) {
  auto records = load_corpus(opt.input);
  std::size_t without_content = 0;
  std::map<std::string, std::string> content;
  if (opt.content) {
    content = load_content(*opt.content);
    std::erase_if(records, [&](const ArticleRecord& r) {
      if (content.count(r.id)) return false;
      ++without_content;
      return true;
    });
    if (without_content) log.warn(std::to_string(without_content) + " record(s) have no selected content");
  }
  const auto modes = mixture_assign(records, opt.fraction, opt.seed);
  std::string out;
  std::size_t controlled = 0;
  Report rejected = Report::array();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    try {
      const auto example = build_example(r, opt.content ? content.at(r.id) : r.body, modes[i]);
      out += to_json_line(example) + "\n";
      controlled += modes[i].is_controlled();
    } catch (const Error& e) {
      log.warn("rejected " + r.id + ": " + e.what());
      rejected.push_back({{"id", r.id}, {"code", errc_name(e.code())}, {"detail", e.detail()}});
    }
  }
  io::write_file_atomic(opt.output, out);
  Report report;
  report["command"] = "prepare";
  report["seed"] = opt.seed;
  report["fraction"] = opt.fraction;
  report["examples"] = records.size() - rejected.size();
  report["controlled"] = controlled;
  report["unrestricted"] = records.size() - rejected.size() - controlled;
  report["skipped_no_content"] = without_content;
  report["rejected"] = rejected;
  report["output"] = opt.output.string();
  return report;
}

// ---- eval-headline ---------------------------------------------------------

struct EvalHeadlineOptions {
  std::filesystem::path hyps;
  std::filesystem::path refs;
  std::filesystem::path vocab;
  bool parse_outputs = false;
};

/// Lines of a text file; a final empty line left by a trailing newline is dropped.
inline std::vector<std::string> read_text_lines(const std::filesystem::path& path) {
  auto lines = io::read_lines(path);
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline Report run_eval_headline(const EvalHeadlineOptions& opt) {
  auto hyps = read_text_lines(opt.hyps);
  const auto refs = read_text_lines(opt.refs);
  if (opt.parse_outputs) {
    for (auto& h : hyps) h = parse_output(h, false).headline;
  }
  const auto vocab = SubwordVocab::load(opt.vocab);
  Report report;
  report["command"] = "eval-headline";
  report["metrics"] = metric_json(evaluate_headlines(hyps, refs, vocab));
  return report;
}

// ---- eval-tags -------------------------------------------------------------

struct EvalTagsOptions {
  std::filesystem::path preds;
  std::filesystem::path golds;
  std::string language;
  std::vector<std::size_t> k_values{3, 5};
  bool parse_outputs = false;
};

/// One tag list per line: a JSON array of strings, an object with a "tags"
/// array, or (with `parse_outputs`) raw model output text.
inline std::vector<std::vector<std::string>> read_tag_lists(const std::filesystem::path& path,
                                                            bool parse_outputs) {
  std::vector<std::vector<std::string>> out;
  const auto lines = read_text_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (parse_outputs) {
      out.push_back(parse_output(lines[i], false).tags);
      continue;
    }
    try {
      const auto row = nlohmann::json::parse(lines[i]);
      const auto& tags = row.is_object() ? row.at("tags") : row;
      out.push_back(tags.get<std::vector<std::string>>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kMalformedLine, path.string() + ": " + e.what(), i + 1);
    }
  }
  return out;
}

inline Report run_eval_tags(const EvalTagsOptions& opt, const Stemmer& stemmer) {
  const auto preds = read_tag_lists(opt.preds, opt.parse_outputs);
  const auto golds = read_tag_lists(opt.golds, false);
  if (preds.size() != golds.size()) {
    throw Error(Errc::kLengthMismatch, std::to_string(preds.size()) + " vs " + std::to_string(golds.size()));
  }
  const TagScorer scorer(stemmer, {opt.language, opt.k_values, true});
  std::vector<TagScores> rows;
  for (std::size_t i = 0; i < preds.size(); ++i) rows.push_back(score_tags(scorer, preds[i], golds[i]));
  Report report;
  report["command"] = "eval-tags";
  report["language"] = opt.language;
  report["metrics"] = metric_json(tag_report(rows));
  return report;
}

}  // namespace headtags::cli
