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


// Acceptance runner: one PASS/FAIL line per criterion.
//
//   headtags_acceptance                 run every criterion
//   headtags_acceptance --criterion=N   run criterion N only
//
// Exit status is 0 iff every selected criterion passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "headtags/headtags.hpp"
#include "retrieval_fixture.hpp"
#include "test_support.hpp"

namespace headtags::acceptance {
namespace {

using Tokens = std::vector<std::string>;
using Clock = std::chrono::steady_clock;

constexpr double kBleuTolerance = 1e-4;
constexpr double kExactTolerance = 1e-12;
constexpr double kMetricsTimeLimitSec = 10.0;
constexpr double kRetrievalTimeLimitSec = 5.0;
constexpr double kSplitTotalsTolerance = 0.001;  // relative
constexpr std::size_t kMetricPairs = 500;
constexpr std::size_t kRetrievalRecords = 100;
constexpr std::size_t kScaleTrials = 1000;
constexpr std::size_t kRoundTripPairs = 1000;
constexpr std::size_t kReferenceTrain = 394353;
constexpr std::size_t kReferenceVal = 5187;
constexpr std::size_t kReferenceTest = 15577;
constexpr std::size_t kReferenceTotal = 415117;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

// ---- independent metric oracles ------------------------------------------

std::size_t multiset_overlap(const Tokens& a, const Tokens& b, std::size_t n) {
  std::map<Tokens, long> counts;
  for (std::size_t i = 0; i + n <= a.size(); ++i) ++counts[Tokens(a.begin() + i, a.begin() + i + n)];
  std::size_t overlap = 0;
  for (std::size_t i = 0; i + n <= b.size(); ++i) {
    auto it = counts.find(Tokens(b.begin() + i, b.begin() + i + n));
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return overlap;
}

std::size_t full_table_lcs(const Tokens& a, const Tokens& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t[a.size()][b.size()];
}

PRF oracle_prf(std::size_t hit, std::size_t hyp_total, std::size_t ref_total) {
  if (hit == 0 || hyp_total == 0 || ref_total == 0) return {};
  const double p = static_cast<double>(hit) / static_cast<double>(hyp_total);
  const double r = static_cast<double>(hit) / static_cast<double>(ref_total);
  return {p, r, 2 * p * r / (p + r)};
}

bool same_prf(const PRF& a, const PRF& b) {
  return a.precision == b.precision && a.recall == b.recall && a.f1 == b.f1;
}

Outcome metric_oracles() {
  Outcome out;
  std::ifstream in(testing::data_path("acceptance_metrics.jsonl"));
  std::vector<Tokens> hyps, refs;
  std::vector<std::pair<nlohmann::json, double>> blocks;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto row = nlohmann::json::parse(line);
    if (row.contains("hyp")) {
      hyps.push_back(row["hyp"].get<Tokens>());
      refs.push_back(row["ref"].get<Tokens>());
    } else {
      blocks.emplace_back(row["block"], row["bleu"].get<double>());
    }
  }
  out.require(hyps.size() == kMetricPairs, fmt("expected %zu pairs, read %zu", kMetricPairs, hyps.size()));

  const auto start = Clock::now();
  std::size_t rouge_mismatch = 0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const auto& h = hyps[i];
    const auto& r = refs[i];
    for (std::size_t n : {1, 2}) {
      const std::size_t ht = h.size() >= n ? h.size() - n + 1 : 0;
      const std::size_t rt = r.size() >= n ? r.size() - n + 1 : 0;
      if (!same_prf(rouge_n(h, r, n), oracle_prf(multiset_overlap(h, r, n), ht, rt))) ++rouge_mismatch;
    }
    if (!same_prf(rouge_l(h, r), oracle_prf(full_table_lcs(h, r), h.size(), r.size()))) ++rouge_mismatch;
  }
  double worst_bleu = 0.0;
  for (const auto& [block, expected] : blocks) {
    double got;
    if (block == "all") {
      got = corpus_bleu(hyps, refs);
    } else {
      const std::size_t b = block.get<std::size_t>();
      got = corpus_bleu(std::vector<Tokens>(hyps.begin() + b * 10, hyps.begin() + (b + 1) * 10),
                        std::vector<Tokens>(refs.begin() + b * 10, refs.begin() + (b + 1) * 10));
    }
    worst_bleu = std::max(worst_bleu, std::abs(got - expected));
  }
  const double elapsed = seconds_since(start);
  out.require(rouge_mismatch == 0, fmt("%zu ROUGE mismatches", rouge_mismatch));
  out.require(blocks.size() == 51, "expected 51 BLEU corpora");
  out.require(worst_bleu <= kBleuTolerance, fmt("BLEU deviation %.3g > %.0e", worst_bleu, kBleuTolerance));
  out.require(elapsed < kMetricsTimeLimitSec, fmt("took %.2f s", elapsed));
  if (out.pass) {
    out.detail = fmt("%zu pairs, ROUGE-1/2/L exact, %zu BLEU corpora max |diff| %.2g, %.3f s", hyps.size(),
                     blocks.size(), worst_bleu, elapsed);
  }
  return out;
}

// ---- tag metric fixture ----------------------------------------------------

Outcome tag_fixture() {
  Outcome out;
  const TagScorer scorer(testing::shared_stemmer(), {"en", {3}, true});
  const Tokens pred = {"a", "b", "c"}, gold = {"b", "c", "d"};
  const auto scores = score_tags(scorer, pred, gold);
  const auto report = tag_report(std::vector<TagScores>{scores});
  const double two_thirds = 2.0 / 3.0;
  double worst = 0.0;
  for (const char* label : {"f1@3", "f1@M", "f1@O"}) {
    for (const char* part : {".precision", ".recall", ".f1"}) {
      worst = std::max(worst, std::abs(report.at(std::string(label) + part) - two_thirds));
    }
  }
  out.require(worst <= kExactTolerance, fmt("max deviation %.3g", worst));
  if (out.pass) out.detail = fmt("P=R=F1=2/3 for F1@3, F1@M, F1@O (max deviation %.1g)", worst);
  return out;
}

// ---- retrieval -------------------------------------------------------------

Outcome retrieval_oracle() {
  Outcome out;
  const auto& segmenter = testing::shared_segmenter();
  std::mt19937_64 rng(600);
  std::vector<testing::RetrievalCase> cases;
  EmbeddingTable table(kDefaultEmbeddingDim);
  for (std::size_t r = 0; r < kRetrievalRecords; ++r) {
    cases.push_back(testing::make_retrieval_case(rng, r, kDefaultEmbeddingDim));
    testing::add_to_table(cases.back(), table);
  }
  const auto start = Clock::now();
  std::size_t checks = 0, mismatches = 0, disorder = 0, clamp_failures = 0;
  for (const auto& c : cases) {
    for (std::size_t k : {5, 10, 15}) {
      for (Modality m : {Modality::kImage, Modality::kCaption}) {
        const auto got = retrieve(c.record, m, k, table, segmenter);
        const auto& queries = m == Modality::kImage ? c.image_vecs : c.caption_vecs;
        const auto want = testing::brute_force_selection(c.sentence_vecs, queries, k);
        ++checks;
        if (got.selection.indices != want) ++mismatches;
        for (std::size_t i = 0; i < got.sentences.size(); ++i) {
          if (i >= want.size() || got.sentences[i] != c.sentences[want[i]]) {
            ++disorder;
            break;
          }
        }
        if (k >= c.sentences.size() && got.sentences != c.sentences) ++clamp_failures;
      }
    }
  }
  const double elapsed = seconds_since(start);
  out.require(mismatches == 0, fmt("%zu selection mismatches", mismatches));
  out.require(disorder == 0, fmt("%zu outputs out of document order", disorder));
  out.require(clamp_failures == 0, fmt("%zu K >= n' cases not returning all sentences", clamp_failures));
  out.require(elapsed < kRetrievalTimeLimitSec, fmt("took %.2f s", elapsed));
  if (out.pass) {
    out.detail = fmt("%zu records x K{5,10,15} x {image,caption} = %zu selections equal brute force, %.3f s",
                     cases.size(), checks, elapsed);
  }
  return out;
}

Outcome scale_invariance() {
  Outcome out;
  std::mt19937_64 rng(601);
  std::uniform_real_distribution<double> log_factor(-6.0, 6.0);
  std::size_t violations = 0;
  for (std::size_t trial = 0; trial < kScaleTrials; ++trial) {
    const std::size_t n = 3 + rng() % 38, m = 1 + rng() % 4, dim = 4 + rng() % 60;
    std::vector<EmbeddingVector> sentences, queries, scaled;
    for (std::size_t i = 0; i < n; ++i) sentences.emplace_back(testing::random_vector(rng, dim));
    for (std::size_t j = 0; j < m; ++j) {
      queries.emplace_back(testing::random_vector(rng, dim));
      scaled.push_back(queries.back().scaled(std::pow(10.0, log_factor(rng))));
    }
    const std::size_t k = 1 + rng() % n;
    if (select_top_k(aggregate_scores(sentences, queries), k).indices !=
        select_top_k(aggregate_scores(sentences, scaled), k).indices) {
      ++violations;
    }
  }
  out.require(violations == 0, fmt("%zu of %zu trials changed selection", violations, kScaleTrials));
  if (out.pass) out.detail = fmt("%zu trials, 0 violations", kScaleTrials);
  return out;
}

// ---- split and mixture -----------------------------------------------------

Outcome split_and_mixture() {
  Outcome out;
  const SplitRatios ratios;

  // Exact partition with per-language floor sizes on random corpora.
  std::mt19937_64 rng(602);
  std::size_t partition_failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ArticleRecord> records;
    std::map<std::string, std::size_t> counts;
    for (auto code : kSupportedLanguages) {
      const std::size_t n = rng() % 300;
      counts[std::string(code)] = n;
      for (std::size_t i = 0; i < n; ++i) {
        records.push_back({std::string(code) + std::to_string(i), std::string(code), "H", "B", {}, {}, {"t"}});
      }
    }
    const auto split = split_corpus(records, ratios, trial);
    std::multiset<std::string> seen;
    for (const auto* part : {&split.train, &split.val, &split.test}) {
      for (const auto& r : *part) seen.insert(r.id);
    }
    std::multiset<std::string> expected;
    for (const auto& r : records) expected.insert(r.id);
    std::size_t val = 0, test = 0;
    for (const auto& [code, n] : counts) {
      val += static_cast<std::size_t>(std::floor(ratios.val * static_cast<double>(n) + 1e-9));
      test += static_cast<std::size_t>(std::floor(ratios.test * static_cast<double>(n) + 1e-9));
    }
    if (seen != expected || split.val.size() != val || split.test.size() != test) ++partition_failures;
  }
  out.require(partition_failures == 0, fmt("%zu non-partition splits", partition_failures));

  // Totals on a corpus with the published per-language counts.
  std::vector<ArticleRecord> corpus;
  corpus.reserve(kReferenceTotal);
  for (const auto& [code, n] : testing::kReferenceLanguageCounts) {
    for (std::size_t i = 0; i < n; ++i) corpus.push_back({std::to_string(i), code, "H", "B", {}, {}, {"t"}});
  }
  const auto split = split_corpus(corpus, ratios, 2024);
  auto rel = [](std::size_t got, std::size_t want) {
    return (static_cast<double>(got) - static_cast<double>(want)) / static_cast<double>(want);
  };
  const double d_train = rel(split.train.size(), kReferenceTrain);
  const double d_val = rel(split.val.size(), kReferenceVal);
  const double d_test = rel(split.test.size(), kReferenceTest);
  const std::string totals = fmt("totals %zu/%zu/%zu of %zu vs 394353/5187/15577 (%+.3f%%/%+.2f%%/%+.2f%%)",
                                 split.train.size(), split.val.size(), split.test.size(), corpus.size(),
                                 100 * d_train, 100 * d_val, 100 * d_test);
  const bool totals_ok = corpus.size() == kReferenceTotal && std::abs(d_train) <= kSplitTotalsTolerance &&
                         std::abs(d_val) <= kSplitTotalsTolerance && std::abs(d_test) <= kSplitTotalsTolerance;
  out.require(totals_ok, totals + " exceeds +/-0.1%");

  // Mixture counts and determinism.
  std::size_t mixture_failures = 0;
  for (std::size_t n : {0, 1, 2, 3, 5, 10, 15, 99, 100, 101, 1001, 4999}) {
    std::vector<ArticleRecord> records(n, ArticleRecord{"r", "en", "H", "B", {}, {}, {"a", "b"}});
    const auto a = mixture_assign(records, 0.7, 17);
    std::size_t controlled = 0;
    for (const auto& m : a) controlled += m.is_controlled();
    const std::size_t want = (7 * n) / 10 + ((7 * n) % 10 >= 5 ? 1 : 0);
    if (controlled != want || a != mixture_assign(records, 0.7, 17)) ++mixture_failures;
  }
  out.require(mixture_failures == 0, fmt("%zu mixture failures", mixture_failures));
  if (out.pass) out.detail = "50 random partitions exact; " + totals + "; mixture exact and deterministic";
  return out;
}

// ---- instruction round trip ------------------------------------------------

Outcome instruction_round_trip() {
  Outcome out;
  out.require(build_input("X", GenerationMode::unrestricted()) == "Generate Headline and Tag Words: X.",
              "unrestricted template");
  out.require(build_input("X", GenerationMode::controlled(3)) == "Generate Headline and Three Tag Words: X.",
              "controlled template");
  out.require(build_target("H", {"a", "b"}) == "Headline is: H. Tag words are: a, b.", "target template");

  const Tokens words = {"Storm", "hits", "coast", "शहर", "में", "बारिश", "经济", "增长", "السوق", "día",
                        "U.S.", "3.5%", "why?", "e-mail", "Ölpreis", "новости", "headline", "tag"};
  std::mt19937_64 rng(603);
  auto phrase = [&](std::size_t max_words) {
    std::string s;
    for (std::size_t i = 0, n = 1 + rng() % max_words; i < n; ++i) s += (i ? " " : "") + words[rng() % words.size()];
    return s;
  };
  std::size_t failures = 0;
  for (std::size_t trial = 0; trial < kRoundTripPairs; ++trial) {
    std::string headline = phrase(14);
    if (rng() % 3 == 0) headline += ".";
    Tokens tags(1 + rng() % 7);
    for (auto& t : tags) t = phrase(3);
    const auto parsed = parse_output(build_target(headline, tags), true);
    if (parsed.headline != headline || parsed.tags != tags) ++failures;
  }
  out.require(failures == 0, fmt("%zu of %zu round trips differ", failures, kRoundTripPairs));
  if (out.pass) out.detail = fmt("templates byte-exact; %zu round trips identical", kRoundTripPairs);
  return out;
}

// ---- stemmer ---------------------------------------------------------------

Outcome stemmer_vectors() {
  Outcome out;
  const auto& stemmer = testing::shared_stemmer();
  std::size_t rows = 0, wrong = 0;
  for (const auto& row : testing::read_tsv(testing::data_path("english_stem_vectors.txt"))) {
    ++rows;
    if (stemmer.stem(row.at(0), "en") != row.at(1)) ++wrong;
  }
  out.require(rows == 200, fmt("expected 200 vectors, read %zu", rows));
  out.require(wrong == 0, fmt("%zu of %zu English stems differ", wrong, rows));
  for (const auto& [token, code] : std::vector<std::pair<std::string, std::string>>{
           {"中国经济", "zh"}, {"发展", "zh"}, {"ప్రభుత్వాలు", "te"}, {"వార్తలు", "te"}}) {
    out.require(stemmer.stem(token, code) == token, code + " token not passed through");
  }
  if (out.pass) out.detail = fmt("%zu/%zu English vectors agree; zh and te pass through", rows - wrong, rows);
  return out;
}

// ---- baselines -------------------------------------------------------------

Outcome baseline_dominance() {
  Outcome out;
  const auto& segmenter = testing::shared_segmenter();
  const auto vocab = SubwordVocab::load(testing::data_path("fixture_vocab.txt"));
  auto mean_scores = [&](const std::vector<ArticleRecord>& records, std::size_t& per_record_violations) {
    double oracle = 0.0, lead = 0.0;
    for (const auto& r : records) {
      const auto ref = subword_tokenize(r.headline, vocab);
      const double o = ext_oracle_pick(r, segmenter, vocab).rouge2_f1;
      const double l = rouge_n(subword_tokenize(lead_1(r, segmenter), vocab), ref, 2).f1;
      if (o < l) ++per_record_violations;
      oracle += o;
      lead += l;
    }
    return std::pair{oracle / static_cast<double>(records.size()), lead / static_cast<double>(records.size())};
  };

  const auto fixture = load_corpus(testing::data_path("fixture_corpus.jsonl"));
  std::size_t violations = 0;
  const auto [fixture_oracle, fixture_lead] = mean_scores(fixture, violations);

  std::vector<std::string> pool;
  for (const auto& r : fixture) {
    for (auto w : utf8::split_whitespace(r.body)) pool.emplace_back(utf8::strip_punct(w));
  }
  std::mt19937_64 rng(604);
  std::vector<ArticleRecord> random_corpus;
  for (int i = 0; i < 300; ++i) {
    ArticleRecord r{"g" + std::to_string(i), "en", "", "", {}, {}, {"t"}};
    std::vector<std::string> body_words;
    for (std::size_t s = 0, n = 1 + rng() % 10; s < n; ++s) {
      if (s) r.body += ' ';
      for (std::size_t w = 0, len = 3 + rng() % 12; w < len; ++w) {
        body_words.push_back(pool[rng() % pool.size()]);
        r.body += (w ? " " : "") + body_words.back();
      }
      r.body += '.';
    }
    // Headlines mix a copied body span with random words.
    const std::size_t from = rng() % body_words.size();
    const std::size_t span = std::min<std::size_t>(1 + rng() % 5, body_words.size() - from);
    for (std::size_t w = 0; w < span; ++w) r.headline += (w ? " " : "") + body_words[from + w];
    for (std::size_t w = 0, n = rng() % 4; w < n; ++w) r.headline += " " + pool[rng() % pool.size()];
    random_corpus.push_back(std::move(r));
  }
  const auto [random_oracle, random_lead] = mean_scores(random_corpus, violations);

  out.require(violations == 0, fmt("%zu records where the oracle pick scores below LEAD-1", violations));
  out.require(fixture_oracle > fixture_lead, fmt("fixture %.4f not > %.4f", fixture_oracle, fixture_lead));
  out.require(random_oracle >= random_lead, fmt("random corpus %.4f < %.4f", random_oracle, random_lead));
  if (out.pass) {
    out.detail = fmt("fixture mean ROUGE-2 F1 %.4f > %.4f; random corpus %.4f >= %.4f; no per-record violations",
                     fixture_oracle, fixture_lead, random_oracle, random_lead);
  }
  return out;
}

// ---- compression -----------------------------------------------------------

Outcome compression_fixture() {
  Outcome out;
  std::string headline, body;
  for (int i = 0; i < 10; ++i) headline += (i ? " h" : "h") + std::to_string(i);
  for (int i = 0; i < 100; ++i) body += (i ? " b" : "b") + std::to_string(i);
  const std::vector<ArticleRecord> records = {{"c", "en", headline, body, {}, {}, {"t"}}};
  const auto stats = compute_stats(records, testing::shared_segmenter(), testing::shared_stemmer());
  out.require(stats.summary.compression_ratio_pct == 90.0,
              fmt("compression %.17g != 90.0", stats.summary.compression_ratio_pct));
  if (out.pass) out.detail = "10-word headline over 100-word body gives exactly 90.0";
  return out;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "metric-oracle-equivalence", metric_oracles},
      {2, "tag-f1-fixture", tag_fixture},
      {3, "retrieval-end-to-end-oracle", retrieval_oracle},
      {4, "retrieval-scale-invariance", scale_invariance},
      {5, "split-and-mixture", split_and_mixture},
      {6, "instruction-round-trip", instruction_round_trip},
      {7, "stemmer-vectors", stemmer_vectors},
      {8, "baseline-dominance", baseline_dominance},
      {9, "compression-fixture", compression_fixture},
  };
  return all;
}

}  // namespace
}  // namespace headtags::acceptance

int main(int argc, char** argv) {
  using namespace headtags::acceptance;
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--criterion=", 0) == 0) {
      selected.insert(std::atoi(arg.c_str() + 12));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion=N]...\n", argv[0]);
      return 2;
    }
  }
  bool all_pass = true;
  int ran = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    ++ran;
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    all_pass &= outcome.pass;
    std::printf("%s  [%d] %s: %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name, outcome.detail.c_str());
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion selected\n");
    return 2;
  }
  return all_pass ? 0 : 1;
}
