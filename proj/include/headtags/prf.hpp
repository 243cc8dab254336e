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

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "headtags/error.hpp"

namespace headtags {

/// Named metric values, e.g. {"rouge1": 0.41, "bleu": 0.12}.
using MetricReport = std::map<std::string, double>;

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static double harmonic(double p, double r) {
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
  }

  static PRF from(double p, double r) { return {p, r, harmonic(p, r)}; }

  /// P = overlap / predicted, R = overlap / reference; an empty side
  /// yields 0 for its component.
  static PRF from_counts(std::size_t overlap, std::size_t predicted,
                         std::size_t reference) {
    const double p = predicted == 0 ? 0.0
                                    : static_cast<double>(overlap) /
                                          static_cast<double>(predicted);
    const double r = reference == 0 ? 0.0
                                    : static_cast<double>(overlap) /
                                          static_cast<double>(reference);
    return from(p, r);
  }

  friend bool operator==(const PRF&, const PRF&) = default;
};

/// Component-wise arithmetic mean.
inline PRF macro_average(std::span<const PRF> items) {
  if (items.empty()) throw Error(Errc::kEmptyInput, "macro_average");
  PRF sum;
  for (const PRF& item : items) {
    sum.precision += item.precision;
    sum.recall += item.recall;
    sum.f1 += item.f1;
  }
  const auto n = static_cast<double>(items.size());
  return {sum.precision / n, sum.recall / n, sum.f1 / n};
}

/// Macro average rendered as `<label>.precision`, `<label>.recall`,
/// `<label>.f1` (bare names when `label` is empty).
inline MetricReport macro_report(std::span<const PRF> items,
                                 std::string_view label = {}) {
  const PRF mean = macro_average(items);
  const std::string prefix = label.empty() ? "" : std::string(label) + ".";
  return {{prefix + "precision", mean.precision},
          {prefix + "recall", mean.recall},
          {prefix + "f1", mean.f1}};
}

}  // namespace headtags
