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


// Layering of option sources. Values come from, in increasing priority:
//   1. a config file of `key = value` lines (--config or HEADTAGS_CONFIG)
//   2. environment variables HEADTAGS_<KEY>, with '-' written as '_'
//   3. the command line
// Lower layers are rendered as `--key=value` arguments placed before the
// user's own, and every option keeps its last value.

#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "headtags/error.hpp"
#include "headtags/unicode.hpp"

namespace headtags::cli {

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

inline std::string env_name(std::string_view key) {
  std::string out = "HEADTAGS_";
  for (char c : key) {
    out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

inline std::string normalize_key(std::string_view key) {
  std::string out;
  for (char c : utf8::trim(key)) {
    out += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

/// `key = value` per line; blank lines and lines starting with '#' or ';'
/// are skipped and a value may be wrapped in double quotes.
inline std::map<std::string, std::string> parse_config(std::string_view text,
                                                       std::string_view source = "config") {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  for (std::size_t start = 0; start <= text.size();) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = utf8::trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos || utf8::trim(line.substr(0, eq)).empty()) {
      throw Error(Errc::kMalformedLine, std::string(source) + ": expected key = value", line_no);
    }
    std::string_view value = utf8::trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    out[normalize_key(line.substr(0, eq))] = std::string(value);
  }
  return out;
}

/// Value of `--config` among the user's arguments, if present.
inline std::optional<std::string> find_config_arg(const std::vector<std::string>& args) {
  std::optional<std::string> found;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      found = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      found = args[i].substr(9);
    }
  }
  return found;
}

/// Arguments for one subcommand with config and environment values layered
/// beneath `user_args`. Only keys in `option_names` are taken from the lower
/// layers, so settings meant for other subcommands are ignored.
inline std::vector<std::string> layered_args(const std::vector<std::string>& user_args,
                                             const std::set<std::string>& option_names,
                                             const std::map<std::string, std::string>& config,
                                             const EnvLookup& env) {
  std::vector<std::string> out;
  for (const auto& [key, value] : config) {
    if (option_names.count(key)) out.push_back("--" + key + "=" + value);
  }
  for (const auto& name : option_names) {
    if (auto value = env(env_name(name))) out.push_back("--" + name + "=" + *value);
  }
  out.insert(out.end(), user_args.begin(), user_args.end());
  return out;
}

}  // namespace headtags::cli
