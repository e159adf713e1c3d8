// Copyright 2026 hexctl contributors
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

#include <map>
#include <string>
#include <vector>

namespace hexctl {

// Flat `key = value` configuration text. Keys are dotted lowercase names,
// values are a number, a whitespace-separated number list, or a bare string.
// `#` starts a comment. See docs/config.md for the full schema.
class ConfigMap {
 public:
  ConfigMap() = default;

  // Throws ConfigError with the offending line number on malformed input.
  static ConfigMap parse(const std::string& text);

  bool has(const std::string& key) const;

  double get_double(const std::string& key, double fallback) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  // Fixed-length list; throws ConfigError if present with the wrong arity.
  std::vector<double> get_list(const std::string& key,
                               const std::vector<double>& fallback) const;

  void set_double(const std::string& key, double value);
  void set_string(const std::string& key, const std::string& value);
  void set_list(const std::string& key, const std::vector<double>& values);

  // Keys never read by a getter; load_model uses this to reject typos.
  std::vector<std::string> unread_keys() const;

  // All keys with a given prefix, e.g. "gait." to enumerate gait definitions.
  std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

  std::string serialize() const;

 private:
  struct Entry {
    std::string raw;
    int line = 0;
    mutable bool read = false;
  };
  std::map<std::string, Entry> entries_;
};

}  // namespace hexctl
