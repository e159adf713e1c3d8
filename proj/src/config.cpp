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

#include "hexctl/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "hexctl/errors.hpp"

namespace hexctl {
namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' &&
        c != '-')
      return false;
  }
  return true;
}

bool parse_number(const std::string& tok, double& out) {
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::string format_number(double v) {
  // Shortest representation that round-trips exactly.
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

ConfigMap ConfigMap::parse(const std::string& text) {
  ConfigMap cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string stripped = trim(line);
    if (stripped.empty()) continue;
    size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected `key = value`, got \"" + stripped + "\"",
                        lineno);
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (!valid_key(key))
      throw ConfigError("invalid key \"" + key + "\"", lineno);
    if (value.empty()) throw ConfigError("empty value for " + key, lineno);
    if (cfg.entries_.count(key))
      throw ConfigError("duplicate key " + key, lineno);
    cfg.entries_[key] = Entry{value, lineno, false};
  }
  return cfg;
}

bool ConfigMap::has(const std::string& key) const {
  return entries_.count(key) > 0;
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  it->second.read = true;
  double v;
  if (!parse_number(it->second.raw, v))
    throw ConfigError(key + ": expected a number, got \"" + it->second.raw +
                          "\"",
                      it->second.line);
  return v;
}

std::string ConfigMap::get_string(const std::string& key,
                                  const std::string& fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  it->second.read = true;
  return it->second.raw;
}

std::vector<double> ConfigMap::get_list(
    const std::string& key, const std::vector<double>& fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  it->second.read = true;
  std::vector<double> out;
  std::istringstream toks(it->second.raw);
  std::string tok;
  while (toks >> tok) {
    double v;
    if (!parse_number(tok, v))
      throw ConfigError(key + ": expected numbers, got \"" + tok + "\"",
                        it->second.line);
    out.push_back(v);
  }
  if (!fallback.empty() && out.size() != fallback.size())
    throw ConfigError(key + ": expected " + std::to_string(fallback.size()) +
                          " values, got " + std::to_string(out.size()),
                      it->second.line);
  return out;
}

void ConfigMap::set_double(const std::string& key, double value) {
  entries_[key] = Entry{format_number(value), 0, true};
}

void ConfigMap::set_string(const std::string& key, const std::string& value) {
  entries_[key] = Entry{value, 0, true};
}

void ConfigMap::set_list(const std::string& key,
                         const std::vector<double>& values) {
  std::string raw;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) raw += ' ';
    raw += format_number(values[i]);
  }
  entries_[key] = Entry{raw, 0, true};
}

std::vector<std::string> ConfigMap::unread_keys() const {
  std::vector<std::string> out;
  for (const auto& [key, entry] : entries_)
    if (!entry.read) out.push_back(key);
  return out;
}

std::vector<std::string> ConfigMap::keys_with_prefix(
    const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& [key, entry] : entries_)
    if (key.rfind(prefix, 0) == 0) out.push_back(key);
  return out;
}

std::string ConfigMap::serialize() const {
  std::string out;
  for (const auto& [key, entry] : entries_) {
    out += key;
    out += " = ";
    out += entry.raw;
    out += '\n';
  }
  return out;
}

}  // namespace hexctl
