// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "core/error.hpp"

namespace linrelu {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

long long parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  require(!t.empty() && end && *end == '\0' && errno == 0, ErrorKind::Config,
          what + ": expected an integer, got '" + text + "'");
  return v;
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  require(!t.empty() && end && *end == '\0' && errno == 0, ErrorKind::Config,
          what + ": expected a number, got '" + text + "'");
  return v;
}

std::vector<long long> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(item, what));
      continue;
    }
    const long long lo = parse_int(item.substr(0, dots), what);
    const long long hi = parse_int(item.substr(dots + 2), what);
    require(lo <= hi && hi - lo < 1000000, ErrorKind::Config, what + ": bad range '" + item + "'");
    for (long long v = lo; v <= hi; ++v) out.push_back(v);
  }
  require(!out.empty(), ErrorKind::Config, what + ": empty list");
  return out;
}

Config Config::parse(std::istream& in, const std::string& origin) {
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos && eq > 0, ErrorKind::Config,
            origin + ":" + std::to_string(lineno) + ": expected key = value");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open config file '" + path + "'");
  return parse(in, path);
}

void Config::set(const std::string& key, const std::string& value) {
  const std::string k = trim(key);
  require(!k.empty() && k.find_first_of(" \t=#") == std::string::npos, ErrorKind::Config,
          "invalid config key '" + key + "'");
  values_[k] = trim(value);
}

void Config::set_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  require(eq != std::string::npos && eq > 0, ErrorKind::Config,
          "expected key=value, got '" + assignment + "'");
  set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string Config::require_string(const std::string& key) const {
  const auto it = values_.find(key);
  require(it != values_.end(), ErrorKind::Config, "missing config key '" + key + "'");
  return it->second;
}

long long Config::get_int(const std::string& key, long long fallback) const {
  return has(key) ? parse_int(values_.at(key), key) : fallback;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? parse_double(values_.at(key), key) : fallback;
}

std::vector<long long> Config::get_int_list(const std::string& key,
                                            const std::vector<long long>& fallback) const {
  return has(key) ? parse_int_list(values_.at(key), key) : fallback;
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + "=" + v + "\n";
  return out;
}

}  // namespace linrelu
