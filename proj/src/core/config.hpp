// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace linrelu {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

// Flat key = value configuration. '#' starts a comment; blank lines are
// ignored; later assignments override earlier ones. Lists are comma
// separated and may contain integer ranges "a..b".
class Config {
 public:
  Config() = default;

  static Config parse(std::istream& in, const std::string& origin = "<config>");
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  // "key=value"; ErrorKind::Config when malformed.
  void set_assignment(const std::string& assignment);
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void erase(const std::string& key) { values_.erase(key); }

  std::string get(const std::string& key, const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::vector<long long> get_int_list(const std::string& key, const std::vector<long long>& fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  // Sorted "key=value\n" lines.
  std::string canonical() const;
  std::uint64_t hash() const { return fnv1a64(canonical()); }

 private:
  std::map<std::string, std::string> values_;
};

long long parse_int(const std::string& text, const std::string& what);
double parse_double(const std::string& text, const std::string& what);
std::vector<long long> parse_int_list(const std::string& text, const std::string& what);

}  // namespace linrelu
