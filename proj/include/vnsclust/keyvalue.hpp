#pragma once

// Flat "key = value" text files used for mixture and experiment specs.
// Lines starting with '#' and blank lines are ignored; keys may repeat.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vnsclust {

struct KeyValueFile {
  std::vector<std::pair<std::string, std::string>> entries;

  bool has(const std::string& key) const;
  // last occurrence wins for scalar lookups
  std::string get(const std::string& key, const std::string& fallback) const;
  std::vector<std::string> all(const std::string& key) const;
};

KeyValueFile load_key_value_file(const std::string& path);
KeyValueFile parse_key_value_text(const std::string& text, const std::string& origin);

// Whitespace-separated tokens of a value string.
std::vector<std::string> split_tokens(const std::string& value);

// Strict numeric parsing helpers; throw DataError naming the offending value.
double parse_double(const std::string& token, const std::string& context);
std::int64_t parse_int(const std::string& token, const std::string& context);

}  // namespace vnsclust
