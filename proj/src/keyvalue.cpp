#include "vnsclust/keyvalue.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "vnsclust/errors.hpp"

namespace vnsclust {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

bool KeyValueFile::has(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return true;
  }
  return false;
}

std::string KeyValueFile::get(const std::string& key, const std::string& fallback) const {
  std::string out = fallback;
  for (const auto& [k, v] : entries) {
    if (k == key) out = v;
  }
  return out;
}

std::vector<std::string> KeyValueFile::all(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries) {
    if (k == key) out.push_back(v);
  }
  return out;
}

KeyValueFile parse_key_value_text(const std::string& text, const std::string& origin) {
  KeyValueFile out;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw DataError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw DataError(origin + ":" + std::to_string(line_no) + ": empty key");
    }
    out.entries.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

KeyValueFile load_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open spec file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_key_value_text(buffer.str(), path);
}

std::vector<std::string> split_tokens(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream stream(value);
  std::string token;
  while (stream >> token) out.push_back(token);
  return out;
}

double parse_double(const std::string& token, const std::string& context) {
  double out = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw DataError(context + ": not a number: '" + token + "'");
  }
  return out;
}

std::int64_t parse_int(const std::string& token, const std::string& context) {
  std::int64_t out = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw DataError(context + ": not an integer: '" + token + "'");
  }
  return out;
}

}  // namespace vnsclust
