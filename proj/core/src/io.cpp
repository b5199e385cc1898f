#include "tcs/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tcs {
namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& what) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

KeyValueFile KeyValueFile::parse_string(std::string_view text, const std::string& origin) {
  KeyValueFile out;
  out.origin_ = origin;
  std::string section;
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++lineno;

    size_t hash = raw.find_first_of("#;");
    std::string line = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(origin, lineno, "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section.empty()) parse_fail(origin, lineno, "empty section name");
      out.sections_[section];
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) parse_fail(origin, lineno, "expected key = value");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) parse_fail(origin, lineno, "empty key");
    out.sections_[section][key] = value;
  }
  return out;
}

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
  return parse_string(read_text_file(path), path);
}

bool KeyValueFile::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::string KeyValueFile::get_string(const std::string& section, const std::string& key,
                                     std::string fallback) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) return fallback;
  auto kt = it->second.find(key);
  return kt == it->second.end() ? fallback : kt->second;
}

double KeyValueFile::get_double(const std::string& section, const std::string& key,
                                double fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get_string(section, key, "");
  try {
    size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::runtime_error(origin_ + ": [" + section + "] " + key + " = '" + v +
                             "' is not a number");
  }
}

int KeyValueFile::get_int(const std::string& section, const std::string& key, int fallback) const {
  const double d = get_double(section, key, static_cast<double>(fallback));
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw std::runtime_error(origin_ + ": [" + section + "] " + key + " must be an integer");
  return i;
}

std::uint64_t KeyValueFile::get_u64(const std::string& section, const std::string& key,
                                    std::uint64_t fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get_string(section, key, "");
  try {
    size_t used = 0;
    unsigned long long u = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return u;
  } catch (const std::exception&) {
    throw std::runtime_error(origin_ + ": [" + section + "] " + key + " = '" + v +
                             "' is not an unsigned integer");
  }
}

bool KeyValueFile::get_bool(const std::string& section, const std::string& key,
                            bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get_string(section, key, "");
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::runtime_error(origin_ + ": [" + section + "] " + key + " = '" + v +
                           "' is not a boolean");
}

std::vector<std::pair<std::string, std::string>> KeyValueFile::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [sec, kv] : sections_)
    for (const auto& [k, v] : kv) out.emplace_back(sec, k);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  // Integral values print without an exponent; smaller and easier to read.
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  // Otherwise the shortest representation that parses back to the same bits.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::uint64_t hash_bytes(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::uint64_t hash_file(const std::string& path) { return hash_bytes(read_text_file(path)); }

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      out.emplace_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace tcs
