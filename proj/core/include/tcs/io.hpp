#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tcs {

// Sectioned key/value text format:
//   [section]
//   key = value   # trailing comments allowed
// Section and key names are case-sensitive. Duplicate keys overwrite.
class KeyValueFile {
 public:
  static KeyValueFile parse_file(const std::string& path);
  static KeyValueFile parse_string(std::string_view text, const std::string& origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         std::string fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

  // Every (section, key) actually present; used to reject unknown keys.
  std::vector<std::pair<std::string, std::string>> entries() const;

 private:
  std::string origin_;
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

// Shortest-precision decimal formatting that round-trips a double exactly.
// Keeps emitted CSV/JSON byte-stable across runs.
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

// FNV-1a over raw bytes; used for choice-set cache keys and the
// repeat-run determinism check, not for security.
std::uint64_t hash_bytes(std::string_view bytes);
std::uint64_t hash_file(const std::string& path);

std::vector<std::string> split(std::string_view line, char sep);

}  // namespace tcs
