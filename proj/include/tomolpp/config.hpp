#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tomolpp {

/// Malformed config text or an unparsable value. The message carries
/// `source:line:` whenever the offending entry came from a file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` text, one entry per line. `#` starts a comment.
/// Keys keep their insertion order so writers produce stable output.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::istream& in, const std::string& source = "<input>");
  static KeyValueFile parse(const std::string& text, const std::string& source = "<input>");
  static KeyValueFile load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);
  void set(const std::string& key, int value) { set(key, static_cast<long long>(value)); }
  void merge(const KeyValueFile& other, const std::string& prefix = "");

  bool contains(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;
  std::vector<long long> get_ints(const std::string& key, std::vector<long long> fallback) const;

  /// Entries whose key starts with `prefix`, with the prefix stripped.
  KeyValueFile section(const std::string& prefix) const;

  /// Throws ConfigError naming the first key not in `allowed`.
  void require_known(const std::vector<std::string>& allowed) const;

  void erase(const std::string& key);

  /// `source:line: ` for keys read from a file, `source: ` otherwise.
  std::string location(const std::string& key) const;

  const std::vector<std::string>& keys() const { return order_; }
  std::string to_string() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::string source_ = "<memory>";
  std::vector<std::string> order_;
  std::unordered_map<std::string, Entry> entries_;
};

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);
std::string join_doubles(const std::vector<double>& values);
std::vector<std::string> split_list(std::string_view text, char sep = ',');

}  // namespace tomolpp
