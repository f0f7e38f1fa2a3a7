#include "tomolpp/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tomolpp {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<double> parse_double(const std::string& s) {
  if (s == "inf" || s == "+inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::optional<long long> parse_int(const std::string& s) {
  long long v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(trim(text.substr(start, pos == std::string_view::npos ? text.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

KeyValueFile KeyValueFile::parse(std::istream& in, const std::string& source) {
  KeyValueFile kv;
  kv.source_ = source;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": empty key");
    }
    if (kv.entries_.count(key)) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    kv.order_.push_back(key);
    kv.entries_[key] = Entry{value, line_no};
  }
  return kv;
}

KeyValueFile KeyValueFile::parse(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse(in, source);
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse(in, path.string());
}

void KeyValueFile::set(const std::string& key, const std::string& value) {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    order_.push_back(key);
    entries_[key] = Entry{value, 0};
  } else {
    it->second = Entry{value, 0};
  }
}

void KeyValueFile::set(const std::string& key, double value) { set(key, format_double(value)); }

void KeyValueFile::set(const std::string& key, long long value) { set(key, std::to_string(value)); }

void KeyValueFile::merge(const KeyValueFile& other, const std::string& prefix) {
  for (const auto& key : other.order_) set(prefix + key, other.entries_.at(key).value);
}

void KeyValueFile::erase(const std::string& key) {
  if (entries_.erase(key)) order_.erase(std::find(order_.begin(), order_.end(), key));
}

bool KeyValueFile::contains(const std::string& key) const { return entries_.count(key) != 0; }

std::optional<std::string> KeyValueFile::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

std::string KeyValueFile::location(const std::string& key) const {
  auto it = entries_.find(key);
  if (it != entries_.end() && it->second.line > 0) {
    return source_ + ":" + std::to_string(it->second.line) + ": ";
  }
  return source_ + ": ";
}

std::string KeyValueFile::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
  auto raw = get(key);
  if (!raw) return fallback;
  auto v = parse_double(*raw);
  if (!v) throw ConfigError(location(key) + "'" + key + "' expects a number, got '" + *raw + "'");
  return *v;
}

long long KeyValueFile::get_int(const std::string& key, long long fallback) const {
  auto raw = get(key);
  if (!raw) return fallback;
  auto v = parse_int(*raw);
  if (!v) throw ConfigError(location(key) + "'" + key + "' expects an integer, got '" + *raw + "'");
  return *v;
}

bool KeyValueFile::get_bool(const std::string& key, bool fallback) const {
  auto raw = get(key);
  if (!raw) return fallback;
  if (*raw == "true" || *raw == "1" || *raw == "yes") return true;
  if (*raw == "false" || *raw == "0" || *raw == "no") return false;
  throw ConfigError(location(key) + "'" + key + "' expects true/false, got '" + *raw + "'");
}

std::vector<double> KeyValueFile::get_doubles(const std::string& key,
                                              std::vector<double> fallback) const {
  auto raw = get(key);
  if (!raw) return fallback;
  std::vector<double> out;
  for (const auto& item : split_list(*raw)) {
    auto v = parse_double(item);
    if (!v) throw ConfigError(location(key) + "'" + key + "' has non-numeric item '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<long long> KeyValueFile::get_ints(const std::string& key,
                                              std::vector<long long> fallback) const {
  auto raw = get(key);
  if (!raw) return fallback;
  std::vector<long long> out;
  for (const auto& item : split_list(*raw)) {
    auto v = parse_int(item);
    if (!v) throw ConfigError(location(key) + "'" + key + "' has non-integer item '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

KeyValueFile KeyValueFile::section(const std::string& prefix) const {
  KeyValueFile out;
  out.source_ = source_;
  for (const auto& key : order_) {
    if (key.rfind(prefix, 0) == 0) {
      const auto stripped = key.substr(prefix.size());
      out.order_.push_back(stripped);
      out.entries_[stripped] = entries_.at(key);
    }
  }
  return out;
}

void KeyValueFile::require_known(const std::vector<std::string>& allowed) const {
  for (const auto& key : order_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(location(key) + "unknown key '" + key + "'");
    }
  }
}

std::string KeyValueFile::to_string() const {
  std::string out;
  for (const auto& key : order_) out += key + " = " + entries_.at(key).value + "\n";
  return out;
}

}  // namespace tomolpp
