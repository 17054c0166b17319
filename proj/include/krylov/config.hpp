#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace krylov {

/// Flat `key = value` configuration. Blank lines and lines starting with
/// '#' are ignored; later assignments override earlier ones.
class KeyValueConfig {
public:
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig parse_file(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  /// Comma-separated list of doubles.
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
  /// Comma-separated list of words.
  std::vector<std::string> get_words(const std::string& key, const std::vector<std::string>& fallback) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

private:
  std::map<std::string, std::string> values_;
};

}  // namespace krylov
