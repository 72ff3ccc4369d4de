#pragma once

// Strict key-value configuration: INI-style sections, '#' comments, every
// section and key must be recognized and consumed or the file is rejected.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Ini {
 public:
  static Ini parse_file(const std::string& path);
  static Ini parse_text(const std::string& text, const std::string& origin);

  bool has_section(const std::string& section) const;
  const std::vector<std::string>& section_names() const { return order_; }

  // Typed getters; every successful get marks the key consumed.
  std::optional<std::string> get_string(const std::string& section, const std::string& key);
  std::optional<double> get_number(const std::string& section, const std::string& key);
  std::optional<long long> get_integer(const std::string& section, const std::string& key);
  std::optional<bool> get_boolean(const std::string& section, const std::string& key);
  std::optional<std::vector<double>> get_number_list(const std::string& section,
                                                     const std::string& key);
  std::optional<std::vector<long long>> get_integer_list(const std::string& section,
                                                         const std::string& key);

  double require_number(const std::string& section, const std::string& key);
  long long require_integer(const std::string& section, const std::string& key);

  // Rejects any section or key that was never consumed.
  void finish(const std::vector<std::string>& allowed_sections) const;

  // Echo of every parsed key (section.key = value), for manifests.
  std::vector<std::pair<std::string, std::string>> entries() const;

 private:
  struct Entry {
    std::string value;
    mutable bool consumed = false;
  };
  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::vector<std::string> order_;
  std::string origin_;

  const Entry* find(const std::string& section, const std::string& key) const;
};

double parse_number(const std::string& text, const std::string& what);
long long parse_integer(const std::string& text, const std::string& what);

}  // namespace cli
