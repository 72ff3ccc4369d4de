#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

double parse_number(const std::string& text, const std::string& what) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE)
    throw ConfigError(what + ": not a number: '" + text + "'");
  return v;
}

long long parse_integer(const std::string& text, const std::string& what) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE)
    throw ConfigError(what + ": not an integer: '" + text + "'");
  return v;
}

Ini Ini::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_text(text.str(), path);
}

Ini Ini::parse_text(const std::string& text, const std::string& origin) {
  Ini ini;
  ini.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
      if (!ini.sections_.count(section)) ini.order_.push_back(section);
      ini.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any section");
    auto& sec = ini.sections_[section];
    if (sec.count(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    sec[key] = Entry{value};
  }
  return ini;
}

bool Ini::has_section(const std::string& section) const {
  return sections_.count(section) != 0;
}

const Ini::Entry* Ini::find(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  auto k = s->second.find(key);
  if (k == s->second.end()) return nullptr;
  k->second.consumed = true;
  return &k->second;
}

std::optional<std::string> Ini::get_string(const std::string& section, const std::string& key) {
  const Entry* e = find(section, key);
  if (!e) return std::nullopt;
  return e->value;
}

std::optional<double> Ini::get_number(const std::string& section, const std::string& key) {
  const Entry* e = find(section, key);
  if (!e) return std::nullopt;
  return parse_number(e->value, section + "." + key);
}

std::optional<long long> Ini::get_integer(const std::string& section, const std::string& key) {
  const Entry* e = find(section, key);
  if (!e) return std::nullopt;
  return parse_integer(e->value, section + "." + key);
}

std::optional<bool> Ini::get_boolean(const std::string& section, const std::string& key) {
  const Entry* e = find(section, key);
  if (!e) return std::nullopt;
  std::string v = e->value;
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(section + "." + key + ": not a boolean: '" + e->value + "'");
}

std::optional<std::vector<double>> Ini::get_number_list(const std::string& section,
                                                        const std::string& key) {
  const Entry* e = find(section, key);
  if (!e) return std::nullopt;
  std::vector<double> out;
  for (const auto& item : split_list(e->value))
    out.push_back(parse_number(item, section + "." + key));
  if (out.empty()) throw ConfigError(section + "." + key + ": empty list");
  return out;
}

std::optional<std::vector<long long>> Ini::get_integer_list(const std::string& section,
                                                            const std::string& key) {
  const Entry* e = find(section, key);
  if (!e) return std::nullopt;
  std::vector<long long> out;
  for (const auto& item : split_list(e->value))
    out.push_back(parse_integer(item, section + "." + key));
  if (out.empty()) throw ConfigError(section + "." + key + ": empty list");
  return out;
}

double Ini::require_number(const std::string& section, const std::string& key) {
  auto v = get_number(section, key);
  if (!v) throw ConfigError("missing required key " + section + "." + key);
  return *v;
}

long long Ini::require_integer(const std::string& section, const std::string& key) {
  auto v = get_integer(section, key);
  if (!v) throw ConfigError("missing required key " + section + "." + key);
  return *v;
}

void Ini::finish(const std::vector<std::string>& allowed_sections) const {
  for (const auto& [name, entries] : sections_) {
    if (std::find(allowed_sections.begin(), allowed_sections.end(), name) ==
        allowed_sections.end())
      throw ConfigError("unknown or inapplicable section [" + name + "]");
    for (const auto& [key, entry] : entries) {
      if (!entry.consumed)
        throw ConfigError("unknown key '" + key + "' in section [" + name + "]");
    }
  }
}

std::vector<std::pair<std::string, std::string>> Ini::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [name, entries] : sections_)
    for (const auto& [key, entry] : entries)
      out.emplace_back(name + "." + key, entry.value);
  return out;
}

}  // namespace cli
