#include "io_util.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "gfbbm/gfbbm.h"

namespace cli {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << fmt17(row[i]);
    }
    out << '\n';
  }
  if (!out) throw ConfigError("failed writing " + path.string());
}

void write_xy_csv(const std::filesystem::path& path, const std::string& header,
                  const std::vector<double>& x, const std::vector<double>& y) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << header << '\n';
  for (std::size_t i = 0; i < x.size(); ++i)
    out << fmt17(x[i]) << ',' << fmt17(y[i]) << '\n';
  if (!out) throw ConfigError("failed writing " + path.string());
}

ProfileData read_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profile file: " + path.string());
  ProfileData data;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty file");
  // header row is mandatory
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected 'x,value'");
    data.x.push_back(parse_number(line.substr(0, comma), path.string() + " x"));
    data.value.push_back(parse_number(line.substr(comma + 1), path.string() + " value"));
  }
  if (data.x.empty()) throw ConfigError(path.string() + ": no samples");
  return data;
}

Manifest::Manifest(std::string mode) {
  lines_.emplace_back("tool", std::string("gfbbm ") + gfbbm_version());
  lines_.emplace_back("format_version", "1");
  lines_.emplace_back("mode", std::move(mode));
}

void Manifest::set(const std::string& key, const std::string& value) {
  lines_.emplace_back(key, value);
}

void Manifest::set_number(const std::string& key, double value) {
  lines_.emplace_back(key, fmt17(value));
}

void Manifest::add_artifact(const std::string& relative_path, const std::string& role) {
  artifacts_.emplace_back(relative_path, role);
}

void Manifest::add_wallclock(const std::string& stage, double seconds) {
  wallclock_.emplace_back(stage, seconds);
}

void Manifest::write(const std::filesystem::path& dir) const {
  const auto path = dir / "manifest.txt";
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  for (const auto& [key, value] : lines_) out << key << " = " << value << '\n';
  for (const auto& [file, role] : artifacts_)
    out << "artifact = " << file << " role=" << role << '\n';
  out << "artifact = manifest.txt role=manifest\n";
  for (const auto& [stage, seconds] : wallclock_)
    out << "wallclock." << stage << "_seconds = " << fmt17(seconds) << '\n';
  if (!out) throw ConfigError("failed writing " + path.string());
}

}  // namespace cli
