#pragma once

// Deterministic output plumbing: CSV files with full double precision and the
// run manifest listing every emitted artifact.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace cli {

// Shortest representation that round-trips a double (17 significant digits).
std::string fmt17(double v);

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

// Column-oriented convenience for two-column files.
void write_xy_csv(const std::filesystem::path& path, const std::string& header,
                  const std::vector<double>& x, const std::vector<double>& y);

struct ProfileData {
  std::vector<double> x;
  std::vector<double> value;
};

// Reads an 'x,value' CSV written by this tool (or compatible).
ProfileData read_profile_csv(const std::filesystem::path& path);

class Manifest {
 public:
  explicit Manifest(std::string mode);
  void set(const std::string& key, const std::string& value);
  void set_number(const std::string& key, double value);
  void add_artifact(const std::string& relative_path, const std::string& role);
  void add_wallclock(const std::string& stage, double seconds);
  void write(const std::filesystem::path& dir) const;
  const std::vector<std::pair<std::string, std::string>>& artifacts() const {
    return artifacts_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
  std::vector<std::pair<std::string, std::string>> artifacts_;
  std::vector<std::pair<std::string, double>> wallclock_;
};

}  // namespace cli
