#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hfscatter::cli {

std::uint64_t fnv1a(const void* data, std::size_t size);
std::uint64_t file_checksum(const std::string& path);

/// Reproducibility record: config hash, tool version, per-stage wall time,
/// diagnostics, and a checksummed inventory of every produced file.
class RunManifest {
 public:
  explicit RunManifest(const std::string& config_text);

  void add_timing(const std::string& stage, double seconds);
  void add_diagnostic(const std::string& key, double value);
  void add_note(const std::string& note);
  void add_file(const std::string& path);

  /// Writes <dir>/manifest.json (and records it in no inventory).
  void write(const std::string& dir) const;

  static const char* tool_version();

 private:
  std::string config_hash_;
  std::vector<std::pair<std::string, double>> timings_;
  std::vector<std::pair<std::string, double>> diagnostics_;
  std::vector<std::string> notes_;
  std::vector<std::pair<std::string, std::string>> files_;  // path, checksum
};

}  // namespace hfscatter::cli
