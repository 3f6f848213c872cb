#include "hfscatter/cli/manifest.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace hfscatter::cli {

std::uint64_t fnv1a(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("file_checksum: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  return fnv1a(bytes.data(), bytes.size());
}

namespace {
std::string hex(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}
}  // namespace

const char* RunManifest::tool_version() { return "hfscatter 1.0.0"; }

RunManifest::RunManifest(const std::string& config_text)
    : config_hash_(hex(fnv1a(config_text.data(), config_text.size()))) {}

void RunManifest::add_timing(const std::string& stage, double seconds) {
  timings_.emplace_back(stage, seconds);
}

void RunManifest::add_diagnostic(const std::string& key, double value) {
  diagnostics_.emplace_back(key, value);
}

void RunManifest::add_note(const std::string& note) { notes_.push_back(note); }

void RunManifest::add_file(const std::string& path) {
  files_.emplace_back(path, hex(file_checksum(path)));
}

void RunManifest::write(const std::string& dir) const {
  nlohmann::json doc;
  doc["tool_version"] = tool_version();
  doc["config_hash"] = config_hash_;
  for (const auto& [stage, seconds] : timings_) doc["wall_time_seconds"][stage] = seconds;
  for (const auto& [key, value] : diagnostics_) doc["diagnostics"][key] = value;
  doc["notes"] = notes_;
  doc["files"] = nlohmann::json::array();
  for (const auto& [path, sum] : files_)
    doc["files"].push_back({{"path", path}, {"checksum", sum}});
  std::ofstream out(dir + "/manifest.json");
  if (!out) throw std::runtime_error("RunManifest: cannot write manifest in " + dir);
  out << doc.dump(2) << "\n";
}

}  // namespace hfscatter::cli
