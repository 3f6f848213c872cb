#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace hfscatter::util {

/// Deterministic CSV writing: doubles are rendered with %.17g so identical
/// runs produce byte-identical files.
std::string format_double(double v);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }

 private:
  std::ofstream out_;
  std::size_t width_;
};

}  // namespace hfscatter::util
