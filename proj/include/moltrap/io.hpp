#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace moltrap {

/// CSV with '#'-prefixed metadata lines, a header row, then data rows.
/// Numbers are printed with %.12g so identical runs produce identical bytes.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& line);
  void metadata(const std::string& key, const std::string& value);
  void metadata(const std::string& key, double value);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void row_mixed(const std::vector<std::string>& values);

  static std::string format(double v);

 private:
  std::ofstream out_;
  bool header_written_ = false;
};

}  // namespace moltrap
