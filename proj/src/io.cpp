#include "moltrap/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace moltrap {

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
  if (!out_) throw std::runtime_error("cannot open output file: " + path);
}

std::string CsvWriter::format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void CsvWriter::comment(const std::string& line) {
  if (header_written_) throw std::logic_error("metadata must precede the header");
  out_ << "# " << line << "\n";
}

void CsvWriter::metadata(const std::string& key, const std::string& value) {
  comment(key + " = " + value);
}

void CsvWriter::metadata(const std::string& key, double value) {
  comment(key + " = " + format(value));
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << "\n";
  header_written_ = true;
}

void CsvWriter::row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format(values[i]);
  out_ << "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
  for (size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
  out_ << "\n";
}

}  // namespace moltrap
