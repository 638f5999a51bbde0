#include "conclab/csv.hpp"

#include <stdexcept>

namespace conclab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : out_(path, std::ios::binary), columns_(header.size()) {
  if (!out_) throw std::runtime_error("cannot open CSV file: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

CsvWriter& CsvWriter::field(const std::string& s) {
  if (in_row_) out_ << ',';
  out_ << s;
  ++in_row_;
  return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(format_double(v)); }

CsvWriter& CsvWriter::field(std::int64_t v) {
  return field(std::to_string(v));
}

CsvWriter& CsvWriter::field(std::uint64_t v) {
  return field(std::to_string(v));
}

void CsvWriter::end_row() {
  if (in_row_ != columns_)
    throw std::logic_error("CSV row width mismatch");
  out_ << '\n';
  in_row_ = 0;
}

}  // namespace conclab
