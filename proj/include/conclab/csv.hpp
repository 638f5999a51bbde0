#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace conclab {

// Minimal CSV writer with locked formatting (%.17g) so that identical
// inputs produce byte-identical files.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  CsvWriter& field(const std::string& s);
  CsvWriter& field(double v);
  CsvWriter& field(std::int64_t v);
  CsvWriter& field(std::uint64_t v);
  void end_row();

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

std::string format_double(double v);

}  // namespace conclab
