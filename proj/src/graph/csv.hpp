#pragma once

#include <istream>
#include <string>
#include <vector>

namespace netour::detail {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row
};

// RFC 4180: quoted fields, doubled quotes, CRLF, leading UTF-8 BOM.
// Blank lines are skipped. Throws Error(MalformedFile).
CsvTable read_csv(std::istream& in, const std::string& what);

}  // namespace netour::detail
