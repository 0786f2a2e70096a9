#include "csv.hpp"

#include <iterator>

#include "netour/error.hpp"

namespace netour::detail {

namespace {

[[noreturn]] void fail(const std::string& what, std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::MalformedFile, what + " line " + std::to_string(line) + ": " + msg);
}

}  // namespace

CsvTable read_csv(std::istream& in, const std::string& what) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::size_t pos = 0;
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) pos = 3;

  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> lines;
  std::size_t line = 1;

  while (pos < text.size()) {
    std::vector<std::string> record;
    std::string field;
    const std::size_t start_line = line;
    bool quoted = false;
    bool field_was_quoted = false;
    bool done = false;
    while (!done) {
      if (pos >= text.size()) {
        if (quoted) fail(what, start_line, "unterminated quoted field");
        record.push_back(std::move(field));
        break;
      }
      const char c = text[pos++];
      if (quoted) {
        if (c == '"') {
          if (pos < text.size() && text[pos] == '"') {
            field.push_back('"');
            ++pos;
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line;
          field.push_back(c);
        }
        continue;
      }
      switch (c) {
        case '"':
          if (!field.empty() || field_was_quoted) fail(what, line, "unexpected quote");
          quoted = true;
          field_was_quoted = true;
          break;
        case ',':
          record.push_back(std::move(field));
          field.clear();
          field_was_quoted = false;
          break;
        case '\r':
          break;
        case '\n':
          ++line;
          record.push_back(std::move(field));
          done = true;
          break;
        default:
          if (field_was_quoted) fail(what, line, "text after closing quote");
          field.push_back(c);
      }
    }
    const bool blank = record.size() == 1 && record.front().empty();
    if (!blank) {
      records.push_back(std::move(record));
      lines.push_back(start_line);
    }
  }

  CsvTable table;
  if (records.empty()) fail(what, 1, "missing header row");
  table.header = std::move(records.front());
  for (auto& h : table.header) {
    while (!h.empty() && (h.back() == ' ' || h.back() == '\t')) h.pop_back();
    while (!h.empty() && (h.front() == ' ' || h.front() == '\t')) h.erase(h.begin());
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      fail(what, lines[r],
           "expected " + std::to_string(table.header.size()) + " fields, found " +
               std::to_string(records[r].size()));
    }
    table.rows.push_back(std::move(records[r]));
    table.line_numbers.push_back(lines[r]);
  }
  return table;
}

}  // namespace netour::detail
