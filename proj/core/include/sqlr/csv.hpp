#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sqlr {

// RFC 4180 table: comma separated, double-quoted fields with "" escapes,
// CRLF or LF records, quoted fields may span lines. The first record is the
// header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws DataError naming the missing column.
  std::size_t column(std::string_view name) const;
};

// Throws DataError on unterminated quotes, ragged records or an empty input.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::string& path);

// Quotes fields containing commas, quotes or line breaks; LF record ends.
std::string format_csv(const CsvTable& table);

}  // namespace sqlr
