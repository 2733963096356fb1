#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace skincare::csv {

struct Row {
  std::size_t line = 0;  // 1-based line on which the record starts
  std::vector<std::string> fields;
};

/// RFC 4180 reader: quoted fields may hold separators, doubled quotes and
/// newlines. Accepts LF or CRLF and a leading UTF-8 BOM. Blank lines are
/// skipped. Throws Error(MalformedCsv) on an unterminated quote or on stray
/// characters after a closing quote.
std::vector<Row> read(std::istream& in);

/// Quotes a field when it contains a separator, quote or newline.
std::string escape(std::string_view field);

}  // namespace skincare::csv
