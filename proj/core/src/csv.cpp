#include "skincare/csv.hpp"

#include <iterator>

#include "skincare/error.hpp"

namespace skincare::csv {

std::vector<Row> read(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  std::size_t pos = 0;
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) pos = 3;

  std::vector<Row> rows;
  std::size_t line = 1;
  while (pos < text.size()) {
    Row row;
    row.line = line;
    std::string field;
    bool record_done = false;
    bool any_content = false;
    while (!record_done) {
      // Tolerate blanks around a quoted field: `a, "b, c" ,d`.
      std::size_t look = pos;
      while (look < text.size() && (text[look] == ' ' || text[look] == '\t'))
        ++look;
      if (look < text.size() && text[look] == '"') pos = look;
      if (pos < text.size() && text[pos] == '"') {
        any_content = true;
        ++pos;
        bool closed = false;
        while (pos < text.size()) {
          char c = text[pos++];
          if (c == '"') {
            if (pos < text.size() && text[pos] == '"') {
              field.push_back('"');
              ++pos;
            } else {
              closed = true;
              break;
            }
          } else {
            if (c == '\n') ++line;
            field.push_back(c);
          }
        }
        if (!closed) {
          throw Error(ErrorCode::MalformedCsv,
                      "unterminated quoted field starting on line " +
                          std::to_string(row.line));
        }
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
          ++pos;
        // After a closing quote only a separator or end of record may follow.
        if (pos < text.size() && text[pos] != ',' && text[pos] != '\n' &&
            text[pos] != '\r') {
          throw Error(ErrorCode::MalformedCsv,
                      "unexpected character after closing quote on line " +
                          std::to_string(line));
        }
      }
      while (pos < text.size() && text[pos] != ',' && text[pos] != '\n' &&
             text[pos] != '\r') {
        if (text[pos] == '"') {
          throw Error(ErrorCode::MalformedCsv,
                      "quote inside unquoted field on line " +
                          std::to_string(line));
        }
        any_content = true;
        field.push_back(text[pos++]);
      }
      if (pos >= text.size()) {
        row.fields.push_back(std::move(field));
        record_done = true;
      } else if (text[pos] == ',') {
        any_content = true;
        row.fields.push_back(std::move(field));
        field.clear();
        ++pos;
      } else {
        row.fields.push_back(std::move(field));
        if (text[pos] == '\r') ++pos;
        if (pos < text.size() && text[pos] == '\n') ++pos;
        ++line;
        record_done = true;
      }
    }
    if (any_content) rows.push_back(std::move(row));
  }
  return rows;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace skincare::csv
