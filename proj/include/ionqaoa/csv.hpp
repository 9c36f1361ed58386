#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace ionqaoa::csv {

using Cell = std::variant<std::int64_t, double, std::string>;
using Record = std::vector<Cell>;

struct Table {
  std::vector<std::string> schema;
  std::vector<Record> records;
};

// 17 significant digits, '.' decimal separator, locale independent.
std::string format_real(double v);
std::string format_cell(const Cell& c);

// Header row then one line per record. Throws kDimension when a record
// does not match the schema width.
std::string to_string(const Table& table);
// Writes through a temporary file and renames it into place.
void emit_csv(const Table& table, const std::filesystem::path& path);

// Cells come back as strings; numeric conversion is up to the caller.
struct ParsedTable {
  std::vector<std::string> schema;
  std::vector<std::vector<std::string>> rows;
};
ParsedTable parse(const std::string& text);
double to_real(const std::string& s);

}  // namespace ionqaoa::csv
