#include "ionqaoa/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ionqaoa/error.hpp"

namespace ionqaoa::csv {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") != std::string::npos)
    fail(ErrorKind::kDomain, "CSV string cells may not contain separators");
  return s;
}

std::string to_string(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.schema.size(); ++i) {
    if (i) out += ',';
    out += table.schema[i];
  }
  out += '\n';
  for (const auto& rec : table.records) {
    if (rec.size() != table.schema.size())
      fail(ErrorKind::kDimension, "record width does not match schema");
    for (std::size_t i = 0; i < rec.size(); ++i) {
      if (i) out += ',';
      out += format_cell(rec[i]);
    }
    out += '\n';
  }
  return out;
}

void emit_csv(const Table& table, const std::filesystem::path& path) {
  const std::string text = to_string(table);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) fail(ErrorKind::kIo, "cannot open " + tmp.string() + " for writing");
    os << text;
    if (!os) fail(ErrorKind::kIo, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorKind::kIo, "cannot replace " + path.string() + ": " + ec.message());
}

ParsedTable parse(const std::string& text) {
  ParsedTable t;
  std::istringstream is(text);
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (header) {
      t.schema = std::move(cells);
      header = false;
    } else {
      if (cells.size() != t.schema.size())
        fail(ErrorKind::kParse, "CSV row width does not match header");
      t.rows.push_back(std::move(cells));
    }
  }
  if (header) fail(ErrorKind::kParse, "CSV text has no header");
  return t;
}

double to_real(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    fail(ErrorKind::kParse, "not a real number: '" + s + "'");
  return v;
}

}  // namespace ionqaoa::csv
