#include "ioopt/table_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ioopt/errors.hpp"

namespace ioopt {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

StructureMatrix parse_table_text(std::string_view text) {
  struct Line {
    std::size_t number;
    std::vector<std::string> fields;
  };
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    auto raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++number;
    if (!trim(raw).empty()) lines.push_back({number, split_fields(raw)});
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (lines.empty()) throw ParseError("table is empty", 0);

  const auto& header = lines.front();
  if (header.fields.front() != "product")
    throw ParseError("header must start with 'product'", header.number, 1);
  const std::size_t d = header.fields.size() - 1;
  if (d == 0) throw ParseError("header names no products", header.number);

  std::vector<std::string> labels(header.fields.begin() + 1, header.fields.end());
  std::set<std::string> seen;
  for (std::size_t j = 0; j < d; ++j) {
    if (labels[j].empty()) throw ParseError("empty product label", header.number, j + 2);
    if (!seen.insert(labels[j]).second)
      throw ParseError("duplicate product label '" + labels[j] + "'", header.number, j + 2);
  }

  const std::size_t rows = lines.size() - 1;
  if (rows > d) throw ParseError("table has more rows than products (expected " + std::to_string(d) + ")",
                                 lines[d + 1].number);
  Matrix<Rational> entries(d, d);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& line = lines[i + 1];
    if (line.fields.size() != d + 1)
      throw ParseError("row has " + std::to_string(line.fields.size() - 1) + " values, expected " + std::to_string(d),
                       line.number);
    if (line.fields.front() != labels[i])
      throw ParseError("row label '" + line.fields.front() + "' does not match column label '" + labels[i] + "'",
                       line.number, 1);
    for (std::size_t j = 0; j < d; ++j) {
      auto value = parse_exact(line.fields[j + 1]);
      if (!value) throw ParseError("malformed number '" + line.fields[j + 1] + "'", line.number, j + 2);
      if (*value < 0) throw ParseError("negative coefficient", line.number, j + 2);
      entries(i, j) = *value;
    }
  }
  if (rows < d)
    throw ParseError("table has " + std::to_string(rows) + " rows, expected " + std::to_string(d),
                     lines.back().number);
  return StructureMatrix::from_exact(std::move(entries), std::move(labels));
}

StructureMatrix parse_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read table '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table_text(buf.str());
}

std::string serialize_table(const StructureMatrix& a) {
  std::string out = "product";
  for (const auto& l : a.labels()) out += "," + l;
  out += "\n";
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out += a.labels()[i];
    for (std::size_t j = 0; j < a.dim(); ++j) out += "," + format_exact(a.exact()(i, j));
    out += "\n";
  }
  return out;
}

std::string trajectory_csv(const Trajectory& t, const std::vector<std::string>& labels) {
  std::string out = "step";
  for (const auto& l : labels) out += "," + l;
  out += "\n";
  for (std::size_t n = 0; n < t.steps.size(); ++n) {
    out += std::to_string(n);
    for (double x : t.steps[n]) out += "," + format_double(x);
    out += "\n";
  }
  return out;
}

std::vector<Rational> parse_exact_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t col = 0;
  for (const auto& field : split_fields(text)) {
    ++col;
    auto v = parse_exact(field);
    if (!v) throw ParseError("malformed number '" + field + "' in list", 1, col);
    out.push_back(*v);
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view text) {
  auto exact = parse_exact_list(text);
  return to_double(exact);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

}  // namespace ioopt
