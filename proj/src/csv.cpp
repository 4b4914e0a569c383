#include "tjcm/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "tjcm/errors.hpp"

namespace tjcm {

namespace {

void put_number(std::ostream& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.write(buf, res.ptr - buf);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw UsageError("line " + std::to_string(line_no) + ": '" + s + "' is not a number");
  }
  return v;
}

}  // namespace

void write_csv(std::ostream& out, const TimeSeries& series) {
  out << 'T';
  for (const auto& n : series.names) out << ',' << n;
  out << '\n';
  for (std::size_t i = 0; i < series.grid.size(); ++i) {
    put_number(out, series.grid[i]);
    for (const auto& ch : series.values) {
      out << ',';
      put_number(out, ch[i]);
    }
    out << '\n';
  }
}

void write_csv(const std::string& path, const TimeSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  write_csv(out, series);
  if (!out) throw UsageError("failed writing '" + path + "'");
}

TimeSeries read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw UsageError("empty CSV input");
  const auto header = split(line);
  if (header.empty() || header.front() != "T") throw UsageError("CSV header must start with 'T'");

  TimeSeries ts;
  ts.names.assign(header.begin() + 1, header.end());
  ts.values.resize(ts.names.size());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw UsageError("line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                       " fields, expected " + std::to_string(header.size()));
    }
    ts.grid.push_back(parse_number(cells[0], line_no));
    for (std::size_t c = 1; c < cells.size(); ++c) ts.values[c - 1].push_back(parse_number(cells[c], line_no));
  }
  return ts;
}

TimeSeries read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return read_csv(in);
}

}  // namespace tjcm
