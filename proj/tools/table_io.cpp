#include "table_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace binlaw::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s.remove_prefix(1);
    s.remove_suffix(1);
  }
  return s;
}

// Locale-independent double parse of an entire field.
std::optional<double> parse_double(std::string_view field) {
  field = trim(field);
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(line.substr(begin, i - begin));
      begin = i + 1;
    }
  }
  return out;
}

[[noreturn]] void malformed(std::uint64_t line_no, std::string_view text) {
  std::ostringstream msg;
  msg << "malformed numeric value on line " << line_no << ": '" << std::string(trim(text))
      << "'";
  throw std::invalid_argument(msg.str());
}

}  // namespace

NumericFile read_numeric_file(const std::string& path, const ReadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open input file: " + path);

  NumericFile out;
  std::string line;
  std::uint64_t line_no = 0;
  std::optional<std::size_t> column_index;
  if (opts.column) {
    // numeric column selector is a 1-based index
    int idx = 0;
    const auto [p, ec] =
        std::from_chars(opts.column->data(), opts.column->data() + opts.column->size(), idx);
    if (ec == std::errc{} && p == opts.column->data() + opts.column->size()) {
      if (idx < 1) throw std::invalid_argument("column index must be >= 1");
      column_index = static_cast<std::size_t>(idx - 1);
    }
  }

  bool header_checked = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;

    std::string_view field = line;
    if (opts.column) {
      const auto cells = split_csv(line);
      if (!header_checked) {
        header_checked = true;
        if (!column_index) {
          const auto it = std::find_if(cells.begin(), cells.end(), [&](std::string_view c) {
            return trim(c) == *opts.column;
          });
          if (it == cells.end())
            throw std::invalid_argument("column '" + *opts.column + "' not found in header");
          column_index = static_cast<std::size_t>(it - cells.begin());
          continue;  // header row carries no data
        }
        // index selection: treat a non-numeric first row as a header
        if (*column_index < cells.size() && !parse_double(cells[*column_index])) continue;
      }
      if (*column_index >= cells.size()) {
        if (opts.lenient) {
          ++out.skipped_lines;
          continue;
        }
        malformed(line_no, line);
      }
      field = cells[*column_index];
    }

    const auto value = parse_double(field);
    if (!value) {
      if (opts.lenient) {
        ++out.skipped_lines;
        continue;
      }
      malformed(line_no, field);
    }
    out.values.push_back(*value);
  }
  return out;
}

void write_numeric_file(const std::string& path, std::span<const double> values) {
  std::ofstream outf(path);
  if (!outf) throw io_error("cannot open output file: " + path);
  outf << std::setprecision(17);
  for (double v : values) outf << v << '\n';
  if (!outf) throw io_error("write failed: " + path);
}

TextTable::TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

void TextTable::add_row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

void TextTable::print(std::ostream& os) const {
  std::vector<std::size_t> width;
  for (const auto& row : rows_)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (width.size() <= i) width.resize(i + 1, 0);
      width[i] = std::max(width[i], row[i].size());
    }
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i == 0 ? "" : "  ");
      // first column left-aligned, numbers right-aligned
      if (i == 0)
        os << std::left << std::setw(static_cast<int>(width[i])) << row[i];
      else
        os << std::right << std::setw(static_cast<int>(width[i])) << row[i];
    }
    os << '\n';
  }
}

std::string num6(double v) {
  std::ostringstream s;
  const double a = std::abs(v);
  if (v != 0 && (a < 1e-4 || a >= 1e7)) {
    s << std::setprecision(8) << v;
    return s.str();
  }
  // fixed decimals, widened for small magnitudes so at least six
  // significant digits survive
  int decimals = 6;
  for (double m = a; m > 0 && m < 0.1 && decimals < 10; m *= 10) ++decimals;
  s << std::setprecision(decimals) << std::fixed << v;
  return s.str();
}

std::string numg(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string percent1(double v) {
  std::ostringstream s;
  s << std::setprecision(1) << std::fixed << 100.0 * v << '%';
  return s.str();
}

}  // namespace binlaw::cli
