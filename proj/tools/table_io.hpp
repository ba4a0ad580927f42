#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace binlaw::cli {

// I/O failures (unreadable/unwritable paths); exit code 2.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReadOptions {
  // CSV column selected by header name or 1-based index; empty means the
  // input is one number per line.
  std::optional<std::string> column;
  bool lenient = false;  // skip malformed lines instead of failing
};

struct NumericFile {
  std::vector<double> values;
  std::uint64_t skipped_lines = 0;  // lenient mode only
};

// Reads numbers from a plain-text or CSV file. Blank lines are ignored.
// Malformed numeric content raises std::invalid_argument naming the line,
// unless opts.lenient counts and skips it.
NumericFile read_numeric_file(const std::string& path, const ReadOptions& opts);

void write_numeric_file(const std::string& path, std::span<const double> values);

// One aligned-column text table.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  void print(std::ostream& os) const;

 private:
  std::vector<std::vector<std::string>> rows_;
};

// value formatted with six significant digits (report precision)
std::string num6(double v);

// compact parameter formatting ("8", "0.0005")
std::string numg(double v);

std::string percent1(double v);  // "48.6%" style for figure tables

}  // namespace binlaw::cli
