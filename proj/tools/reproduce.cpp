#include "reproduce.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "binlaw/conformance.hpp"
#include "binlaw/generate.hpp"
#include "binlaw/tally.hpp"
#include "binlaw/theory.hpp"
#include "table_io.hpp"

namespace binlaw::cli {

namespace {

using nlohmann::json;

struct Row {
  std::string label;
  std::vector<double> proportions;  // empty => not reproducible
  std::string note;
};

struct FigureTable {
  std::string title;
  std::string scheme_line;
  std::vector<std::string> bin_labels;
  std::vector<Row> rows;
  std::vector<double> law;
  std::string law_label;
};

const std::vector<double> kFig5Factors{2, 3, 4, 2, 5, 3, 6, 3, 5, 7,
                                       4, 2, 3, 2, 7, 8, 9, 7, 3, 6};
const std::vector<double> kFig6Factors{2.37, 3.08, 1.55, 4.17, 1.18, 2.35, 1.82,
                                       5.07, 3.39, 2.04, 4.82, 7.07, 2.33, 6.67,
                                       3.01, 1.67, 2.97, 3.33, 6.08, 2.25};

struct GeneratorRow {
  std::string label;
  std::function<std::vector<double>(std::uint64_t n, std::uint64_t seed)> make;
};

// The simulable rows shared by the four constant-factor tables. Each row
// draws from its own seed offset so rows are independent.
std::vector<GeneratorRow> logarithmic_rows() {
  return {
      {"LOG sym. triangular (1,3,5)",
       [](std::uint64_t n, std::uint64_t s) { return sample_log_triangular(1, 3, 5, n, s); }},
      {"k/x over (1, 1000000)",
       [](std::uint64_t n, std::uint64_t s) { return sample_kx(0, 6, n, s); }},
      {"exp. growth (base 1.5, 1%)",
       [](std::uint64_t, std::uint64_t) { return exp_growth(1.5, 1.01, 10000); }},
      {"lognormal (loc 5, shape 1)",
       [](std::uint64_t n, std::uint64_t s) { return sample_lognormal(5, 1, n, s); }},
      {"lognormal (loc 9.3, shape 1.7)",
       [](std::uint64_t n, std::uint64_t s) { return sample_lognormal(9.3, 1.7, n, s); }},
      {"chain U(0,U(0,U(0,U(0,U(0,5666)))))",
       [](std::uint64_t n, std::uint64_t s) { return sample_chain_uniform(5, 5666, n, s); }},
  };
}

std::vector<Row> external_data_notes() {
  return {
      {"time between earthquakes", {}, "not reproducible - requires external data"},
      {"USA population centers", {}, "not reproducible - requires external data"},
      {"varied data (Hill's model)", {}, "not reproducible - requires external data"},
  };
}

std::vector<double> run_scheme(const BinSchemeSpec& spec, const std::vector<double>& data) {
  return proportions(tally(spec, data));
}

FigureTable constant_scheme_table(const std::string& title, const BinSchemeSpec& spec,
                                  const std::vector<double>& law, const std::string& law_label,
                                  std::uint64_t seed, std::uint64_t n, bool with_contrast) {
  FigureTable t;
  t.title = title;
  t.scheme_line = "scheme: D=" + std::to_string(spec.bins);
  if (spec.is_constant())
    t.scheme_line += " F=" + numg(spec.constant_factor());
  else
    t.scheme_line += " F=varying(" + std::to_string(spec.factor_vector().size()) + " factors)";
  t.scheme_line += " S=" + numg(spec.start) + " W=" + numg(spec.width);
  for (int d = 1; d <= spec.bins; ++d) t.bin_labels.push_back("bin " + std::to_string(d));

  std::uint64_t row_seed = seed;
  for (const auto& g : logarithmic_rows())
    t.rows.push_back({g.label, run_scheme(spec, g.make(n, row_seed++)), ""});
  for (auto& note : external_data_notes()) t.rows.push_back(std::move(note));
  if (with_contrast) {
    t.rows.push_back({"(non-log) uniform (5, 78000)",
                      run_scheme(spec, sample_uniform(5, 78000, n, row_seed++)), ""});
    t.rows.push_back({"(non-log) normal (177, 40)",
                      run_scheme(spec, sample_normal_positive(177, 40, n, row_seed++)), ""});
    t.rows.push_back(
        {"(non-log) k/x over (1, 10)", run_scheme(spec, sample_kx(0, 1, n, row_seed++)), ""});
    t.rows.push_back({"(non-log) US county area", {}, "not reproducible - requires external data"});
    t.rows.push_back({"(non-log) payroll data", {}, "not reproducible - requires external data"});
  }
  t.law = law;
  t.law_label = law_label;
  return t;
}

FigureTable scheme_summary_table(const std::string& title, const BinSchemeSpec& spec,
                                 std::uint64_t seed, std::uint64_t n) {
  FigureTable t = constant_scheme_table(title, spec, general_law_vector(spec.bins, spec.constant_factor()),
                                        "limit law", seed, n, false);
  // condense to the average row, matching the published summary
  std::vector<double> avg(static_cast<std::size_t>(spec.bins), 0.0);
  int counted = 0;
  for (const auto& row : t.rows) {
    if (row.proportions.empty()) continue;
    for (std::size_t i = 0; i < avg.size(); ++i) avg[i] += row.proportions[i];
    ++counted;
  }
  for (double& v : avg) v /= counted;
  FigureTable out;
  out.title = title;
  out.scheme_line = t.scheme_line;
  out.bin_labels = t.bin_labels;
  out.rows.push_back({"average of " + std::to_string(counted) + " simulated rows", avg, ""});
  out.law = t.law;
  out.law_label = "limit law";
  return out;
}

FigureTable fig7_table(std::uint64_t seed, std::uint64_t n) {
  FigureTable t;
  t.title = "first-bin share vs inflation factor (7 bins, W=0.0039)";
  t.scheme_line =
      "one lognormal (loc 9.3, shape 1.7) sample, n=" + std::to_string(n) +
      "; census row replaced by its closest generator";
  const auto data = sample_lognormal(9.3, 1.7, n, seed);
  for (int d = 1; d <= 7; ++d) t.bin_labels.push_back("bin " + std::to_string(d));
  for (int f = 1; f <= 12; ++f) {
    const BinSchemeSpec spec{7, ConstantExpansion{static_cast<double>(f)}, 0.0, 0.0039};
    t.rows.push_back({"F = " + std::to_string(f), run_scheme(spec, data), ""});
  }
  return t;
}

FigureTable second_order_table(std::uint64_t seed, std::uint64_t n) {
  FigureTable t;
  t.title = "second-order digit structure as varying-factor schemes (base 10)";
  t.scheme_line = "k/x over (1, 1000000) sample, n=" + std::to_string(n) +
                  "; population row replaced by its closest generator";
  const auto data = sample_kx(0, 6, n, seed);
  for (int s = 0; s < 10; ++s) t.bin_labels.push_back("digit " + std::to_string(s));
  struct Cfg {
    double start, width;
    int periods;
  };
  for (const auto& cfg : {Cfg{0.5, 0.07, 8}, Cfg{0.0, 0.30, 8}, Cfg{0.63, 0.00045, 10}}) {
    const auto spec = second_order_scheme(10, cfg.periods, cfg.start, cfg.width);
    t.rows.push_back({"S=" + numg(cfg.start) + " W=" + numg(cfg.width),
                      run_scheme(spec, data), ""});
  }
  t.law = benford_second_order(10);
  t.law_label = "second-order digit law";
  return t;
}

void print_human(const FigureTable& t, std::ostream& os) {
  os << t.title << '\n' << t.scheme_line << '\n';
  std::vector<std::string> header{"data set"};
  header.insert(header.end(), t.bin_labels.begin(), t.bin_labels.end());
  if (!t.law.empty()) header.push_back("max dev");
  TextTable table(std::move(header));
  for (const auto& row : t.rows) {
    std::vector<std::string> cells{row.label};
    if (row.proportions.empty()) {
      cells.push_back(row.note);
    } else {
      double dev = 0.0;
      for (std::size_t i = 0; i < row.proportions.size(); ++i) {
        cells.push_back(percent1(row.proportions[i]));
        if (!t.law.empty()) dev = std::max(dev, std::abs(row.proportions[i] - t.law[i]));
      }
      if (!t.law.empty()) cells.push_back(percent1(dev));
    }
    table.add_row(std::move(cells));
  }
  if (!t.law.empty()) {
    std::vector<std::string> cells{t.law_label};
    for (double v : t.law) cells.push_back(percent1(v));
    cells.push_back("-");
    table.add_row(std::move(cells));
  }
  table.print(os);
}

void print_json(const FigureTable& t, std::ostream& os) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r{{"label", row.label}};
    if (row.proportions.empty())
      r["note"] = row.note;
    else
      r["proportions"] = row.proportions;
    rows.push_back(std::move(r));
  }
  json out{{"title", t.title}, {"scheme", t.scheme_line}, {"rows", rows}};
  if (!t.law.empty()) out["law"] = {{"label", t.law_label}, {"vector", t.law}};
  os << out.dump(2) << '\n';
}

void print_tsv(const FigureTable& t, std::ostream& os) {
  os << "label";
  for (const auto& b : t.bin_labels) os << '\t' << b;
  os << '\n';
  const auto line = [&](const std::string& label, const std::vector<double>& v) {
    os << label;
    for (double x : v) os << '\t' << num6(x);
    os << '\n';
  };
  for (const auto& row : t.rows)
    if (!row.proportions.empty()) line(row.label, row.proportions);
  if (!t.law.empty()) line(t.law_label, t.law);
}

}  // namespace

void reproduce_figure(const std::string& figure, std::uint64_t seed, std::uint64_t n,
                      const std::string& format, std::ostream& os) {
  FigureTable t;
  const BinSchemeSpec schemeA{4, ConstantExpansion{8.0}, 0.0, 0.0008};
  const BinSchemeSpec schemeB{7, ConstantExpansion{3.0}, 0.0, 0.0008};

  if (figure == "fig1") {
    t = constant_scheme_table("four-bin scheme, factor 8", schemeA, general_law_vector(4, 8),
                              "limit law", seed, n, false);
  } else if (figure == "fig2") {
    t = constant_scheme_table("seven-bin scheme, factor 3", schemeB, general_law_vector(7, 3),
                              "limit law", seed, n, false);
  } else if (figure == "fig3") {
    t = constant_scheme_table("nine-bin scheme, factor 10 (near-origin start, narrow width)",
                              {9, ConstantExpansion{10.0}, 0.033, 0.07},
                              general_law_vector(9, 10), "LOG10(1+1/d)", seed, n, false);
  } else if (figure == "fig4") {
    t = constant_scheme_table("nine-bin scheme, factor 10 (late start, crude width)",
                              {9, ConstantExpansion{10.0}, 5.0, 311.0},
                              general_law_vector(9, 10), "LOG10(1+1/d)", seed, n, false);
  } else if (figure == "fig5") {
    t = constant_scheme_table("five-bin scheme, arbitrary integer factors",
                              {5, VectorExpansion{kFig5Factors}, 0.0, 0.007},
                              general_law_vector(5, f_avg(kFig5Factors)),
                              "law at mean factor 4.55 (diagnostic)", seed, n, true);
  } else if (figure == "fig6") {
    t = constant_scheme_table("six-bin scheme, arbitrary fractional factors",
                              {6, VectorExpansion{kFig6Factors}, 0.0, 0.037},
                              general_law_vector(6, f_avg(kFig6Factors)),
                              "law at mean factor 3.36 (diagnostic)", seed, n, true);
  } else if (figure == "fig7") {
    t = fig7_table(seed, n);
  } else if (figure == "schemeA") {
    t = scheme_summary_table("four-bin scheme summary", schemeA, seed, n);
  } else if (figure == "schemeB") {
    t = scheme_summary_table("seven-bin scheme summary", schemeB, seed, n);
  } else if (figure == "second_order") {
    t = second_order_table(seed, n);
  } else {
    throw std::invalid_argument("unknown figure id: " + figure);
  }

  if (format == "json")
    print_json(t, os);
  else if (format == "tsv")
    print_tsv(t, os);
  else
    print_human(t, os);
}

}  // namespace binlaw::cli
