#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "binlaw/conformance.hpp"
#include "binlaw/generate.hpp"
#include "binlaw/report_json.hpp"
#include "binlaw/tally.hpp"
#include "binlaw/theory.hpp"
#include "binlaw/version.hpp"
#include "reproduce.hpp"
#include "table_io.hpp"

namespace {

using binlaw::cli::io_error;
using binlaw::cli::num6;
using binlaw::cli::numg;
using binlaw::cli::TextTable;
using nlohmann::json;

constexpr double kDefaultStart = 0.0;
constexpr double kDefaultWidth = 0.0005;  // standardization defaults for all schemes

std::string default_format() {
  if (const char* env = std::getenv("BINLAW_FORMAT")) {
    const std::string f = env;
    if (f == "human" || f == "json" || f == "tsv") return f;
  }
  return "human";
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw io_error("cannot open output file: " + path);
  return file;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string input;
  std::string column;
  int bins = 0;
  double factor = 0.0;
  std::vector<double> factors;
  double start = kDefaultStart;
  double width = kDefaultWidth;
  bool defaulted_geometry = true;
  double threshold = binlaw::kDefaultMadThreshold;
  bool per_cycle = false;
  std::uint64_t min_cycle_count = binlaw::kDefaultPerCycleMinCount;
  bool lenient = false;
  std::string format;
  std::string output;
};

void print_analyze_human(const binlaw::AnalysisReport& r, std::uint64_t skipped,
                         bool defaulted_geometry, std::ostream& os) {
  const auto& spec = r.scheme;
  os << "scheme: D=" << spec.bins;
  if (spec.is_constant())
    os << " F=" << numg(spec.constant_factor());
  else
    os << " F=varying(" << spec.factor_vector().size() << " factors)";
  os << " S=" << numg(spec.start) << " W=" << numg(spec.width);
  if (defaulted_geometry) os << "   (standardized defaults S=0, W=0.0005)";
  os << '\n';

  const auto& t = r.tally;
  os << "values: " << t.total_count() << " read";
  if (skipped) os << ", " << skipped << " malformed lines skipped";
  os << "; " << t.excluded_nonpositive << " nonpositive excluded, " << t.below_range
     << " below range, " << t.above_range << " above range; coverage "
     << num6(r.conformance.coverage) << '\n';

  TextTable table({"rank", "proportion", "theory", "deviation"});
  for (std::size_t d = 0; d < r.proportions.size(); ++d)
    table.add_row({std::to_string(d + 1), num6(r.proportions[d]),
                   num6(r.conformance.theoretical[d]),
                   num6(r.proportions[d] - r.conformance.theoretical[d])});
  table.print(os);

  if (!r.per_cycle.empty()) {
    os << "per-cycle proportions (cycles holding >= " << r.per_cycle.front().count << std::flush;
    os << " values):\n";
    std::vector<std::string> header{"cycle", "count"};
    for (int d = 1; d <= spec.bins; ++d) header.push_back("rank " + std::to_string(d));
    TextTable pct(std::move(header));
    for (const auto& cp : r.per_cycle) {
      std::vector<std::string> cells{std::to_string(cp.cycle_index), std::to_string(cp.count)};
      for (double p : cp.proportions) cells.push_back(num6(p));
      pct.add_row(std::move(cells));
    }
    pct.print(os);
  }

  os << "theory: " << r.conformance.source.describe() << '\n';
  const auto& m = r.conformance.metrics;
  os << "metrics: mad=" << num6(m.mad) << " max=" << num6(m.max_abs_dev)
     << " ssd=" << num6(m.ssd) << '\n';
  os << "verdict: "
     << (r.conformance.verdict == binlaw::Verdict::conforming ? "conforming" : "non-conforming")
     << " (mad threshold " << num6(r.conformance.threshold) << ")\n";
}

void print_analyze_tsv(const binlaw::AnalysisReport& r, std::ostream& os) {
  os << "rank\tproportion\ttheory\tdeviation\n";
  for (std::size_t d = 0; d < r.proportions.size(); ++d)
    os << (d + 1) << '\t' << num6(r.proportions[d]) << '\t'
       << num6(r.conformance.theoretical[d]) << '\t'
       << num6(r.proportions[d] - r.conformance.theoretical[d]) << '\n';
  const auto& m = r.conformance.metrics;
  os << "# mad\t" << num6(m.mad) << "\n# max_abs_dev\t" << num6(m.max_abs_dev) << "\n# ssd\t"
     << num6(m.ssd) << "\n# verdict\t"
     << (r.conformance.verdict == binlaw::Verdict::conforming ? "conforming" : "non_conforming")
     << '\n';
}

int run_analyze(const AnalyzeArgs& args) {
  binlaw::cli::ReadOptions opts;
  if (!args.column.empty()) opts.column = args.column;
  opts.lenient = args.lenient;
  const auto file = binlaw::cli::read_numeric_file(args.input, opts);
  if (args.lenient && file.skipped_lines)
    std::cerr << "note: skipped " << file.skipped_lines << " malformed lines\n";

  binlaw::BinSchemeSpec spec;
  spec.bins = args.bins;
  if (!args.factors.empty())
    spec.expansion = binlaw::VectorExpansion{args.factors};
  else
    spec.expansion = binlaw::ConstantExpansion{args.factor};
  spec.start = args.start;
  spec.width = args.width;
  binlaw::require_valid(spec);

  binlaw::AnalysisReport r;
  r.scheme = spec;
  r.tally = binlaw::tally(spec, file.values);
  r.proportions = binlaw::proportions(r.tally);  // throws empty_data_error if nothing in range
  if (args.per_cycle) r.per_cycle = binlaw::per_cycle_proportions(r.tally, args.min_cycle_count);

  binlaw::TheorySource source;
  auto law = binlaw::matching_law(spec, source);
  const std::uint64_t positive = r.tally.total_count() - r.tally.excluded_nonpositive;
  const double coverage =
      positive ? static_cast<double>(r.tally.in_range_count()) / static_cast<double>(positive)
               : 0.0;
  r.conformance = binlaw::make_report(spec, r.proportions, std::move(law), source, positive,
                                      coverage, args.threshold);

  std::ofstream out_file;
  std::ostream& os = open_output(out_file, args.output);
  if (args.format == "json")
    os << binlaw::to_json(r).dump(2) << '\n';
  else if (args.format == "tsv")
    print_analyze_tsv(r, os);
  else
    print_analyze_human(r, file.skipped_lines, args.defaulted_geometry, os);
  return 0;
}

// ---------------------------------------------------------------- law

struct LawArgs {
  int bins = 0;
  double factor = 0.0;
  int base = 0;
  int order = 1;
  int flat = 0;
  std::string format;
  std::string output;
};

int run_law(const LawArgs& args) {
  std::vector<double> vec;
  std::string label;
  if (args.flat > 0) {
    vec = binlaw::general_law_vector(args.flat, 1.0);
    label = "flat-limit D=" + std::to_string(args.flat);
  } else if (args.base > 0) {
    if (args.order == 2) {
      vec = binlaw::benford_second_order(args.base);
      label = "benford-second-order base=" + std::to_string(args.base);
    } else {
      vec = binlaw::benford_vector(args.base);
      label = "benford base=" + std::to_string(args.base);
    }
  } else {
    vec = binlaw::general_law_vector(args.bins, args.factor);
    label = "general-law D=" + std::to_string(args.bins) + " F=" + numg(args.factor);
  }

  std::ofstream out_file;
  std::ostream& os = open_output(out_file, args.output);
  if (args.format == "json") {
    os << json{{"source", label}, {"vector", vec}}.dump(2) << '\n';
  } else if (args.format == "tsv") {
    os << "rank\tprobability\n";
    for (std::size_t i = 0; i < vec.size(); ++i) os << i + (args.order == 2 && args.base > 0 ? 0 : 1) << '\t' << num6(vec[i]) << '\n';
  } else {
    os << label << '\n';
    TextTable table({"rank", "probability"});
    const std::size_t first = (args.order == 2 && args.base > 0) ? 0 : 1;
    for (std::size_t i = 0; i < vec.size(); ++i)
      table.add_row({std::to_string(i + first), num6(vec[i])});
    table.print(os);
  }
  return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string family;
  std::uint64_t n = 100000;
  std::uint64_t seed = 42;
  std::string out;
  std::string meta_path;
  double a = 0, b = 0, location = 0, shape = 0, base = 0, rate = 0;
  double lo = 0, mode = 0, hi = 0, top = 0, mean = 0, sd = 0;
  int depth = 0;
};

int run_simulate(const SimulateArgs& s, const CLI::App* cmd) {
  const auto got = [&](const char* name) { return cmd->count(name) > 0; };
  binlaw::GeneratorSpec spec;
  spec.family = binlaw::family_from_name(s.family);
  spec.count = s.n;
  spec.seed = s.seed;
  json params;
  switch (spec.family) {
    case binlaw::Family::kx:
      if (!got("--a") || !got("--b"))
        throw CLI::ValidationError("simulate", "family kx needs --a and --b");
      spec.params = {s.a, s.b};
      params = {{"a", s.a}, {"b", s.b}};
      break;
    case binlaw::Family::lognormal:
      if (!got("--location") || !got("--shape"))
        throw CLI::ValidationError("simulate", "family lognormal needs --location and --shape");
      spec.params = {s.location, s.shape};
      params = {{"location", s.location}, {"shape", s.shape}};
      break;
    case binlaw::Family::exp_growth:
      if (!got("--base") || !got("--rate"))
        throw CLI::ValidationError("simulate", "family exp-growth needs --base and --rate");
      spec.params = {s.base, s.rate};
      params = {{"base", s.base}, {"rate", s.rate}};
      break;
    case binlaw::Family::log_triangular:
      if (!got("--lo") || !got("--mode") || !got("--hi"))
        throw CLI::ValidationError("simulate",
                                   "family log-triangular needs --lo, --mode and --hi");
      spec.params = {s.lo, s.mode, s.hi};
      params = {{"lo", s.lo}, {"mode", s.mode}, {"hi", s.hi}};
      break;
    case binlaw::Family::chain_uniform:
      if (!got("--depth") || !got("--top"))
        throw CLI::ValidationError("simulate", "family chain-uniform needs --depth and --top");
      spec.params = {static_cast<double>(s.depth), s.top};
      params = {{"depth", s.depth}, {"top", s.top}};
      break;
    case binlaw::Family::uniform:
      if (!got("--a") || !got("--b"))
        throw CLI::ValidationError("simulate", "family uniform needs --a and --b");
      spec.params = {s.a, s.b};
      params = {{"a", s.a}, {"b", s.b}};
      break;
    case binlaw::Family::normal_positive:
      if (!got("--mean") || !got("--sd"))
        throw CLI::ValidationError("simulate", "family normal needs --mean and --sd");
      spec.params = {s.mean, s.sd};
      params = {{"mean", s.mean}, {"sd", s.sd}};
      break;
  }

  const auto values = binlaw::generate(spec);
  binlaw::cli::write_numeric_file(s.out, values);

  json meta{{"family", s.family},
            {"params", params},
            {"n", spec.count},
            {"rng", binlaw::kRngAlgorithm},
            {"version", binlaw::kVersion}};
  if (spec.family == binlaw::Family::exp_growth)
    meta["seed_ignored"] = true;  // deterministic sequence
  else
    meta["seed"] = spec.seed;
  if (!s.meta_path.empty()) {
    std::ofstream mf(s.meta_path);
    if (!mf) throw io_error("cannot open metadata file: " + s.meta_path);
    mf << meta.dump(2) << '\n';
  } else {
    std::cerr << meta.dump() << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- series

struct SeriesArgs {
  int bins = 0;
  double factor = 0.0;
  std::int64_t n_max = 200;
  double tolerance = 5e-4;
  std::string output;
};

int run_series(const SeriesArgs& args) {
  std::ofstream out_file;
  std::ostream& os = open_output(out_file, args.output);

  const auto limit = binlaw::general_law_vector(args.bins, args.factor);
  std::vector<std::string> header{"N"};
  for (int d = 1; d <= args.bins; ++d) header.push_back("rank " + std::to_string(d));
  header.push_back("max gap");
  TextTable table(std::move(header));

  const auto add_row = [&](std::int64_t n) {
    const auto v = binlaw::series_vector(args.bins, args.factor, n);
    double gap = 0.0;
    std::vector<std::string> cells{std::to_string(n)};
    for (std::size_t i = 0; i < v.size(); ++i) {
      cells.push_back(num6(v[i]));
      gap = std::max(gap, std::abs(v[i] - limit[i]));
    }
    cells.push_back(num6(gap));
    table.add_row(std::move(cells));
  };

  // 1..5, then 10, 20, 50, 100, ... up to n_max
  std::int64_t n = 1;
  for (; n <= std::min<std::int64_t>(5, args.n_max); ++n) add_row(n);
  for (std::int64_t step : {10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000})
    if (step > 5 && step <= args.n_max) add_row(step);
  if (args.n_max > 5 && args.n_max != 10 && args.n_max % 10 != 0) add_row(args.n_max);

  std::vector<std::string> law_cells{"limit"};
  for (double v : limit) law_cells.push_back(num6(v));
  law_cells.push_back("-");
  table.add_row(std::move(law_cells));
  table.print(os);

  const auto profile =
      binlaw::convergence_profile(args.bins, args.factor, args.tolerance, args.n_max);
  if (profile.converged)
    os << "converged: N=" << profile.cycles_reached << " reaches max gap "
       << num6(profile.max_abs_gap) << " <= tolerance " << num6(args.tolerance) << '\n';
  else
    os << "not converged by N=" << profile.cycles_reached << ": max gap "
       << num6(profile.max_abs_gap) << " > tolerance " << num6(args.tolerance) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bin-scheme measurement of relative quantities in positive data"};
  app.set_version_flag("--version", binlaw::kVersion);
  app.require_subcommand(1);

  // analyze
  AnalyzeArgs an;
  an.format = default_format();
  auto* analyze = app.add_subcommand("analyze", "tally a numeric file under a bin scheme");
  analyze->add_option("input", an.input, "input file (one number per line, or CSV)")->required();
  analyze->add_option("--column", an.column, "CSV column name or 1-based index");
  analyze->add_option("--bins", an.bins, "bins per cycle (D)")->required();
  auto* factor_opt = analyze->add_option("--factor", an.factor, "constant inflation factor (F)");
  auto* factors_opt = analyze->add_option("--factors", an.factors,
                                          "comma-separated factor vector (one per expansion)");
  factors_opt->delimiter(',');
  factor_opt->excludes(factors_opt);
  analyze->add_option("--start", an.start, "scheme start (S), default 0");
  analyze->add_option("--width", an.width, "cycle-0 bin width (W), default 0.0005");
  analyze->add_option("--threshold", an.threshold, "conformance mad threshold (default 0.010)");
  analyze->add_flag("--per-cycle", an.per_cycle, "include the per-cycle proportion table");
  analyze->add_option("--min-cycle-count", an.min_cycle_count,
                      "minimum values for a cycle to appear in the per-cycle table");
  analyze->add_flag("--lenient", an.lenient, "skip malformed lines instead of failing");
  analyze->add_option("--format", an.format, "human | json | tsv")
      ->check(CLI::IsMember({"human", "json", "tsv"}));
  analyze->add_option("--output", an.output, "write the report here instead of stdout");

  // law
  LawArgs law;
  law.format = default_format();
  auto* law_cmd = app.add_subcommand("law", "print a theoretical proportion vector");
  auto* law_bins = law_cmd->add_option("--bins", law.bins, "bins (D) for the general law");
  auto* law_factor = law_cmd->add_option("--factor", law.factor, "factor (F) for the general law");
  auto* law_base = law_cmd->add_option("--base", law.base, "digit-law base");
  law_cmd->add_option("--order", law.order, "digit order: 1 (first) or 2 (second)")
      ->check(CLI::IsMember({1, 2}));
  auto* law_flat = law_cmd->add_option("--flat", law.flat, "flat-scheme bin count");
  law_cmd->add_option("--format", law.format, "human | json | tsv")
      ->check(CLI::IsMember({"human", "json", "tsv"}));
  law_cmd->add_option("--output", law.output, "write here instead of stdout");
  law_bins->needs(law_factor);
  law_factor->needs(law_bins);
  law_base->excludes(law_bins)->excludes(law_flat);
  law_flat->excludes(law_bins)->excludes(law_base);

  // simulate
  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "write synthetic data from a seeded generator");
  simulate
      ->add_option("--family", sim.family,
                   "kx | lognormal | exp-growth | log-triangular | chain-uniform | uniform | normal")
      ->required();
  simulate->add_option("--n", sim.n, "sample count (default 100000)");
  simulate->add_option("--seed", sim.seed, "rng seed (default 42)");
  simulate->add_option("--out", sim.out, "output data file (one value per line)")->required();
  simulate->add_option("--meta", sim.meta_path, "write generator metadata JSON here");
  simulate->add_option("--a", sim.a, "kx/uniform lower parameter");
  simulate->add_option("--b", sim.b, "kx/uniform upper parameter");
  simulate->add_option("--location", sim.location, "lognormal location");
  simulate->add_option("--shape", sim.shape, "lognormal shape");
  simulate->add_option("--base", sim.base, "exp-growth base");
  simulate->add_option("--rate", sim.rate, "exp-growth factor per step");
  simulate->add_option("--lo", sim.lo, "log-triangular low vertex (log10)");
  simulate->add_option("--mode", sim.mode, "log-triangular mode (log10)");
  simulate->add_option("--hi", sim.hi, "log-triangular high vertex (log10)");
  simulate->add_option("--depth", sim.depth, "chain-uniform nesting depth");
  simulate->add_option("--top", sim.top, "chain-uniform innermost upper bound");
  simulate->add_option("--mean", sim.mean, "normal mean");
  simulate->add_option("--sd", sim.sd, "normal standard deviation");

  // series
  SeriesArgs ser;
  auto* series = app.add_subcommand("series", "finite-cycle series vs the closed-form limit");
  series->add_option("--bins", ser.bins, "bins (D)")->required();
  series->add_option("--factor", ser.factor, "factor (F)")->required();
  series->add_option("--n-max", ser.n_max, "largest cycle count (default 200)");
  series->add_option("--tolerance", ser.tolerance, "convergence tolerance (default 5e-4)");
  series->add_option("--output", ser.output, "write here instead of stdout");

  // reproduce
  std::string figure;
  std::uint64_t rep_seed = 42, rep_n = 100000;
  std::string rep_format = default_format();
  std::string rep_output;
  auto* reproduce = app.add_subcommand("reproduce", "re-create a published table from generators");
  reproduce
      ->add_option("figure", figure,
                   "fig1 | fig2 | fig3 | fig4 | fig5 | fig6 | fig7 | schemeA | schemeB | second_order")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "schemeA",
                             "schemeB", "second_order"}));
  reproduce->add_option("--seed", rep_seed, "rng seed (default 42)");
  reproduce->add_option("--n", rep_n, "samples per simulated row (default 100000)");
  reproduce->add_option("--format", rep_format, "human | json | tsv")
      ->check(CLI::IsMember({"human", "json", "tsv"}));
  reproduce->add_option("--output", rep_output, "write here instead of stdout");

  try {
    app.parse(argc, argv);
    an.defaulted_geometry = analyze->count("--start") == 0 && analyze->count("--width") == 0;
    if (analyze->parsed() && analyze->count("--factor") == 0 && analyze->count("--factors") == 0)
      throw CLI::ValidationError("analyze", "one of --factor or --factors is required");
    if (law_cmd->parsed() && law.bins == 0 && law.base == 0 && law.flat == 0)
      throw CLI::ValidationError("law", "one of --bins/--factor, --base, --flat is required");

    if (analyze->parsed()) return run_analyze(an);
    if (law_cmd->parsed()) return run_law(law);
    if (simulate->parsed()) return run_simulate(sim, simulate);
    if (series->parsed()) return run_series(ser);
    if (reproduce->parsed()) {
      std::ofstream out_file;
      std::ostream& os = open_output(out_file, rep_output);
      binlaw::cli::reproduce_figure(figure, rep_seed, rep_n, rep_format, os);
      return 0;
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage error
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const binlaw::empty_data_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
