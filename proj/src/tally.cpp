#include "binlaw/tally.hpp"

#include <algorithm>
#include <limits>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace binlaw {

namespace {

// Precomputed assignment state, shared read-only across threads. Constant
// schemes cache the closed-form cycle starts/widths for the first cycles so
// the per-value path needs no pow; cycles past the cache (astronomically
// large x) fall back to the identical closed form.
struct SchemeIndex {
  static constexpr std::size_t kCacheCycles = 256;

  const BinSchemeSpec& spec;
  bool constant;
  double factor = 1.0;
  double log_factor = 0.0;
  // constant: closed-form starts/widths for cycles [0, size); vector: the
  // full geometry, with one extra start marking the end of the final cycle.
  std::vector<double> cycle_starts;
  std::vector<double> cycle_widths;

  explicit SchemeIndex(const BinSchemeSpec& s) : spec(s), constant(s.is_constant()) {
    if (constant) {
      factor = s.constant_factor();
      log_factor = std::log1p(factor - 1.0);
      if (factor != 1.0) {
        cycle_starts.reserve(kCacheCycles);
        cycle_widths.reserve(kCacheCycles);
        for (std::size_t c = 0; c < kCacheCycles; ++c) {
          const double start = closed_form_start(static_cast<double>(c));
          if (!std::isfinite(start)) break;
          cycle_starts.push_back(start);
          cycle_widths.push_back(spec.width * std::pow(factor, static_cast<double>(c)));
        }
      }
    } else {
      const auto& fs = s.factor_vector();
      cycle_starts.reserve(fs.size() + 2);
      cycle_widths.reserve(fs.size() + 1);
      double start = s.start, width = s.width;
      for (std::size_t c = 0; c <= fs.size(); ++c) {
        cycle_starts.push_back(start);
        cycle_widths.push_back(width);
        start += s.bins * width;
        if (c < fs.size()) width *= fs[c];
      }
      cycle_starts.push_back(start);
    }
  }

  double closed_form_start(double c) const {
    if (factor == 1.0) return spec.start + c * spec.bins * spec.width;
    return spec.start + spec.bins * spec.width * (std::pow(factor, c) - 1.0) / (factor - 1.0);
  }

  double const_cycle_start(double c) const {
    const auto ci = static_cast<std::size_t>(c);
    if (factor != 1.0 && c >= 0 && ci < cycle_starts.size()) return cycle_starts[ci];
    return closed_form_start(c);
  }

  double const_cycle_width(double c) const {
    const auto ci = static_cast<std::size_t>(c);
    if (factor != 1.0 && c >= 0 && ci < cycle_widths.size()) return cycle_widths[ci];
    return spec.width * std::pow(factor, c);
  }

  AssignResult assign(double x) const {
    if (!(x > 0.0)) throw std::invalid_argument("assign: x must be positive");
    if (x < spec.start) return {AssignResult::Kind::below_range, {}};

    double c, start, width;
    if (constant) {
      if (factor == 1.0) {
        c = std::floor((x - spec.start) / (spec.bins * spec.width));
      } else {
        // Closed-form index estimate, then a local scan fixes any
        // floating-point off-by-one against the normative cycle starts.
        const double arg = (x - spec.start) * (factor - 1.0) / (spec.bins * spec.width);
        c = std::floor(std::log1p(arg) / log_factor);
      }
      if (c < 0) c = 0;
      while (c > 0 && x < const_cycle_start(c)) --c;
      while (x >= const_cycle_start(c + 1)) ++c;
      start = const_cycle_start(c);
      width = const_cycle_width(c);
    } else {
      if (x >= cycle_starts.back()) return {AssignResult::Kind::above_range, {}};
      const auto it = std::upper_bound(cycle_starts.begin(), cycle_starts.end() - 1, x);
      const std::size_t ci = static_cast<std::size_t>(it - cycle_starts.begin()) - 1;
      c = static_cast<double>(ci);
      start = cycle_starts[ci];
      width = cycle_widths[ci];
    }

    int rank = 1 + static_cast<int>(std::floor((x - start) / width));
    rank = std::clamp(rank, 1, spec.bins);
    return {AssignResult::Kind::assigned, {static_cast<std::int64_t>(c), rank}};
  }
};

void accumulate(BinTally& t, const SchemeIndex& index, std::span<const double> data) {
  std::int64_t hot_cycle = std::numeric_limits<std::int64_t>::min();
  std::vector<std::uint64_t>* hot_counts = nullptr;
  for (double x : data) {
    if (!(x > 0.0)) {
      ++t.excluded_nonpositive;
      continue;
    }
    const AssignResult r = index.assign(x);
    switch (r.kind) {
      case AssignResult::Kind::below_range: ++t.below_range; break;
      case AssignResult::Kind::above_range: ++t.above_range; break;
      case AssignResult::Kind::assigned: {
        if (r.bin.cycle_index != hot_cycle) {
          hot_counts = &t.per_cycle_counts[r.bin.cycle_index];
          if (hot_counts->empty())
            hot_counts->assign(static_cast<std::size_t>(t.scheme.bins), 0);
          hot_cycle = r.bin.cycle_index;
        }
        ++(*hot_counts)[static_cast<std::size_t>(r.bin.rank - 1)];
        break;
      }
    }
  }
}

}  // namespace

AssignResult assign(const BinSchemeSpec& spec, double x) {
  require_valid(spec);
  return SchemeIndex(spec).assign(x);
}

std::uint64_t BinTally::in_range_count() const {
  std::uint64_t n = 0;
  for (const auto& [c, counts] : per_cycle_counts)
    for (std::uint64_t v : counts) n += v;
  return n;
}

std::uint64_t BinTally::total_count() const {
  return in_range_count() + below_range + above_range + excluded_nonpositive;
}

std::vector<std::uint64_t> BinTally::rank_totals() const {
  std::vector<std::uint64_t> totals(static_cast<std::size_t>(scheme.bins), 0);
  for (const auto& [c, counts] : per_cycle_counts)
    for (std::size_t d = 0; d < counts.size(); ++d) totals[d] += counts[d];
  return totals;
}

void BinTally::merge(const BinTally& other) {
  if (!(scheme == other.scheme)) throw std::invalid_argument("merge: scheme mismatch");
  below_range += other.below_range;
  above_range += other.above_range;
  excluded_nonpositive += other.excluded_nonpositive;
  for (const auto& [c, counts] : other.per_cycle_counts) {
    auto& mine = per_cycle_counts[c];
    if (mine.empty()) mine.assign(static_cast<std::size_t>(scheme.bins), 0);
    for (std::size_t d = 0; d < counts.size(); ++d) mine[d] += counts[d];
  }
}

BinTally tally_serial(const BinSchemeSpec& spec, std::span<const double> data) {
  require_valid(spec);
  const SchemeIndex index(spec);
  BinTally t;
  t.scheme = spec;
  accumulate(t, index, data);
  return t;
}

BinTally tally(const BinSchemeSpec& spec, std::span<const double> data) {
#ifdef _OPENMP
  require_valid(spec);
  const SchemeIndex index(spec);
  BinTally total;
  total.scheme = spec;
  #pragma omp parallel
  {
    BinTally local;
    local.scheme = spec;
    const int nt = omp_get_num_threads();
    const int id = omp_get_thread_num();
    const std::size_t chunk = (data.size() + nt - 1) / nt;
    const std::size_t lo = std::min(data.size(), chunk * static_cast<std::size_t>(id));
    const std::size_t hi = std::min(data.size(), lo + chunk);
    accumulate(local, index, data.subspan(lo, hi - lo));
    #pragma omp critical
    total.merge(local);
  }
  return total;
#else
  return tally_serial(spec, data);
#endif
}

std::vector<double> proportions(const BinTally& tally) {
  const std::uint64_t total = tally.in_range_count();
  if (total == 0) throw empty_data_error("proportions: no in-range values");
  const auto totals = tally.rank_totals();
  std::vector<double> p(totals.size());
  for (std::size_t d = 0; d < totals.size(); ++d)
    p[d] = static_cast<double>(totals[d]) / static_cast<double>(total);
  return p;
}

std::vector<CycleProportions> per_cycle_proportions(const BinTally& tally,
                                                    std::uint64_t min_count) {
  if (min_count < 1) throw std::invalid_argument("min_count >= 1 required");
  std::vector<CycleProportions> out;
  for (const auto& [c, counts] : tally.per_cycle_counts) {
    std::uint64_t n = 0;
    for (std::uint64_t v : counts) n += v;
    if (n < min_count) continue;
    CycleProportions cp;
    cp.cycle_index = c;
    cp.count = n;
    cp.proportions.resize(counts.size());
    for (std::size_t d = 0; d < counts.size(); ++d)
      cp.proportions[d] = static_cast<double>(counts[d]) / static_cast<double>(n);
    out.push_back(std::move(cp));
  }
  return out;
}

std::vector<double> scale_data(std::span<const double> data, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("scale factor must be positive");
  std::vector<double> out(data.size());
  #pragma omp parallel for if (data.size() > 100000)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(data.size()); ++i)
    out[static_cast<std::size_t>(i)] = data[static_cast<std::size_t>(i)] * k;
  return out;
}

}  // namespace binlaw
