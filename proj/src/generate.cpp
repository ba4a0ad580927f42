#include "binlaw/generate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace binlaw {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// splitmix64 stream whose start state is a hash of (seed, index).
class IndexRng {
 public:
  IndexRng(std::uint64_t seed, std::uint64_t index)
      : state_(mix64(seed ^ mix64(index * kGolden + 0xd1b54a32d192ed03ULL))) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  // uniform on [0, 1), 53-bit resolution
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0, 1]; safe as a log argument or multiplicative factor
  double next_unit_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // standard normal via Box-Muller (cosine branch)
  double next_normal() {
    const double u1 = next_unit_pos();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

template <typename PerIndex>
std::vector<double> fill(std::size_t n, std::uint64_t seed, PerIndex f) {
  std::vector<double> out(n);
  #pragma omp parallel for if (n > 65536)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    IndexRng rng(seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = f(rng);
  }
  return out;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::kx: return "kx";
    case Family::lognormal: return "lognormal";
    case Family::exp_growth: return "exp-growth";
    case Family::log_triangular: return "log-triangular";
    case Family::chain_uniform: return "chain-uniform";
    case Family::uniform: return "uniform";
    case Family::normal_positive: return "normal";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::kx, Family::lognormal, Family::exp_growth, Family::log_triangular,
                   Family::chain_uniform, Family::uniform, Family::normal_positive})
    if (name == family_name(f)) return f;
  throw std::invalid_argument("unknown generator family: " + name);
}

std::vector<double> sample_kx(double a_exp, double b_exp, std::size_t n, std::uint64_t seed) {
  if (!(a_exp <= b_exp)) throw std::invalid_argument("kx: a <= b required");
  return fill(n, seed, [=](IndexRng& rng) {
    return std::pow(10.0, a_exp + rng.next_unit() * (b_exp - a_exp));
  });
}

std::vector<double> sample_lognormal(double location, double shape, std::size_t n,
                                     std::uint64_t seed) {
  if (!(shape > 0.0)) throw std::invalid_argument("lognormal: shape > 0 required");
  return fill(n, seed, [=](IndexRng& rng) {
    return std::exp(location + shape * rng.next_normal());
  });
}

std::vector<double> exp_growth(double base, double growth_factor, std::size_t n) {
  if (!(base > 0.0)) throw std::invalid_argument("exp_growth: base > 0 required");
  if (!(growth_factor > 1.0)) throw std::invalid_argument("exp_growth: growth factor > 1 required");
  std::vector<double> out(n);
  // pow per element rather than a running product: no drift, order-free
  #pragma omp parallel for if (n > 65536)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
    out[static_cast<std::size_t>(i)] = base * std::pow(growth_factor, static_cast<double>(i));
  return out;
}

std::vector<double> sample_log_triangular(double lo, double mode, double hi, std::size_t n,
                                          std::uint64_t seed) {
  if (!(lo < mode && mode < hi))
    throw std::invalid_argument("log_triangular: lo < mode < hi required");
  const double span = hi - lo;
  const double cut = (mode - lo) / span;  // CDF value at the mode
  return fill(n, seed, [=](IndexRng& rng) {
    const double u = rng.next_unit();
    const double t = u < cut ? lo + std::sqrt(u * span * (mode - lo))
                             : hi - std::sqrt((1.0 - u) * span * (hi - mode));
    return std::pow(10.0, t);
  });
}

std::vector<double> sample_chain_uniform(int depth, double top, std::size_t n,
                                         std::uint64_t seed) {
  if (depth < 1) throw std::invalid_argument("chain_uniform: depth >= 1 required");
  if (!(top > 0.0)) throw std::invalid_argument("chain_uniform: top > 0 required");
  return fill(n, seed, [=](IndexRng& rng) {
    double b = top;
    for (int k = 0; k < depth; ++k) b *= rng.next_unit_pos();
    return b;
  });
}

std::vector<double> sample_uniform(double a, double b, std::size_t n, std::uint64_t seed) {
  if (!(b > a) || !(a >= 0.0)) throw std::invalid_argument("uniform: b > a >= 0 required");
  return fill(n, seed, [=](IndexRng& rng) { return a + rng.next_unit_pos() * (b - a); });
}

std::vector<double> sample_normal_positive(double mean, double sd, std::size_t n,
                                           std::uint64_t seed) {
  if (!(sd > 0.0)) throw std::invalid_argument("normal: sd > 0 required");
  return fill(n, seed, [=](IndexRng& rng) {
    double x;
    do {
      x = mean + sd * rng.next_normal();
    } while (!(x > 0.0));
    return x;
  });
}

std::vector<double> generate(const GeneratorSpec& spec) {
  const auto need = [&](std::size_t k) {
    if (spec.params.size() != k)
      throw std::invalid_argument(std::string("generator ") + family_name(spec.family) +
                                  " expects " + std::to_string(k) + " parameters");
  };
  if (spec.count < 1) throw std::invalid_argument("generator count >= 1 required");
  const std::size_t n = static_cast<std::size_t>(spec.count);
  switch (spec.family) {
    case Family::kx:
      need(2);
      return sample_kx(spec.params[0], spec.params[1], n, spec.seed);
    case Family::lognormal:
      need(2);
      return sample_lognormal(spec.params[0], spec.params[1], n, spec.seed);
    case Family::exp_growth:
      need(2);
      return exp_growth(spec.params[0], spec.params[1], n);
    case Family::log_triangular:
      need(3);
      return sample_log_triangular(spec.params[0], spec.params[1], spec.params[2], n, spec.seed);
    case Family::chain_uniform:
      need(2);
      return sample_chain_uniform(static_cast<int>(spec.params[0]), spec.params[1], n, spec.seed);
    case Family::uniform:
      need(2);
      return sample_uniform(spec.params[0], spec.params[1], n, spec.seed);
    case Family::normal_positive:
      need(2);
      return sample_normal_positive(spec.params[0], spec.params[1], n, spec.seed);
  }
  throw std::invalid_argument("unknown generator family");
}

}  // namespace binlaw
