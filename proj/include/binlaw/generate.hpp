#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace binlaw {

// All samplers draw value i from a splitmix64 stream keyed by (seed, i), so
// output is identical for any thread count and any generation order.
inline constexpr const char* kRngAlgorithm = "splitmix64-per-index";

enum class Family {
  kx,              // reciprocal density on (10^a, 10^b); params a, b
  lognormal,       // params location, shape (mean/sd of ln x)
  exp_growth,      // deterministic base * rate^i; params base, rate
  log_triangular,  // 10^T, T triangular; params lo, mode, hi (log10 units)
  chain_uniform,   // nested U(0, .) chain; params depth, top
  uniform,         // contrast family; params a, b
  normal_positive  // contrast family, redraws x <= 0; params mean, sd
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);  // throws on unknown name

struct GeneratorSpec {
  Family family = Family::kx;
  std::vector<double> params;
  std::uint64_t count = 1;
  std::uint64_t seed = 0;
};

// Inverse-CDF sampler for the reciprocal density k/x on (10^a_exp, 10^b_exp):
// 10^(a + U(0,1)(b - a)), so log10 of the output is uniform on (a, b).
std::vector<double> sample_kx(double a_exp, double b_exp, std::size_t n, std::uint64_t seed);

std::vector<double> sample_lognormal(double location, double shape, std::size_t n,
                                     std::uint64_t seed);

// v_i = base * growth_factor^i for i = 0..n-1; the first element is the base.
std::vector<double> exp_growth(double base, double growth_factor, std::size_t n);

std::vector<double> sample_log_triangular(double lo, double mode, double hi, std::size_t n,
                                          std::uint64_t seed);

// depth nested uniforms: b_0 = top, b_k = U(0, b_{k-1}); emits b_depth.
std::vector<double> sample_chain_uniform(int depth, double top, std::size_t n,
                                         std::uint64_t seed);

std::vector<double> sample_uniform(double a, double b, std::size_t n, std::uint64_t seed);

std::vector<double> sample_normal_positive(double mean, double sd, std::size_t n,
                                           std::uint64_t seed);

// Dispatches on spec.family; validates parameter counts and ranges.
std::vector<double> generate(const GeneratorSpec& spec);

}  // namespace binlaw
