#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace msarpool {

// Deterministic RNG owned by one chain/task. All variate transforms are
// implemented here (not std::*_distribution) so that equal seeds give
// bit-identical streams across standard library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  double uniform();                       // open interval (0,1)
  double normal();                        // standard normal, polar method
  double gamma(double shape, double rate);
  double inverse_gamma(double shape, double scale);
  std::vector<double> dirichlet(std::span<const double> alpha);
  std::size_t categorical(std::span<const double> weights);  // unnormalized ok

 private:
  std::mt19937_64 gen_;
};

// Stateless seed mixing for per-task substreams (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                       std::uint64_t c = 0);

}  // namespace msarpool
