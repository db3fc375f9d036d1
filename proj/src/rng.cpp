#include "msarpool/rng.hpp"

#include <cmath>

#include "msarpool/errors.hpp"

namespace msarpool {

double Rng::uniform() {
  // 53-bit mantissa, shifted into (0,1).
  const std::uint64_t bits = gen_() >> 11;
  double u = (static_cast<double>(bits) + 0.5) * (1.0 / 9007199254740992.0);
  return u;
}

double Rng::normal() {
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

// Marsaglia-Tsang squeeze for shape >= 1; boosted by u^(1/shape) below 1.
double Rng::gamma(double shape, double rate) {
  if (shape <= 0.0 || rate <= 0.0) throw validation_error("gamma: shape and rate must be > 0");
  if (shape < 1.0) {
    const double boost = std::pow(uniform(), 1.0 / shape);
    return gamma(shape + 1.0, rate) * boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

double Rng::inverse_gamma(double shape, double scale) {
  return 1.0 / gamma(shape, scale);  // scale of IG is the rate of the reciprocal
}

std::vector<double> Rng::dirichlet(std::span<const double> alpha) {
  std::vector<double> draw(alpha.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    draw[i] = gamma(alpha[i], 1.0);
    sum += draw[i];
  }
  for (auto& v : draw) v /= sum;
  return draw;
}

std::size_t Rng::categorical(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw validation_error("categorical: negative weight");
    total += w;
  }
  if (total <= 0.0) throw validation_error("categorical: all weights zero");
  double u = uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    u -= weights[i];
    if (u <= 0.0) return i;
  }
  return weights.size() - 1;
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c) {
  auto splitmix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = splitmix(base);
  h = splitmix(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = splitmix(h ^ (b + 0xd1b54a32d192ed03ULL));
  h = splitmix(h ^ (c + 0x8cb92ba72f3d8dd7ULL));
  return h;
}

}  // namespace msarpool
