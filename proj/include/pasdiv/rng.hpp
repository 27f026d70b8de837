#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace pasdiv {

/// Every stochastic routine takes this engine explicitly; runs are reproducible from the seed alone.
using Rng = std::mt19937_64;

/// Uniform integer in [0, n). Rejection sampling, so the stream is identical on every standard library.
inline std::uint64_t draw_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  std::uint64_t v = rng();
  while (v < threshold) v = rng();
  return v % n;
}

inline int draw_index(Rng& rng, std::size_t n) { return static_cast<int>(draw_below(rng, n)); }

/// Uniform double in [0, 1) with 53 random bits.
inline double draw_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Index drawn with probability proportional to weights[i]. Returns weights.size() when every weight is zero.
inline std::size_t draw_weighted(Rng& rng, std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) return weights.size();
  const double target = draw_unit(rng) * total;
  double acc = 0.0;
  std::size_t last = weights.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last = i;
    if (target < acc) return i;
  }
  return last;
}

}  // namespace pasdiv
