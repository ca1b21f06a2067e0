#pragma once

#include <cstdint>
#include <random>

namespace unigauss {

using Rng = std::mt19937_64;

// Portable uniform draw from [0, n); std::uniform_int_distribution is
// implementation-defined and would break seed reproducibility across
// standard libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace unigauss
