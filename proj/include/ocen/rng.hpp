#pragma once

// Deterministic random utilities. std::mt19937_64 output is fully specified by
// the standard; the distributions here are hand-rolled because the standard
// library's distribution objects are implementation-defined and would break
// cross-platform reproducibility of seeded runs.

#include <cstdint>
#include <random>
#include <vector>

namespace ocen {

// splitmix64-style mixing, used to derive independent stream seeds from a
// master seed plus any number of stream identifiers.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(seed, a), b);
}
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
  return mix_seed(mix_seed(seed, a, b), c);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, n) by modulo rejection (unbiased).
  std::uint64_t bounded(std::uint64_t n);

  // Uniform real in [0, 1) with 53 random bits.
  double uniform01();

  // Standard normal via Box-Muller (cached second variate).
  double normal();

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace ocen
