#include "ocen/rng.hpp"

#include <cmath>

namespace ocen {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // One splitmix64 step over seed xor a spread copy of the stream id.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::bounded(std::uint64_t n) {
  if (n < 2) return 0;
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t r = eng_();
    if (r >= threshold) return r % n;
  }
}

double Rng::uniform01() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  // Box-Muller; u in (0, 1] so the log is finite.
  double u = 0.0;
  do {
    u = uniform01();
  } while (u == 0.0);
  const double v = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * M_PI * v;
  cached_ = r * std::sin(angle);
  have_cached_ = true;
  return r * std::cos(angle);
}

}  // namespace ocen
