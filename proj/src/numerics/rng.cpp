#include "mtsfuse/numerics/rng.hpp"

#include <cmath>

#include "mtsfuse/error.hpp"

namespace mtsfuse::num {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}

// SplitMix64 finalizer; full-period mixing of the 64-bit input.
std::uint64_t RngStream::mix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t root, std::uint64_t task)
    : root_(root), task_(task), key_(mix64(mix64(root) ^ mix64(task ^ kGolden))) {}

RngStream RngStream::child(std::uint64_t salt) const {
  return RngStream(root_, mix64(task_ ^ mix64(salt)));
}

std::uint64_t RngStream::next_u64() { return mix64(key_ + (++counter_) * kGolden); }

double RngStream::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_normal() {
  // Box-Muller; u clamped away from 0 so log stays finite.
  double u = next_uniform();
  const double v = next_uniform();
  if (u <= 0.0) u = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  require(n > 0, "RngStream::next_below: n must be positive");
  // Unbiased rejection sampling on the top bits.
  const std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

bool RngStream::next_bool(double p) { return next_uniform() < p; }

}  // namespace mtsfuse::num
