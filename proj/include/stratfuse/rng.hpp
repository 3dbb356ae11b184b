#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace stratfuse::rng {

// Counter-based splittable random streams.
//
// Every random decision in the library draws from a Stream whose seed is
// derived from a parent seed by `derive(parent, label, counter)`.  Substreams
// are therefore independent of evaluation order and thread schedule: episode
// i of a run always sees the same stream no matter which worker executes it.
//
// Derivation rule (documented so results can be reproduced externally):
//   h      = FNV-1a 64-bit hash of the label bytes
//   child  = mix64(mix64(parent ^ mix64(h)) + counter)
// where mix64 is the splitmix64 finalizer.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

constexpr std::uint64_t derive(std::uint64_t parent, std::string_view label,
                               std::uint64_t counter = 0) {
  return mix64(mix64(parent ^ mix64(fnv1a64(label))) + counter);
}

// splitmix64 sequence.  Small, fast, and identical on every platform; the
// standard <random> distributions are implementation-defined and would break
// bit-exact reproducibility, so all sampling helpers live here instead.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound). bound must be >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // Draw an index from an (approximately normalized) categorical row.
  std::size_t categorical(std::span<const double> probs);

  // Standard normal via Box-Muller (consumes two uniforms).
  double normal();

  // Gamma(alpha, 1) via Marsaglia-Tsang squeeze.
  double gamma(double alpha);

  // Symmetric Dirichlet(concentration) over out.size() components.
  void dirichlet_symmetric(double concentration, std::span<double> out);

 private:
  std::uint64_t state_;
};

}  // namespace stratfuse::rng
