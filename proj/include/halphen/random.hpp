#pragma once

// Seeded, platform-independent random streams. The std distributions are
// implementation-defined, so uniform draws use rejection sampling directly
// on the engine output.

#include <cstdint>
#include <random>
#include <string_view>

#include "halphen/fp.hpp"

namespace halphen {

inline u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(u64 seed) : engine_(splitmix64(seed)) {}
  /// Independent stream for a named purpose, so adding draws in one stage
  /// does not shift another stage's values.
  Rng(u64 seed, std::string_view stream) : engine_(splitmix64(seed ^ hash(stream))) {}

  u64 next() { return engine_(); }

  /// Uniform in [0, n), n > 0.
  u64 below(u64 n) {
    const u64 limit = n * (~u64{0} / n);  // largest multiple of n representable
    u64 r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

  /// Uniform residue of the active prime field.
  Fp residue() { return Fp::from_raw(below(active_prime())); }
  /// Uniform nonzero residue.
  Fp nonzero_residue() { return Fp::from_raw(1 + below(active_prime() - 1)); }

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<u64>(hi - lo) + 1));
  }

 private:
  static u64 hash(std::string_view s) {
    u64 h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ull;
    return h;
  }

  std::mt19937_64 engine_;
};

}  // namespace halphen
