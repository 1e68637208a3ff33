#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ideal {

// 64-bit finalizer used to derive independent substreams from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for substream `stream` of run `run` under a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t run,
                                 std::uint64_t stream = 0) {
  return splitmix64(splitmix64(master ^ (0x9e3779b97f4a7c15ULL * (run + 1))) ^
                    (0xc2b2ae3d27d4eb4fULL * (stream + 1)));
}

// Deterministic RNG. std::mt19937_64 output is fully specified by the
// standard; the real/normal/integer transforms below are hand-rolled because
// the std:: distributions are implementation-defined and would break
// byte-identical reproducibility across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; consumes two draws, no cached spare.
  double normal() {
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Uniform integer in [0, n). Modulo bias is < n / 2^64, far below anything
  // observable at the pool sizes handled here.
  int uniform_int(int n) {
    return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ideal
