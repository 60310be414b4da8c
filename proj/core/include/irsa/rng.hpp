#ifndef IRSA_RNG_HPP
#define IRSA_RNG_HPP

#include <cstdint>
#include <limits>
#include <random>

namespace irsa {

/** One SplitMix64 step. Advances `state` and returns the next output. */
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/** Deterministic random stream owned by exactly one worker.
 *
 *  Draw helpers are hand-rolled instead of going through
 *  std::uniform_*_distribution: the engine's output sequence is fixed by the
 *  standard but the distributions' mappings are implementation-defined, and
 *  every consumer here needs bit-identical streams for a given seed.
 */
class rng {
 public:
  explicit rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /** Uniform double in [0, 1), 53 significant bits. */
  double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /** Unbiased uniform integer in [0, bound); bound must be >= 1. */
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t rem = (max % bound + 1) % bound;  // 2^64 mod bound
    const std::uint64_t limit = max - rem;
    std::uint64_t x = engine_();
    while (x > limit) x = engine_();
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace irsa

#endif
