#pragma once

#include <cmath>
#include <cstdint>

namespace deloc {

//! splitmix64 finalizer. This is the single fixed mixing function behind
//! every substream in the library; all reproducibility contracts reduce to it.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

//! Experiment seed: a 64-bit master seed plus a trial index. Identical
//! (master, trial) pairs yield bit-identical samples regardless of execution
//! order or thread count.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t trial = 0;

  constexpr Seed with_trial(std::uint64_t t) const { return Seed{master, t}; }
};

// Domain tags keep unrelated consumers of the same (master, trial) on
// disjoint substreams.
enum class StreamDomain : std::uint64_t {
  MatrixPair = 1,
  GraphPair = 2,
  Audit = 3,
  MonteCarlo = 4,
  NetPool = 5,
  Imaginary = 6,
};

//! Counter-based generator: output i is mix64(key + (i+1)*golden). State is
//! a (key, counter) pair, so streams can be created O(1) per key and are
//! insensitive to the order in which other streams are consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return mix64(key_ + (++ctr_) * kGolden); }

  //! Uniform on [0, 1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  //! Uniform on (0, 1]; safe as a log argument.
  double next_open() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  //! Standard normal via Box-Muller (cosine branch only, for a fixed
  //! draws-per-variate count).
  double next_normal() {
    const double u1 = next_open();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  //! Uniform integer in [0, n). Unbiased via rejection.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

namespace detail {
constexpr std::uint64_t chain(std::uint64_t acc, std::uint64_t word) {
  return mix64(acc ^ (word + kGolden + (acc << 6) + (acc >> 2)));
}
}  // namespace detail

//! Substream for the unordered index pair {i, j} (i, j < 2^32). The key
//! depends on (master, trial, domain, min(i,j), max(i,j)) only, which is what
//! makes matrix entries functions of their pair alone.
inline Rng pair_stream(const Seed& seed, StreamDomain domain, std::uint64_t i,
                       std::uint64_t j) {
  const std::uint64_t lo = i < j ? i : j;
  const std::uint64_t hi = i < j ? j : i;
  std::uint64_t k = mix64(seed.master);
  k = detail::chain(k, seed.trial);
  k = detail::chain(k, static_cast<std::uint64_t>(domain));
  k = detail::chain(k, (lo << 32) | hi);
  return Rng(k);
}

//! Substream for a scalar purpose (audits, Monte Carlo trials).
inline Rng stream(const Seed& seed, StreamDomain domain,
                  std::uint64_t index = 0) {
  std::uint64_t k = mix64(seed.master);
  k = detail::chain(k, seed.trial);
  k = detail::chain(k, static_cast<std::uint64_t>(domain));
  k = detail::chain(k, index);
  return Rng(k);
}

}  // namespace deloc
