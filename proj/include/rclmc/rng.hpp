#ifndef RCLMC_RNG_HPP
#define RCLMC_RNG_HPP

#include <cstdint>
#include <cmath>

namespace rclmc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for chain number `chain` derived from the ensemble master seed.
/// Pure mixing, so any chain can be (re)generated independently of the
/// execution schedule.
inline std::uint64_t chain_seed(std::uint64_t master_seed, std::uint64_t chain) {
  std::uint64_t s = master_seed ^ (0x9e3779b97f4a7c15ULL * (chain + 1));
  return splitmix64(s);
}

/*
 * xoshiro256++ with hand-rolled normal generation.
 *
 * std::normal_distribution is implementation-defined, which would break the
 * bit-reproducibility contract across standard libraries; everything here is
 * pinned down to the exact sequence of operations.
 *
 * Draw-order contract used by the samplers: within one step, the coordinate
 * index is drawn first, then the Gaussian noise, in coordinate order.
 */
class ChainRng {
 public:
  explicit ChainRng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform index in {0, ..., n-1}. n == 1 consumes no state, so d = 1
  /// chains see the same noise stream whether or not they draw coordinates.
  int uniform_index(int n) {
    if (n <= 1) return 0;
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    // Lemire multiply-shift with rejection; exact uniformity.
    for (;;) {
      const std::uint64_t x = next_u64();
      const unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
      const std::uint64_t lo = static_cast<std::uint64_t>(m);
      if (lo >= bound || lo >= (-bound) % bound)
        return static_cast<int>(static_cast<std::uint64_t>(m >> 64));
    }
  }

  /// Standard normal via the polar method; second deviate is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, q;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      q = u * u + v * v;
    } while (q >= 1.0 || q == 0.0);
    const double m = std::sqrt(-2.0 * std::log(q) / q);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rclmc

#endif  // RCLMC_RNG_HPP
