#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace rmlearn {

// mt19937_64 with hand-rolled draws. The standard distributions are not
// required to produce the same sequence on every platform, so bounded ints
// and unit doubles are derived from raw engine output instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    if ((n & (n - 1)) == 0) return gen_() & (n - 1);
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t x = gen_();
      if (x >= threshold) return x % n;
    }
  }

  // uniform in [lo, hi)
  int range(int lo, int hi) {
    if (lo >= hi) throw std::invalid_argument("Rng::range: empty interval");
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo)));
  }

  // uniform in [0, 1), 53 bits
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  // splitmix64 step, used to derive independent stream seeds from one seed
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rmlearn
