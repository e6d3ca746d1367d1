#ifndef UCFLM_RNG_HPP
#define UCFLM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace ucflm {

// splitmix64 step; used both as a generator bootstrap and as a seed mixer.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministically combine a seed with a stream id (document index, user
// hash, ...) so independent consumers get independent streams.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  uint64_t s = seed ^ (0x9e3779b97f4a7c15ull + (stream << 6) + (stream >> 2));
  splitmix64(s);
  return splitmix64(s);
}

inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Small deterministic PRNG (xoshiro-free, splitmix-driven). All randomized
// operations in the toolkit draw from this class only, so results are
// reproducible across platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {
    // warm up so small seeds do not produce correlated first draws
    splitmix64(state_);
    splitmix64(state_);
  }

  uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0, 1) with 53-bit resolution
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n), n >= 1
  uint64_t uniform_int(uint64_t n) {
    // multiply-shift; bias is negligible for desk-scale n
    return static_cast<uint64_t>(uniform01() * static_cast<double>(n)) % n;
  }

  // standard normal via Box-Muller, spare cached
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 1e-300) u1 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925287 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Fisher-Yates
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Sample an index from unnormalized cumulative weights cdf[0..n), given
// u in [0,1). cdf must be non-decreasing with cdf[n-1] > 0.
inline int sample_cdf(const std::vector<double>& cdf, double u) {
  const double target = u * cdf.back();
  int lo = 0, hi = static_cast<int>(cdf.size()) - 1;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (cdf[mid] > target) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace ucflm

#endif  // UCFLM_RNG_HPP
