#pragma once

#include <cstdint>
#include <vector>

namespace redkit {

// splitmix64-based generator. Deterministic across platforms and compilers,
// which std:: distributions are not; every randomized routine in this project
// must replay bit-for-bit from its seed.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). Rejection sampling, no modulo bias.
  uint64_t below(uint64_t bound) {
    uint64_t threshold = -bound % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // True with probability num/den.
  bool bernoulli(uint64_t num, uint64_t den) { return below(den) < num; }

  // True with probability p (p in [0,1]); used only for sampling models whose
  // checks are exact downstream.
  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return next() < static_cast<uint64_t>(p * 18446744073709551616.0);
  }

  // Derive an independent stream; convenient for per-block / per-item seeding.
  Rng fork(uint64_t salt) {
    Rng r(state_ ^ (0x6c62272e07bb0142ULL * (salt + 1)));
    r.next();
    return r;
  }

  // k distinct values from [0, n), ascending.
  std::vector<uint32_t> sample_distinct(uint32_t n, uint32_t k);

  void shuffle(std::vector<uint32_t>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

inline std::vector<uint32_t> Rng::sample_distinct(uint32_t n, uint32_t k) {
  // Floyd's algorithm.
  std::vector<uint32_t> out;
  std::vector<bool> in(n, false);
  for (uint32_t j = n - k; j < n; ++j) {
    uint32_t t = static_cast<uint32_t>(below(j + 1));
    if (in[t]) t = j;
    in[t] = true;
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace redkit
