#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace redkit {

// Fixed-width dynamic bitset. The inner loops of the pairwise-disagreement
// pass and the dense-subgraph search live on these, so the hot operations are
// fused word loops without temporaries.
class Bitset {
 public:
  Bitset() : n_(0) {}
  explicit Bitset(uint32_t n) : n_(n), w_((n + 63) / 64, 0) {}

  uint32_t size() const { return n_; }
  size_t words() const { return w_.size(); }
  uint64_t word(size_t i) const { return w_[i]; }
  uint64_t& word(size_t i) { return w_[i]; }

  bool test(uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(uint32_t i) { w_[i >> 6] |= 1ULL << (i & 63); }
  void reset(uint32_t i) { w_[i >> 6] &= ~(1ULL << (i & 63)); }
  void flip(uint32_t i) { w_[i >> 6] ^= 1ULL << (i & 63); }
  void assign(uint32_t i, bool v) { v ? set(i) : reset(i); }

  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  void set_all() {
    std::fill(w_.begin(), w_.end(), ~0ULL);
    trim();
  }

  uint32_t count() const {
    uint32_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }

  bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }

  Bitset& operator&=(const Bitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bitset& operator^=(const Bitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  // this &= ~o
  Bitset& andnot(const Bitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }

  std::vector<uint32_t> elements() const {
    std::vector<uint32_t> out;
    for (size_t wi = 0; wi < w_.size(); ++wi) {
      uint64_t w = w_[wi];
      while (w) {
        out.push_back(static_cast<uint32_t>(wi * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  // Zero any bits at positions >= n (kept as the class invariant).
  void trim() {
    if (n_ & 63 && !w_.empty()) w_.back() &= (1ULL << (n_ & 63)) - 1;
  }

 private:
  uint32_t n_;
  std::vector<uint64_t> w_;
};

inline uint32_t and_count(const Bitset& a, const Bitset& b) {
  uint32_t c = 0;
  for (size_t i = 0; i < a.words(); ++i)
    c += std::popcount(a.word(i) & b.word(i));
  return c;
}

inline uint32_t and3_count(const Bitset& a, const Bitset& b, const Bitset& c) {
  uint32_t n = 0;
  for (size_t i = 0; i < a.words(); ++i)
    n += std::popcount(a.word(i) & b.word(i) & c.word(i));
  return n;
}

// |b \ a| restricted to nothing: popcount(b & ~a).
inline uint32_t andnot_count(const Bitset& b, const Bitset& a) {
  uint32_t c = 0;
  for (size_t i = 0; i < b.words(); ++i)
    c += std::popcount(b.word(i) & ~a.word(i));
  return c;
}

// |{x in s1 ∩ s2 : v1(x) != v2(x)}| — the disagreement kernel.
inline uint32_t disa_count(const Bitset& s1, const Bitset& v1,
                           const Bitset& s2, const Bitset& v2) {
  uint32_t c = 0;
  for (size_t i = 0; i < s1.words(); ++i)
    c += std::popcount((v1.word(i) ^ v2.word(i)) & s1.word(i) & s2.word(i));
  return c;
}

}  // namespace redkit
