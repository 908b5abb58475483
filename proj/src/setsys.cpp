#include "redkit/setsys.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace redkit {

SetSystem sample_random(uint32_t m, uint32_t k, double alpha, uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("alpha must be in (0,1)");
  SetSystem s;
  s.universe_size = m;
  Rng rng(seed);
  for (uint32_t i = 0; i < k; ++i) {
    Bitset b(m);
    for (uint32_t u = 0; u < m; ++u)
      if (rng.bernoulli(alpha)) b.set(u);
    s.sets.push_back(std::move(b));
  }
  return s;
}

bool check_sizes(const SetSystem& s, const Rat& alpha) {
  for (const Bitset& b : s.sets)
    if (Rat(b.count()) > 2 * alpha * s.universe_size) return false;
  return true;
}

namespace {

// freq/total >= gamma, exact.
inline bool freq_at_least(uint32_t freq, uint32_t total, const Rat& gamma) {
  return Rat(freq) >= gamma * total;
}

bool uniform_from_freqs(const std::vector<uint32_t>& freq, uint32_t total,
                        uint32_t m, const Rat& gamma, const Rat& mu) {
  uint32_t good = 0;
  for (uint32_t u = 0; u < m; ++u)
    if (freq_at_least(freq[u], total, gamma)) ++good;
  return Rat(good) >= (Rat(1) - mu) * m;
}

}  // namespace

bool check_uniform(const SetSystem& s, const Rat& gamma, const Rat& mu) {
  std::vector<uint32_t> sub(s.k());
  for (uint32_t i = 0; i < s.k(); ++i) sub[i] = i;
  return check_uniform_sub(s, sub, gamma, mu);
}

bool check_uniform_sub(const SetSystem& s, const std::vector<uint32_t>& sub,
                       const Rat& gamma, const Rat& mu) {
  if (sub.empty()) throw Error("empty subcollection");
  std::vector<uint32_t> freq(s.universe_size, 0);
  for (uint32_t idx : sub) {
    if (idx >= s.k()) throw Error("set index out of range");
    for (uint32_t u : s.sets[idx].elements()) freq[u]++;
  }
  return uniform_from_freqs(freq, static_cast<uint32_t>(sub.size()),
                            s.universe_size, gamma, mu);
}

namespace {

uint64_t binomial_capped(uint64_t n, uint64_t h, uint64_t cap) {
  uint64_t b = 1;
  for (uint64_t i = 0; i < h; ++i) {
    if (b > cap) return cap + 1;
    b = b * (n - i) / (i + 1);
  }
  return b;
}

}  // namespace

bool check_all_subcollections_uniform(const SetSystem& s, uint32_t h,
                                      const Rat& gamma, const Rat& mu,
                                      uint64_t cap) {
  const uint32_t k = s.k(), m = s.universe_size;
  if (h == 0 || h > k) throw Error("h must be in 1..k");

  // Sound shortcut: element u can fall below gamma in some h-subcollection
  // only if enough sets avoid u. If even the adversarial subcollection keeps
  // every element's frequency >= gamma for all but mu*m elements, every
  // subcollection is fine.
  {
    uint32_t risky = 0;
    for (uint32_t u = 0; u < m; ++u) {
      uint32_t present = 0;
      for (const Bitset& b : s.sets) present += b.test(u);
      uint32_t absent = k - present;
      uint32_t worst = h > absent ? h - absent : 0;  // min freq over subcolls
      if (!freq_at_least(worst, h, gamma)) ++risky;
    }
    if (Rat(risky) <= mu * m) return true;
  }

  if (binomial_capped(k, h, cap) > cap)
    throw CapExceeded("check_all_subcollections_uniform: C(k,h) exceeds cap");

  if (h == 2) {
    // freq over a pair is 0, 1/2 or 1; one popcount decides each pair.
    const bool need_both = gamma > Rat(1, 2);
    const bool need_any = gamma > 0;
    for (uint32_t i = 0; i < k; ++i)
      for (uint32_t j = i + 1; j < k; ++j) {
        uint32_t good;
        if (!need_any)
          good = m;
        else if (need_both)
          good = and_count(s.sets[i], s.sets[j]);
        else
          good = s.sets[i].count() + s.sets[j].count() -
                 and_count(s.sets[i], s.sets[j]);
        if (Rat(good) < (Rat(1) - mu) * m) return false;
      }
    return true;
  }

  std::vector<uint32_t> freq(m, 0);
  // Depth-first over index combinations, frequencies updated in place.
  auto add = [&](uint32_t idx, int d) {
    for (uint32_t u : s.sets[idx].elements()) freq[u] += d;
  };
  // Iterative combination walk.
  std::vector<uint32_t> comb;
  uint32_t start = 0;
  while (true) {
    if (comb.size() == h) {
      if (!uniform_from_freqs(freq, h, m, gamma, mu)) return false;
      // backtrack
      start = comb.back() + 1;
      add(comb.back(), -1);
      comb.pop_back();
      continue;
    }
    if (start + (h - comb.size()) > k) {
      if (comb.empty()) break;
      start = comb.back() + 1;
      add(comb.back(), -1);
      comb.pop_back();
      continue;
    }
    comb.push_back(start);
    add(start, +1);
    start = start + 1;
  }
  return true;
}

namespace {

struct Subcoll {
  uint64_t mask;       // member indices (k <= 64 on the enumeration path)
  uint32_t min_index;
  Bitset inter;        // intersection of member sets
};

// Exact coverage test: |union| >= (1-eta)*m.
inline bool covers(uint32_t union_count, uint32_t m, const Rat& eta) {
  return Rat(union_count) >= (Rat(1) - eta) * m;
}

bool disperser_enumerate_impl(const SetSystem& s, uint32_t r, uint32_t ell,
                              const Rat& eta, uint64_t cap) {
  const uint32_t k = s.k(), m = s.universe_size;
  if (k < r) return true;  // no family of r disjoint nonempty subcollections
  if (k > 64)
    throw CapExceeded("check_disperser: enumeration limited to k <= 64");

  std::vector<Subcoll> subs;
  // All nonempty subcollections of size <= ell, built incrementally.
  std::vector<std::pair<uint64_t, Bitset>> frontier;
  for (uint32_t i = 0; i < k; ++i)
    frontier.push_back({1ULL << i, s.sets[i]});
  uint32_t size = 1;
  while (true) {
    for (auto& [mask, inter] : frontier)
      subs.push_back({mask, static_cast<uint32_t>(std::countr_zero(mask)),
                      inter});
    if (++size > ell) break;
    std::vector<std::pair<uint64_t, Bitset>> next;
    for (auto& [mask, inter] : frontier) {
      uint32_t top = 63 - static_cast<uint32_t>(std::countl_zero(mask));
      for (uint32_t j = top + 1; j < k; ++j) {
        next.push_back({mask | (1ULL << j), inter & s.sets[j]});
        if (subs.size() + next.size() > cap)
          throw CapExceeded("check_disperser: subcollection count exceeds cap");
      }
    }
    if (next.empty()) break;
    frontier = std::move(next);
  }

  // Group subcollections by min index so families can be enumerated once
  // each: member subcollections are listed in ascending min index.
  std::sort(subs.begin(), subs.end(),
            [](const Subcoll& a, const Subcoll& b) {
              return a.min_index < b.min_index;
            });

  uint64_t work = 0;
  // Choose r pairwise disjoint subcollections; prune when the partial union
  // already covers (adding subcollections only grows the union).
  auto rec = [&](auto&& self, size_t from, uint32_t depth, uint64_t used,
                 const Bitset& uni) -> bool {
    if (depth == r) return covers(uni.count(), m, eta);
    for (size_t i = from; i < subs.size(); ++i) {
      if (subs[i].mask & used) continue;
      if (++work > cap)
        throw CapExceeded("check_disperser: family enumeration exceeds cap");
      Bitset u2 = uni | subs[i].inter;
      if (depth + 1 < r && covers(u2.count(), m, eta)) {
        // Any completion of this prefix covers; skip completions but keep
        // scanning siblings.
        continue;
      }
      if (!self(self, i + 1, depth + 1, used | subs[i].mask, u2)) return false;
    }
    return true;
  };
  Bitset empty(m);
  return rec(rec, 0, 0, 0, empty);
}

}  // namespace

bool check_disperser_enumerate(const SetSystem& s, uint32_t r, uint32_t ell,
                               const Rat& eta, uint64_t cap) {
  if (r == 0 || ell == 0) throw Error("r and ell must be positive");
  return disperser_enumerate_impl(s, r, ell, eta, cap);
}

bool check_disperser(const SetSystem& s, uint32_t r, uint32_t ell,
                     const Rat& eta, uint64_t cap) {
  if (r == 0 || ell == 0) throw Error("r and ell must be positive");
  const uint32_t m = s.universe_size;
  if (s.k() < r) return true;

  // Sound certificate: any single subcollection's intersection misses at most
  // the sum of its members' complements, and a family's miss is at most the
  // miss of any one member subcollection. So if the ell largest complements
  // sum to <= eta*m, the property holds for every r.
  {
    std::vector<uint32_t> comp;
    for (const Bitset& b : s.sets) comp.push_back(m - b.count());
    std::sort(comp.rbegin(), comp.rend());
    uint64_t worst = 0;
    for (uint32_t i = 0; i < std::min<uint32_t>(ell, s.k()); ++i)
      worst += comp[i];
    if (Rat(worst) <= eta * m) return true;
  }
  return disperser_enumerate_impl(s, r, ell, eta, cap);
}

double m0_formula(uint32_t k, double alpha, double mu, double eta,
                  uint32_t ell) {
  double lk = std::log2(std::max<double>(k, 2));
  return 1000.0 * (lk * std::log(1.0 / mu) / (alpha * mu * mu) +
                   ell * std::log(1.0 / eta) * lk /
                       (std::pow(alpha, ell) * eta) +
                   1.0 / alpha + 1.0);
}

namespace {

bool block_ok(const SetSystem& blk, const ConstructParams& p,
              const Rat& ralpha) {
  return check_sizes(blk, ralpha) &&
         check_disperser(blk, p.r, p.ell, p.eta) &&
         check_all_subcollections_uniform(blk, std::min(p.h, blk.k()),
                                          ralpha / 2, p.mu);
}

std::optional<SetSystem> search_block_random(uint32_t bs, uint32_t k,
                                             const ConstructParams& p,
                                             const Rat& ralpha, Rng& rng) {
  for (uint32_t t = 0; t < p.retries_per_block; ++t) {
    SetSystem cand = sample_random(bs, k, p.alpha, rng.next());
    if (block_ok(cand, p, ralpha)) return cand;
  }
  return std::nullopt;
}

std::optional<SetSystem> search_block_exhaustive(uint32_t bs, uint32_t k,
                                                 const ConstructParams& p,
                                                 const Rat& ralpha) {
  if (bs * k > 24)
    throw CapExceeded("exhaustive block search limited to bs*k <= 24");
  const uint64_t per = 1ULL << bs;
  const uint64_t total = 1ULL << (bs * k);
  for (uint64_t code = 0; code < total; ++code) {
    SetSystem cand;
    cand.universe_size = bs;
    uint64_t c = code;
    for (uint32_t i = 0; i < k; ++i) {
      Bitset b(bs);
      uint64_t mask = c % per;
      c /= per;
      for (uint32_t u = 0; u < bs; ++u)
        if ((mask >> u) & 1) b.set(u);
      cand.sets.push_back(std::move(b));
    }
    if (block_ok(cand, p, ralpha)) return cand;
  }
  return std::nullopt;
}

}  // namespace

ConstructResult construct_deterministic(uint32_t m, uint32_t k,
                                        const ConstructParams& p,
                                        uint64_t seed) {
  WellBehavedCert cert;
  cert.alpha = rat_from_double(p.alpha);
  cert.r = p.r;
  cert.ell = p.ell;
  cert.eta = p.eta;
  cert.h = p.h;
  cert.gamma = cert.alpha / 2;
  cert.mu = p.mu;
  cert.m0_formula =
      m0_formula(k, p.alpha, rat_double(p.mu), rat_double(p.eta), p.ell);

  uint32_t m0 = p.m0_override;
  if (m0 == 0) {
    if (cert.m0_formula > m) throw Infeasible("m below the lemma's m0");
    m0 = static_cast<uint32_t>(std::ceil(cert.m0_formula));
  } else {
    cert.unsafe_m0 = true;
  }
  cert.m0_used = m0;
  if (m < m0) throw Infeasible("m < m0");

  const uint32_t nblocks = m / m0;
  cert.blocks = nblocks;
  SetSystem out;
  out.universe_size = m;
  out.sets.assign(k, Bitset(m));

  Rng rng(seed);
  uint32_t offset = 0;
  const uint32_t base = m / nblocks, rem = m % nblocks;
  for (uint32_t b = 0; b < nblocks; ++b) {
    const uint32_t bs = base + (b < rem ? 1 : 0);
    Rng block_rng = rng.fork(b);
    std::optional<SetSystem> blk =
        p.exhaustive_blocks
            ? search_block_exhaustive(bs, k, p, cert.alpha)
            : search_block_random(bs, k, p, cert.alpha, block_rng);
    if (!blk)
      throw StageFailure("construct",
                         "block " + std::to_string(b) + " search exhausted");
    for (uint32_t i = 0; i < k; ++i)
      for (uint32_t u : blk->sets[i].elements()) out.sets[i].set(offset + u);
    offset += bs;
  }

  // Re-check the union system; block-locality is supposed to transfer.
  cert.checked_sizes = check_sizes(out, cert.alpha);
  cert.checked_disperser = check_disperser(out, p.r, p.ell, p.eta);
  cert.checked_uniform = check_all_subcollections_uniform(
      out, std::min(p.h, k), cert.gamma, p.mu);
  if (!cert.checked_sizes || !cert.checked_disperser || !cert.checked_uniform)
    throw StageFailure("construct", "union system failed re-verification");

  std::set<std::vector<uint32_t>> dedup;
  for (const Bitset& b : out.sets) dedup.insert(b.elements());
  cert.has_duplicate_sets = dedup.size() != out.sets.size();
  return {std::move(out), std::move(cert)};
}

}  // namespace redkit
