#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace normcalc {

/// Dynamic bitset over element identifiers 0..n-1. Order and hashing are
/// stable so canonical sorts are reproducible across runs.
class Bits {
 public:
  Bits() : n_(0) {}
  explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int universe() const { return n_; }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w_[i >> 6] |= uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

  int count() const {
    int c = 0;
    for (uint64_t x : w_) c += std::popcount(x);
    return c;
  }

  bool subset_of(const Bits& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  Bits operator&(const Bits& o) const {
    Bits r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }
  Bits operator|(const Bits& o) const {
    Bits r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
    return r;
  }

  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Bits& o) const { return !(*this == o); }
  // Canonical order: word-lexicographic, i.e. by lowest differing element.
  bool operator<(const Bits& o) const { return w_ < o.w_; }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  size_t hash() const {
    size_t h = 0x9e3779b97f4a7c15ull ^ (size_t)n_;
    for (uint64_t x : w_) h = h * 0x100000001b3ull ^ (size_t)(x + (x >> 31));
    return h;
  }

 private:
  int n_;
  std::vector<uint64_t> w_;
};

struct BitsHash {
  size_t operator()(const Bits& b) const { return b.hash(); }
};

/// Natural number extended with infinity; used for fixed-point dimensions
/// and multiplicities of representation summands.
struct ExtNat {
  static constexpr uint64_t kInf = ~uint64_t{0};
  uint64_t v = 0;

  ExtNat() = default;
  ExtNat(uint64_t x) : v(x) {}
  static ExtNat inf() { return ExtNat(kInf); }
  bool is_inf() const { return v == kInf; }
  bool is_zero() const { return v == 0; }

  ExtNat operator+(ExtNat o) const {
    if (is_inf() || o.is_inf()) return inf();
    return ExtNat(v + o.v);
  }
  ExtNat operator*(ExtNat o) const {
    if (v == 0 || o.v == 0) return ExtNat(0);
    if (is_inf() || o.is_inf()) return inf();
    return ExtNat(v * o.v);
  }
  bool operator==(ExtNat o) const { return v == o.v; }
  bool operator!=(ExtNat o) const { return v != o.v; }
  // inf compares greater than every finite value
  bool operator<(ExtNat o) const {
    if (is_inf()) return false;
    if (o.is_inf()) return true;
    return v < o.v;
  }
  bool operator<=(ExtNat o) const { return *this < o || *this == o; }
  bool operator>(ExtNat o) const { return o < *this; }

  std::string str() const { return is_inf() ? "inf" : std::to_string(v); }
};

/// splitmix64; all randomized checks are seeded so reports reproduce
/// byte-for-byte.
class Rng {
 public:
  explicit Rng(uint64_t seed) : s_(seed) {}
  uint64_t next() {
    uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, n), n > 0
  uint64_t below(uint64_t n) {
    uint64_t lim = ~uint64_t{0} - (~uint64_t{0} % n);
    uint64_t x;
    do {
      x = next();
    } while (x >= lim);
    return x % n;
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  uint64_t s_;
};

inline void hash_mix(size_t& h, size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
}

inline int default_jobs() {
  unsigned n = std::thread::hardware_concurrency();
  return n ? (int)n : 1;
}

/// Runs fn(i) for i in [0, n). Tasks must be independent; callers merge
/// results from pre-sized buffers so output order stays canonical.
inline void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  if (n == 0) return;
  if (jobs <= 1 || n == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  size_t nthreads = std::min<size_t>(jobs, n);
  std::vector<std::thread> pool;
  std::atomic<size_t> cursor{0};
  pool.reserve(nthreads);
  for (size_t t = 0; t < nthreads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = cursor.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace normcalc
