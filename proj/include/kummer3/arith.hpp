#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "kummer3/errors.hpp"

namespace kummer3 {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 mod) {
  if (mod == 1) return 0;
  u64 result = 1;
  base %= mod;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, mod);
    base = mulmod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

// Deterministic Miller-Rabin, valid for every n < 2^64 with this witness set.
inline bool is_prime(u64 n) {
  constexpr u64 witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (u64 p : witnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : witnesses) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r && witness; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

inline u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Primes up to and including `limit`, by plain sieve. Intended for small bounds.
inline std::vector<u32> primes_upto(u32 limit) {
  std::vector<bool> composite(static_cast<size_t>(limit) + 1, false);
  std::vector<u32> primes;
  for (u32 p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (u64 m = static_cast<u64>(p) * p; m <= limit; m += p) composite[m] = true;
  }
  return primes;
}

struct Factorization {
  u64 value = 1;
  std::vector<std::pair<u64, int>> factors;  // (prime, exponent), primes ascending
};

namespace detail {

// Primes <= 1e4 cover trial division of any 64-bit value down to a remainder
// that is 1, prime, or a product of primes > 1e4.
inline const std::vector<u32>& trial_primes() {
  static const std::vector<u32> primes = primes_upto(10'000);
  return primes;
}

inline u64 pollard_rho(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_large(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_large(d, out);
  factor_large(n / d, out);
}

}  // namespace detail

// Canonical factorization of any 64-bit n >= 1; n = 1 yields an empty list.
inline Factorization factorize(u64 n) {
  if (n == 0) fail(errc::invalid_input, "factorize: n must be positive");
  Factorization out;
  out.value = n;
  for (u32 p : detail::trial_primes()) {
    if (static_cast<u64>(p) * p > n) break;
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.factors.emplace_back(p, e);
  }
  if (n > 1) {
    std::vector<u64> large;
    detail::factor_large(n, large);
    std::sort(large.begin(), large.end());
    for (size_t i = 0; i < large.size();) {
      size_t j = i;
      while (j < large.size() && large[j] == large[i]) ++j;
      out.factors.emplace_back(large[i], static_cast<int>(j - i));
      i = j;
    }
  }
  return out;
}

// Smallest-prime-factor table over [2, limit], stored at one byte per integer:
// each entry is a 1-based index into the first 254 primes, 0 meaning that no
// indexed prime divides n. An unindexed composite (possible only when
// limit > p_254^2) is resolved by trial division over primes <= sqrt(limit).
class SpfTable {
 public:
  static constexpr u64 kMinLimit = 2;
  static constexpr u64 kMaxLimit = 100'000'000;

  explicit SpfTable(u64 limit) : limit_(limit) {
    if (limit < kMinLimit || limit > kMaxLimit)
      fail(errc::configuration,
           "sieve limit " + std::to_string(limit) + " outside [2, 10^8]");
    spf_index_.assign(limit + 1, 0);
    const auto& primes = indexed_primes();
    for (size_t j = 0; j < primes.size(); ++j) {
      u64 p = primes[j];
      if (p > limit) break;
      for (u64 m = p; m <= limit; m += p) {
        if (spf_index_[m] == 0) spf_index_[m] = static_cast<u8>(j + 1);
      }
    }
  }

  u64 limit() const { return limit_; }

  // Least prime dividing n, for 2 <= n <= limit.
  u64 least_factor(u64 n) const {
    if (n < 2 || n > limit_)
      fail(errc::invalid_input, "least_factor: n outside table range");
    if (u8 ix = spf_index_[n]) return indexed_primes()[ix - 1];
    if (is_prime(n)) return n;
    for (u32 p : escape_primes()) {
      if (static_cast<u64>(p) * p > n) break;
      if (n % p == 0) return p;
    }
    return n;
  }

  void factorize_into(u64 n, Factorization& out) const {
    if (n == 0) fail(errc::invalid_input, "factorize: n must be positive");
    if (n > limit_) fail(errc::invalid_input, "factorize: n exceeds sieve limit");
    out.value = n;
    out.factors.clear();
    while (n > 1) {
      u64 p = least_factor(n);
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.factors.emplace_back(p, e);
    }
  }

 private:
  static constexpr int kIndexed = 254;  // fits the byte encoding with 0 reserved

  static const std::array<u32, kIndexed>& indexed_primes() {
    static const std::array<u32, kIndexed> table = [] {
      std::array<u32, kIndexed> t{};
      auto primes = primes_upto(2'000);
      for (int i = 0; i < kIndexed; ++i) t[i] = primes[i];
      return t;
    }();
    return table;
  }

  static const std::vector<u32>& escape_primes() {
    static const std::vector<u32> table = [] {
      u32 cap = indexed_primes().back();
      std::vector<u32> t;
      for (u32 p : detail::trial_primes())
        if (p > cap) t.push_back(p);
      return t;
    }();
    return table;
  }

  u64 limit_;
  std::vector<u8> spf_index_;
};

inline Factorization factorize(u64 n, const SpfTable& spf) {
  Factorization out;
  spf.factorize_into(n, out);
  return out;
}

// Dedekind species of a cube-free radicand.
enum class Species { s1a, s1b, s2 };

inline const char* species_name(Species s) {
  switch (s) {
    case Species::s1a: return "1a";
    case Species::s1b: return "1b";
    default: return "2";
  }
}

inline Species species_of(u64 d) {
  if (d % 3 == 0) return Species::s1a;
  u64 r = d % 9;
  return (r == 1 || r == 8) ? Species::s2 : Species::s1b;
}

// Cube-free radicand d = d1 * d2^2 with square-free coprime d1, d2.
// Normalized means d1 > d2, i.e. d is the smaller of the two radicands
// generating the same field.
struct Radicand {
  u64 d = 0;
  u64 d1 = 1;
  u64 d2 = 1;
  Species species = Species::s1b;
  bool normalized = false;
};

// Describes the cube-free value of `fac` as-is, without switching to the
// co-radicand. Requires all exponents <= 2 and value > 1.
inline Radicand radicand_parts(const Factorization& fac) {
  u64 d1 = 1, d2 = 1;
  for (const auto& [p, e] : fac.factors) {
    if (e == 1)
      d1 *= p;
    else if (e == 2)
      d2 *= p;
    else
      fail(errc::invalid_input, "radicand_parts: value is not cube-free");
  }
  if (fac.value <= 1) fail(errc::invalid_input, "radicand_parts: need d > 1");
  return {fac.value, d1, d2, species_of(fac.value), d1 > d2};
}

// Cube removal followed by the choice of the normalized representative among
// {d1*d2^2, d1^2*d2}. A perfect cube has no cube-free part and is rejected.
inline Radicand normalize_radicand(const Factorization& fac) {
  u64 a = 1, b = 1;  // exponent-1 and exponent-2 square-free parts, mod cubes
  for (const auto& [p, e] : fac.factors) {
    switch (e % 3) {
      case 1: a *= p; break;
      case 2: b *= p; break;
      default: break;
    }
  }
  if (a == 1 && b == 1)
    fail(errc::not_a_field, "perfect cube is not a field radicand");
  u64 d1 = a > b ? a : b;
  u64 d2 = a > b ? b : a;
  u64 d = d1 * d2 * d2;
  return {d, d1, d2, species_of(d), true};
}

inline Radicand normalize_radicand(u64 n) {
  if (n <= 1) fail(errc::invalid_input, "normalize_radicand: need n > 1");
  return normalize_radicand(factorize(n));
}

inline Radicand normalize_radicand(u64 n, const SpfTable& spf) {
  if (n <= 1) fail(errc::invalid_input, "normalize_radicand: need n > 1");
  return normalize_radicand(factorize(n, spf));
}

// The other cube-free generator of the same field.
inline u64 co_radicand(const Radicand& r) { return r.d1 * r.d1 * r.d2; }

enum class PrimeKind { three, split_p, inert_q };

struct PrimeClass {
  u64 prime = 0;
  PrimeKind kind = PrimeKind::three;
  int mod9 = 0;
};

inline PrimeClass classify_prime(u64 ell) {
  if (!is_prime(ell))
    fail(errc::invalid_input, "classify_prime: " + std::to_string(ell) + " is not prime");
  PrimeKind kind = ell == 3              ? PrimeKind::three
                   : ell % 3 == 1        ? PrimeKind::split_p
                                         : PrimeKind::inert_q;
  return {ell, kind, static_cast<int>(ell % 9)};
}

}  // namespace kummer3
