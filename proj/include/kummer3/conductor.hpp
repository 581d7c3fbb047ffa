#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "kummer3/arith.hpp"
#include "kummer3/errors.hpp"

namespace kummer3 {

// Conductor f = 3^e * l_1 ... l_n of the Kummer closure, essentially
// square-free. u counts primes = +-1 (mod 9), v counts primes = +-2, +-4.
struct Conductor {
  u64 f = 1;
  int e = 0;
  std::vector<PrimeClass> primes;  // ascending, all distinct from 3
  int u = 0;
  int v = 0;
  int n = 0;
};

inline bool mod9_is_unit_class(int mod9) { return mod9 == 1 || mod9 == 8; }

// Core conductor computation from the factorization of a cube-free radicand.
// Valid for normalized and non-normalized orientations alike.
inline Conductor conductor_from(const Factorization& fac, Species species) {
  Conductor c;
  switch (species) {
    case Species::s1a: c.e = 2; break;
    case Species::s1b: c.e = 1; break;
    case Species::s2: c.e = 0; break;
  }
  u64 f = 1;
  for (int i = 0; i < c.e; ++i) f *= 3;
  for (const auto& [p, e] : fac.factors) {
    if (p == 3) continue;
    PrimeClass pc = classify_prime(p);
    if (mod9_is_unit_class(pc.mod9))
      ++c.u;
    else
      ++c.v;
    f *= p;
    c.primes.push_back(pc);
  }
  c.n = c.u + c.v;
  c.f = f;
  return c;
}

inline Conductor conductor_of(const Radicand& r) {
  return conductor_from(factorize(r.d), r.species);
}

inline Conductor conductor_of(const Radicand& r, const SpfTable& spf) {
  return conductor_from(factorize(r.d, spf), r.species);
}

// Validates a raw integer as an essentially square-free conductor value.
inline Conductor parse_conductor(u64 f) {
  if (f < 2) fail(errc::invalid_input, "conductor must be at least 2");
  Factorization fac = factorize(f);
  Conductor c;
  for (const auto& [p, e] : fac.factors) {
    if (p == 3) {
      if (e > 2)
        fail(errc::invalid_input, "conductor has 3-exponent above 2");
      c.e = e;
      continue;
    }
    if (e > 1)
      fail(errc::invalid_input,
           "conductor is not essentially square-free at prime " + std::to_string(p));
    PrimeClass pc = classify_prime(p);
    if (mod9_is_unit_class(pc.mod9))
      ++c.u;
    else
      ++c.v;
    c.primes.push_back(pc);
  }
  c.n = c.u + c.v;
  c.f = f;
  if (c.e == 0 && c.n == 0)
    fail(errc::invalid_input, "conductor 1 does not arise from any field");
  return c;
}

namespace detail {

// X_k = (2^k - (-1)^k) / 3 for k >= 0; the k = -1 value 1/2 is handled by the
// caller without leaving integer arithmetic.
inline u64 x_sequence(int k) {
  u64 two_k = 1ull << k;
  return (k % 2 == 0) ? (two_k - 1) / 3 : (two_k + 1) / 3;
}

}  // namespace detail

// Number of non-isomorphic pure cubic fields sharing the conductor.
inline u64 multiplicity(const Conductor& c) {
  if (c.e == 0 && c.n == 0)
    fail(errc::invalid_input, "multiplicity: conductor 1 is not valid");
  u64 m = 0;
  switch (c.e) {
    case 2:
      m = 1ull << c.n;
      break;
    case 1:
      m = (1ull << c.u) * detail::x_sequence(c.v);
      break;
    case 0:
      m = c.v == 0 ? (1ull << (c.u - 1))
                   : (1ull << c.u) * detail::x_sequence(c.v - 1);
      break;
  }
  if (m == 0)
    fail(errc::no_field_exists,
         "no pure cubic field has conductor " + std::to_string(c.f));
  return m;
}

struct Multiplet {
  Conductor conductor;
  u64 m = 0;                    // closed-form multiplicity
  std::vector<u64> companions;  // normalized radicands, ascending
};

// Generates every radicand 3^e0 * prod l_j^(e_j) compatible with the
// conductor, normalizes, and deduplicates. The companion count is expected to
// equal the closed-form multiplicity; tests assert that equivalence.
inline Multiplet enumerate_companions(const Conductor& c) {
  Multiplet out;
  out.conductor = c;
  out.m = multiplicity(c);

  std::vector<int> three_exps;
  if (c.e == 2)
    three_exps = {1, 2};
  else
    three_exps = {0};

  const u32 combos = 1u << c.n;
  for (int e0 : three_exps) {
    for (u32 mask = 0; mask < combos; ++mask) {
      u64 a = 1, b = 1;  // exponent-1 / exponent-2 parts
      if (e0 == 1) a = 3;
      if (e0 == 2) b = 3;
      for (int j = 0; j < c.n; ++j) {
        u64 p = c.primes[j].prime;
        if (mask & (1u << j))
          b *= p;
        else
          a *= p;
      }
      u64 d = a * b * b;
      u64 r9 = d % 9;
      bool species2 = d % 3 != 0 && (r9 == 1 || r9 == 8);
      if (c.e == 0 && !species2) continue;
      if (c.e == 1 && species2) continue;
      out.companions.push_back(a > b ? d : b * a * a);
    }
  }
  std::sort(out.companions.begin(), out.companions.end());
  out.companions.erase(std::unique(out.companions.begin(), out.companions.end()),
                       out.companions.end());
  return out;
}

}  // namespace kummer3
