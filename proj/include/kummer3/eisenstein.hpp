#pragma once

#include <array>
#include <optional>
#include <string>

#include "kummer3/arith.hpp"
#include "kummer3/errors.hpp"

namespace kummer3 {

// Element a + b*zeta3 of Z[zeta3], with zeta3^2 = -1 - zeta3.
struct EisensteinInt {
  i64 a = 0;
  i64 b = 0;

  friend constexpr bool operator==(const EisensteinInt&, const EisensteinInt&) = default;

  friend constexpr EisensteinInt operator+(EisensteinInt x, EisensteinInt y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend constexpr EisensteinInt operator-(EisensteinInt x, EisensteinInt y) {
    return {x.a - y.a, x.b - y.b};
  }
  friend constexpr EisensteinInt operator-(EisensteinInt x) { return {-x.a, -x.b}; }
  friend constexpr EisensteinInt operator*(EisensteinInt x, EisensteinInt y) {
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
  }

  // Image under zeta3 -> zeta3^2, i.e. the nontrivial automorphism tau.
  constexpr EisensteinInt conj() const { return {a - b, -b}; }

  constexpr i64 norm() const { return a * a - a * b + b * b; }

  // Primary: congruent to 1 modulo 3*Z[zeta3].
  constexpr bool is_primary() const {
    return ((a % 3) + 3) % 3 == 1 && b % 3 == 0;
  }
};

inline constexpr EisensteinInt kZeta{0, 1};
inline constexpr EisensteinInt kLambda{1, -1};  // 1 - zeta3, the prime above 3

inline constexpr std::array<EisensteinInt, 6> units() {
  return {EisensteinInt{1, 0},  EisensteinInt{0, 1},  EisensteinInt{-1, -1},
          EisensteinInt{-1, 0}, EisensteinInt{0, -1}, EisensteinInt{1, 1}};
}

inline std::array<EisensteinInt, 6> associates(EisensteinInt x) {
  std::array<EisensteinInt, 6> out{};
  auto us = units();
  for (size_t i = 0; i < us.size(); ++i) out[i] = x * us[i];
  return out;
}

// The unique associate congruent to 1 (mod 3). Fails for associates of lambda.
inline EisensteinInt primary_associate(EisensteinInt x) {
  if (x.norm() % 3 == 0)
    fail(errc::invalid_input,
         "primary_associate: norm divisible by 3, no primary associate");
  for (EisensteinInt y : associates(x))
    if (y.is_primary()) return y;
  fail(errc::inconsistency, "primary_associate: no primary associate found");
}

// Exact quotient x / y in Z[zeta3], if y divides x.
inline std::optional<EisensteinInt> exact_div(EisensteinInt x, EisensteinInt y) {
  i64 n = y.norm();
  if (n == 0) return std::nullopt;
  EisensteinInt z = x * y.conj();  // z / n is the complex quotient
  if (z.a % n || z.b % n) return std::nullopt;
  return EisensteinInt{z.a / n, z.b / n};
}

struct PrimarySplit {
  u64 p = 0;
  EisensteinInt pi1;  // the primary factor with b > 0
  EisensteinInt pi2;  // its conjugate
};

// Factors a split rational prime p = pi1 * pi2 into primary conjugate prime
// elements. The norm-form solution is found by a bounded scan over the first
// coordinate, solving a^2 - a*b + b^2 = p for b; primes are small enough here
// that nothing subtler is warranted.
inline PrimarySplit split_prime(u64 p) {
  if (!is_prime(p) || p % 3 != 1)
    fail(errc::invalid_input,
         "split_prime: need a prime congruent to 1 mod 3, got " + std::to_string(p));
  if (p > 100'000'000)
    fail(errc::configuration, "split_prime: prime exceeds the 10^8 desk-scale bound");
  u64 bound = 2 * isqrt(p / 3) + 2;
  for (u64 a = 0; a <= bound; ++a) {
    if (3 * a * a > 4 * p) break;
    u64 disc = 4 * p - 3 * a * a;
    u64 s = isqrt(disc);
    if (s * s != disc) continue;
    i64 ai = static_cast<i64>(a);
    i64 si = static_cast<i64>(s);
    for (i64 bi : {(ai + si) / 2, (ai - si) / 2}) {
      EisensteinInt x{ai, bi};
      if (x.norm() != static_cast<i64>(p)) continue;
      EisensteinInt pi = primary_associate(x);
      EisensteinInt pj = pi.conj();
      PrimarySplit out;
      out.p = p;
      out.pi1 = pi.b > 0 ? pi : pj;
      out.pi2 = pi.b > 0 ? pj : pi;
      if (out.pi1 * out.pi2 != EisensteinInt{static_cast<i64>(p), 0})
        fail(errc::inconsistency, "split_prime: factor product mismatch");
      return out;
    }
  }
  fail(errc::inconsistency, "split_prime: no norm-form representation found");
}

// Whether a primary element is congruent to 1 modulo lambda^3, by exact
// division of x - 1 by lambda^3 = -3 - 6*zeta3.
inline bool lambda_cube_congruent_one(EisensteinInt x) {
  if (!x.is_primary())
    fail(errc::invalid_input, "lambda_cube_congruent_one: input must be primary");
  constexpr EisensteinInt lambda_cubed{-3, -6};
  return exact_div(x - EisensteinInt{1, 0}, lambda_cubed).has_value();
}

struct CubicSymbol {
  int exponent = 0;  // symbol value is zeta3^exponent
  bool trivial = true;
};

namespace detail {

inline u64 least_primitive_root(u64 p) {
  Factorization f = factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& [q, e] : f.factors) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  fail(errc::inconsistency, "least_primitive_root: none found");
}

}  // namespace detail

// Cubic residue character of c at a primary prime above p, evaluated in the
// residue field F_p by the Euler criterion: trivial iff c^((p-1)/3) = 1.
// The exponent is normalized against zeta3 := g^((p-1)/3) for the least
// primitive root g mod p.
inline CubicSymbol cubic_symbol_rational(i64 c, u64 p) {
  if (!is_prime(p) || p % 3 != 1)
    fail(errc::invalid_input,
         "cubic_symbol_rational: need a prime congruent to 1 mod 3");
  i64 pm = static_cast<i64>(p);
  u64 cc = static_cast<u64>(((c % pm) + pm) % pm);
  if (cc == 0)
    fail(errc::invalid_input, "cubic_symbol_rational: p divides c");
  u64 r = powmod(cc, (p - 1) / 3, p);
  if (r == 1) return {0, true};
  u64 w = powmod(detail::least_primitive_root(p), (p - 1) / 3, p);
  if (r == w) return {1, false};
  if (r == mulmod(w, w, p)) return {2, false};
  fail(errc::inconsistency, "cubic_symbol_rational: value is not a cube root of unity");
}

}  // namespace kummer3
