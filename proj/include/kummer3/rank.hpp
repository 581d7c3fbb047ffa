#pragma once

#include <optional>
#include <string>

#include "kummer3/arith.hpp"
#include "kummer3/conductor.hpp"
#include "kummer3/errors.hpp"

namespace kummer3 {

// t ramified primes of Q(zeta3) in the closure, 2s of them above split primes,
// q* = 1 iff zeta3 is a relative norm; ambiguous rank is t - 2 + q*.
struct RamificationProfile {
  int t = 0;
  int s = 0;
  int qstar = 0;
  int ambiguous_rank = 0;
};

inline RamificationProfile ramification_profile(const Conductor& c) {
  RamificationProfile prof;
  int inert = 0;
  for (const PrimeClass& pc : c.primes) {
    if (pc.kind == PrimeKind::split_p)
      ++prof.s;
    else
      ++inert;
  }
  prof.t = 2 * prof.s + inert + (c.e >= 1 ? 1 : 0);
  // zeta3 is a norm exactly when every prime of f apart from 3 lies in the
  // +-1 (mod 9) classes; the lambda-adic congruence criterion reduces to this.
  prof.qstar = c.v == 0 ? 1 : 0;
  prof.ambiguous_rank = prof.t - 2 + prof.qstar;
  return prof;
}

// Rank bounds for the 3-class group of the cubic subfield, from the prime
// class profile of the conductor alone.
struct BwbProfile {
  int t_tilde = 0;
  int s_tilde = 0;
  int v_tilde = 0;
  int epsilon = 0;
  int delta = 0;
  int lower = 0;
  int upper = 0;
  std::optional<int> exact_r;
};

inline BwbProfile bwb_bounds(const Conductor& c) {
  BwbProfile b;
  b.t_tilde = c.n + (c.e >= 1 ? 1 : 0);
  for (const PrimeClass& pc : c.primes)
    if (pc.kind == PrimeKind::split_p) ++b.s_tilde;
  b.v_tilde = c.v;
  b.epsilon = b.v_tilde >= 1 ? 1 : 0;
  b.delta = b.t_tilde - 1 - b.epsilon;
  b.lower = std::max(b.s_tilde, b.delta);
  b.upper = b.s_tilde + b.delta;
  if (b.lower == b.upper) b.exact_r = b.lower;
  return b;
}

enum class Theorem { honda, ismaili1, ismaili2, rank2plus, other };

struct TheoremItem {
  Theorem theorem = Theorem::other;
  int item = 0;  // 1-based within its theorem, 0 otherwise
  int rank = -1; // ambiguous rank t - 2 + q*

  friend bool operator==(const TheoremItem&, const TheoremItem&) = default;
};

inline std::string item_label(const TheoremItem& it) {
  switch (it.theorem) {
    case Theorem::honda: return "honda(" + std::to_string(it.item) + ")";
    case Theorem::ismaili1: return "ismaili1(" + std::to_string(it.item) + ")";
    case Theorem::ismaili2: return "ismaili2(" + std::to_string(it.item) + ")";
    case Theorem::rank2plus: return "rank>=2";
    default: return "other";
  }
}

namespace detail {

struct ClassTally {
  int p1 = 0;   // split primes = 1 (mod 9)
  int p47 = 0;  // split primes = 4, 7 (mod 9)
  int q8 = 0;   // inert primes = 8 (mod 9)
  int q25 = 0;  // inert primes = 2, 5 (mod 9)
};

inline ClassTally tally_classes(const Conductor& c) {
  ClassTally t;
  for (const PrimeClass& pc : c.primes) {
    if (pc.kind == PrimeKind::split_p)
      (pc.mod9 == 1 ? t.p1 : t.p47)++;
    else
      (pc.mod9 == 8 ? t.q8 : t.q25)++;
  }
  return t;
}

}  // namespace detail

// Assigns the multiplet item of the rank-0 / rank-1 classification theorems.
// The assignment depends only on e and the mod-9 classes of the primes of f,
// never on radicand exponents. Conductors of higher rank are labeled
// rank2plus with the computed rank attached.
inline TheoremItem classify_item(const Conductor& c) {
  RamificationProfile prof = ramification_profile(c);
  detail::ClassTally k = detail::tally_classes(c);
  TheoremItem out;
  out.rank = prof.ambiguous_rank;
  if (prof.ambiguous_rank >= 2) {
    out.theorem = Theorem::rank2plus;
    return out;
  }
  if (prof.ambiguous_rank == 0) {
    out.theorem = Theorem::honda;
    if (c.e == 2 && c.n == 0)
      out.item = 1;
    else if (c.e == 0 && c.n == 1 && k.q8 == 1)
      out.item = 2;
    else if (c.e == 1 && c.n == 1 && k.q25 == 1)
      out.item = 3;
    else if (c.e == 2 && c.n == 1 && k.q25 == 1)
      out.item = 4;
    else if (c.e == 0 && c.n == 2 && k.q25 == 2)
      out.item = 5;
    else
      out.theorem = Theorem::other;
    return out;
  }
  if (prof.s == 1) {
    out.theorem = Theorem::ismaili1;
    if (c.e == 0 && c.n == 1 && k.p1 == 1)
      out.item = 1;
    else if (c.e == 1 && c.n == 1 && k.p47 == 1)
      out.item = 2;
    else if (c.e == 2 && c.n == 1 && k.p47 == 1)
      out.item = 3;
    else if (c.e == 0 && c.n == 2 && k.p47 == 1 && k.q25 == 1)
      out.item = 4;
    else
      out.theorem = Theorem::other;
    return out;
  }
  out.theorem = Theorem::ismaili2;
  if (c.e == 2 && c.n == 1 && k.q8 == 1)
    out.item = 1;
  else if (c.e == 0 && c.n == 2 && k.q8 == 2)
    out.item = 2;
  else if (c.e == 1 && c.n == 2 && k.q25 == 2)
    out.item = 3;
  else if (c.e == 1 && c.n == 2 && k.q25 == 1 && k.q8 == 1)
    out.item = 4;
  else if (c.e == 2 && c.n == 2 && k.q25 >= 1 && k.p1 + k.p47 == 0)
    out.item = 5;
  else if (c.e == 0 && c.n == 3 && k.q25 == 3)
    out.item = 6;
  else if (c.e == 0 && c.n == 3 && k.q25 == 2 && k.q8 == 1)
    out.item = 7;
  else
    out.theorem = Theorem::other;
  return out;
}

namespace detail {

struct ShapeTally {
  int e0 = 0;  // exponent of 3 in d
  ClassTally k;
  int np() const { return k.p1 + k.p47; }
  int nq() const { return k.q8 + k.q25; }
  u64 mod9 = 0;
  bool cube_free = true;
};

inline ShapeTally shape_tally(const Factorization& d) {
  ShapeTally s;
  s.mod9 = d.value % 9;
  for (const auto& [p, e] : d.factors) {
    if (e > 2) {
      s.cube_free = false;
      return s;
    }
    if (p == 3) {
      s.e0 = e;
      continue;
    }
    int m9 = static_cast<int>(p % 9);
    if (p % 3 == 1)
      (m9 == 1 ? s.k.p1 : s.k.p47)++;
    else
      (m9 == 8 ? s.k.q8 : s.k.q25)++;
  }
  return s;
}

}  // namespace detail

// Direct pattern match of a cube-free radicand d > 1 against the nine
// rank-one shapes. This is an independent route to the rank and deliberately
// avoids the conductor and the t - 2 + q* formula.
inline bool matches_rank1_shape(const Factorization& d) {
  detail::ShapeTally s = detail::shape_tally(d);
  if (!s.cube_free)
    fail(errc::invalid_input, "matches_rank1_shape: radicand is not cube-free");
  bool pm1 = s.mod9 == 1 || s.mod9 == 8;
  // d = p1^e1, p1 = 1 (mod 3)
  if (s.e0 == 0 && s.np() == 1 && s.nq() == 0) return true;
  // d = 3^e p1^e1, p1 = 4, 7 (mod 9)
  if (s.e0 >= 1 && s.k.p47 == 1 && s.np() == 1 && s.nq() == 0) return true;
  // d = p1^e1 q1^f1 = +-1 (mod 9), p1 and -q1 = 4, 7 (mod 9)
  if (s.e0 == 0 && s.k.p47 == 1 && s.np() == 1 && s.k.q25 == 1 && s.nq() == 1 && pm1)
    return true;
  // d = 3^e q1^f1, q1 = -1 (mod 9)
  if (s.e0 >= 1 && s.np() == 0 && s.k.q8 == 1 && s.nq() == 1) return true;
  // d = q1^f1 q2^f2, q1 = q2 = -1 (mod 9)
  if (s.e0 == 0 && s.np() == 0 && s.k.q8 == 2 && s.nq() == 2) return true;
  // d = q1^f1 q2^f2 != +-1 (mod 9), some qi != -1 (mod 9)
  if (s.e0 == 0 && s.np() == 0 && s.nq() == 2 && s.k.q25 >= 1 && !pm1) return true;
  // d = 3^e q1^f1 q2^f2, some qi != -1 (mod 9)
  if (s.e0 >= 1 && s.np() == 0 && s.nq() == 2 && s.k.q25 >= 1) return true;
  // d = q1 q2 q3 powers = +-1 (mod 9), q1, q2 = 2, 5 and q3 = -1 (mod 9)
  if (s.e0 == 0 && s.np() == 0 && s.k.q25 == 2 && s.k.q8 == 1 && pm1) return true;
  // d = q1 q2 q3 powers = +-1 (mod 9), all = 2, 5 (mod 9)
  if (s.e0 == 0 && s.np() == 0 && s.k.q25 == 3 && s.nq() == 3 && pm1) return true;
  return false;
}

// Direct pattern match against the rank-zero (3 does not divide h) shapes.
inline bool matches_rank0_shape(const Factorization& d) {
  detail::ShapeTally s = detail::shape_tally(d);
  if (!s.cube_free)
    fail(errc::invalid_input, "matches_rank0_shape: radicand is not cube-free");
  bool pm1 = s.mod9 == 1 || s.mod9 == 8;
  if (s.np() != 0) return false;
  // d = 3^e
  if (s.e0 >= 1 && s.nq() == 0) return true;
  // d = q1^f1, q1 = -1 (mod 9)
  if (s.e0 == 0 && s.k.q8 == 1 && s.nq() == 1) return true;
  // d = q1^f1, q1 = 2, 5 (mod 9)
  if (s.e0 == 0 && s.k.q25 == 1 && s.nq() == 1) return true;
  // d = 3^e q1^f1, q1 = 2, 5 (mod 9)
  if (s.e0 >= 1 && s.k.q25 == 1 && s.nq() == 1) return true;
  // d = q1^f1 q2^f2 = +-1 (mod 9), q1, q2 = 2, 5 (mod 9)
  if (s.e0 == 0 && s.k.q25 == 2 && s.nq() == 2 && pm1) return true;
  return false;
}

}  // namespace kummer3
