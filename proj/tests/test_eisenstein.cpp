#include <catch2/catch.hpp>

#include <random>
#include <vector>

#include "kummer3/eisenstein.hpp"

using namespace kummer3;

namespace {

// Every (a, b) with a^2 - a*b + b^2 = p, by full scan over the solution box.
std::vector<EisensteinInt> norm_form_solutions(u64 p) {
  i64 bound = static_cast<i64>(2 * isqrt(p / 3) + 2);
  std::vector<EisensteinInt> out;
  for (i64 a = -bound; a <= bound; ++a)
    for (i64 b = -bound; b <= bound; ++b)
      if (EisensteinInt{a, b}.norm() == static_cast<i64>(p))
        out.push_back({a, b});
  return out;
}

}  // namespace

TEST_CASE("ring identities", "[eisenstein]") {
  EisensteinInt lambda = kLambda;
  CHECK(lambda * lambda == EisensteinInt{0, -3});  // lambda^2 = -3 zeta3
  EisensteinInt lambda4 = lambda * lambda * lambda * lambda;
  CHECK(kZeta * lambda4 == EisensteinInt{9, 0});   // 9 = zeta3 lambda^4
  CHECK(lambda.norm() == 3);
  CHECK((kZeta * kZeta * kZeta) == EisensteinInt{1, 0});
}

TEST_CASE("norm and conjugation properties", "[eisenstein]") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<i64> dist(-500, 500);
  for (int i = 0; i < 1000; ++i) {
    EisensteinInt x{dist(rng), dist(rng)};
    EisensteinInt y{dist(rng), dist(rng)};
    CHECK((x * y).norm() == x.norm() * y.norm());
    CHECK(x.norm() >= 0);
    CHECK(x.conj().conj() == x);
    CHECK(x.conj().norm() == x.norm());
    CHECK((x * y).conj() == x.conj() * y.conj());
    CHECK(x * x.conj() == EisensteinInt{x.norm(), 0});
  }
}

TEST_CASE("primary associate", "[eisenstein]") {
  SECTION("examples") {
    CHECK(primary_associate({3, 1}) == EisensteinInt{-2, -3});
    CHECK(primary_associate({-17, 0}) == EisensteinInt{-17, 0});
    CHECK_THROWS_AS(primary_associate(kLambda), Error);
  }
  SECTION("exists uniquely when the norm is coprime to 3") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<i64> dist(-80, 80);
    int checked = 0;
    while (checked < 500) {
      EisensteinInt x{dist(rng), dist(rng)};
      if (x.norm() == 0 || x.norm() % 3 == 0) continue;
      ++checked;
      int primary = 0;
      for (EisensteinInt y : associates(x))
        if (y.is_primary()) ++primary;
      CHECK(primary == 1);
    }
  }
}

TEST_CASE("split_prime", "[eisenstein]") {
  SECTION("p = 7 against the exhaustive oracle") {
    PrimarySplit sp = split_prime(7);
    CHECK(sp.pi1 == EisensteinInt{1, 3});
    CHECK(sp.pi2 == EisensteinInt{-2, -3});
    CHECK(sp.pi1 * sp.pi2 == EisensteinInt{7, 0});
    // every primary solution of the norm form is one of the two factors
    for (EisensteinInt x : norm_form_solutions(7)) {
      if (!x.is_primary()) continue;
      CHECK((x == sp.pi1 || x == sp.pi2));
    }
  }
  SECTION("p = 13") {
    PrimarySplit sp = split_prime(13);
    CHECK(sp.pi1.is_primary());
    CHECK(sp.pi2.is_primary());
    CHECK(sp.pi2 == sp.pi1.conj());
    CHECK(sp.pi1.norm() == 13);
    CHECK(sp.pi1 * sp.pi2 == EisensteinInt{13, 0});
    int primary = 0;
    for (EisensteinInt x : norm_form_solutions(13))
      if (x.is_primary()) ++primary;
    CHECK(primary == 2);
  }
  SECTION("rejections") {
    CHECK_THROWS_AS(split_prime(5), Error);   // 5 = 2 (mod 3)
    CHECK_THROWS_AS(split_prime(4), Error);   // composite
    CHECK_THROWS_AS(split_prime(3), Error);
  }
}

TEST_CASE("lambda-cubed congruence", "[eisenstein]") {
  SECTION("examples") {
    CHECK(lambda_cube_congruent_one({-17, 0}));
    PrimarySplit sp = split_prime(7);
    CHECK_FALSE(lambda_cube_congruent_one(sp.pi1));
    CHECK_FALSE(lambda_cube_congruent_one(sp.pi2));
    CHECK_FALSE(lambda_cube_congruent_one({-5, 0}));
    CHECK_THROWS_AS(lambda_cube_congruent_one({3, 1}), Error);  // not primary
  }
  SECTION("congruence lemmas up to 1e4") {
    for (u64 p = 2; p < 10'000; ++p) {
      if (!is_prime(p) || p == 3) continue;
      if (p % 3 == 1) {
        PrimarySplit sp = split_prime(p);
        bool pass1 = lambda_cube_congruent_one(sp.pi1);
        bool pass2 = lambda_cube_congruent_one(sp.pi2);
        if (p % 9 == 1) {
          CHECK(pass1);
          CHECK(pass2);
        } else {  // p = 4, 7 (mod 9)
          CHECK_FALSE(pass1);
          CHECK_FALSE(pass2);
        }
      } else {
        bool pass = lambda_cube_congruent_one({-static_cast<i64>(p), 0});
        CHECK(pass == (p % 9 == 8));
      }
    }
  }
}

TEST_CASE("cubic residue symbol", "[eisenstein]") {
  SECTION("examples with direct modular exponentiation oracle") {
    auto euler = [](u64 c, u64 p) {  // repeated multiplication, no powmod
      u64 r = 1;
      for (u64 i = 0; i < (p - 1) / 3; ++i) r = (r * c) % p;
      return r;
    };
    CHECK(euler(3, 7) == 2);
    CHECK_FALSE(cubic_symbol_rational(3, 7).trivial);
    CHECK(euler(3, 61) == 1);
    CHECK(cubic_symbol_rational(3, 61).trivial);
    CHECK(euler(2, 13) == 3);
    CHECK_FALSE(cubic_symbol_rational(2, 13).trivial);
    CHECK(cubic_symbol_rational(1, 7).trivial);
    CHECK(cubic_symbol_rational(2, 31).trivial);  // 2^10 = 1024 = 1 (mod 31)
  }
  SECTION("rejections") {
    CHECK_THROWS_AS(cubic_symbol_rational(7, 7), Error);    // p divides c
    CHECK_THROWS_AS(cubic_symbol_rational(14, 7), Error);
    CHECK_THROWS_AS(cubic_symbol_rational(3, 5), Error);    // p = 2 (mod 3)
    CHECK_THROWS_AS(cubic_symbol_rational(3, 91), Error);   // composite
  }
  SECTION("multiplicativity and cubes") {
    std::mt19937_64 rng(321);
    std::vector<u64> split_primes;
    for (u64 p = 7; split_primes.size() < 40; p += 6)
      if (is_prime(p)) split_primes.push_back(p);
    for (int i = 0; i < 500; ++i) {
      u64 p = split_primes[rng() % split_primes.size()];
      i64 c1 = 1 + static_cast<i64>(rng() % 10'000);
      i64 c2 = 1 + static_cast<i64>(rng() % 10'000);
      if (c1 % p == 0 || c2 % p == 0) continue;
      auto s1 = cubic_symbol_rational(c1, p);
      auto s2 = cubic_symbol_rational(c2, p);
      auto s12 = cubic_symbol_rational(c1 * c2, p);
      CHECK(s12.exponent == (s1.exponent + s2.exponent) % 3);
      auto cube = cubic_symbol_rational(c1 * c1 * c1, p);
      CHECK(cube.trivial);
    }
  }
}
