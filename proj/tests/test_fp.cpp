#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "cartan/fp.hpp"

using namespace cartan;
using boost::multiprecision::cpp_int;

namespace {

// exact big-integer binomial, the independent oracle
Fp binom_oracle(std::uint32_t p, std::uint64_t a, std::uint64_t b) {
  cpp_int num = 1, den = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    num *= a - b + i;
    den *= i;
  }
  cpp_int q = num / den;
  return static_cast<Fp>(static_cast<cpp_int>(q % p));
}

}  // namespace

TEST_CASE("field validation") {
  CHECK_THROWS(PrimeField(4));
  CHECK_THROWS(PrimeField(3));
  CHECK_THROWS(PrimeField(2));
  CHECK_THROWS(PrimeField(1));
  CHECK_THROWS(PrimeField(9));
  CHECK_NOTHROW(PrimeField(5));
  CHECK_NOTHROW(PrimeField(101));
}

TEST_CASE("add and inverse examples") {
  PrimeField f5(5);
  CHECK(f5.add(3, 4) == 2);
  for (Fp x = 0; x < 5; ++x) CHECK(f5.add(0, x) == x);
  PrimeField f7(7);
  CHECK(f7.add(6, 1) == 0);
  CHECK(f5.inv(2) == 3);
  CHECK(f5.inv(1) == 1);
  CHECK(f7.inv(3) == 5);
  CHECK_THROWS_AS(f5.inv(0), std::domain_error);
}

TEST_CASE("binomials mod p") {
  PrimeField f5(5);
  CHECK(f5.binom(2, 1) == 2);
  CHECK(f5.binom(5, 1) == binom_oracle(5, 5, 1));
  CHECK(f5.binom(5, 1) == 0);
  CHECK(f5.binom(8, 4) == binom_oracle(5, 8, 4));
  CHECK(f5.binom(8, 4) == 0);
  CHECK_THROWS_AS(f5.binom(3, 4), std::domain_error);

  std::vector<std::uint32_t> a{3, 1, 0}, b{2, 1, 0};
  CHECK(f5.multi_binom(a, b) == f5.mul(f5.binom(3, 2), f5.binom(1, 1)));
  std::vector<std::uint32_t> bad{4, 0, 0};
  CHECK_THROWS_AS(f5.multi_binom(a, bad), std::domain_error);
}

TEST_CASE("lucas agrees with the exact oracle") {
  std::mt19937_64 rng(20240517);
  for (std::uint32_t p : {5u, 7u, 11u}) {
    PrimeField f(p);
    std::uint64_t lim = 1;
    for (int i = 0; i < 4; ++i) lim *= p;  // a, b < p^4
    for (int iter = 0; iter < 3000; ++iter) {
      std::uint64_t a = rng() % lim;
      std::uint64_t b = rng() % (a + 1);
      CHECK(f.binom(a, b) == binom_oracle(p, a, b));
    }
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {5u, 7u, 13u}) {
    PrimeField f(p);
    for (int iter = 0; iter < 4000; ++iter) {
      Fp a = rng() % p, b = rng() % p, c = rng() % p;
      CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      CHECK(f.add(a, f.neg(a)) == 0);
      CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
    }
  }
}
