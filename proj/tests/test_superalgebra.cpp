#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cartan/superalgebra.hpp"

using namespace cartan;

namespace {

AlgebraParams config_a() {
  return AlgebraParams(3, PrimeField(5), {1, 1, 1});
}

const Superalgebra& alg_a() {
  static Superalgebra o(config_a());
  return o;
}

SuperPoly mono(const Superalgebra& o, std::vector<std::uint32_t> alpha,
               std::vector<int> word, Fp c = 1) {
  Monomial m;
  m.alpha = std::move(alpha);
  for (int r : word) m.umask |= 1u << (r - o.n() - 1);
  return SuperPoly::from_terms(o.field(), {{o.encode(m), c}});
}

SuperPoly random_poly(const Superalgebra& o, std::mt19937_64& rng, int nterms,
                      std::optional<int> parity = {}) {
  for (;;) {
    std::vector<std::pair<MonoId, Fp>> terms;
    while (static_cast<int>(terms.size()) < nterms) {
      MonoId m = o.basis()[rng() % o.dim()];
      if (parity && o.parity(m) != *parity) continue;
      terms.emplace_back(m, 1 + rng() % (o.field().p() - 1));
    }
    SuperPoly out = SuperPoly::from_terms(o.field(), std::move(terms));
    if (!out.zero()) return out;
  }
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS(AlgebraParams(2, PrimeField(5), {1, 1}));
  CHECK_THROWS(AlgebraParams(3, PrimeField(5), {1, 1}));
  CHECK_THROWS(AlgebraParams(3, PrimeField(5), {1, 0, 1}));
  AlgebraParams p = config_a();
  CHECK(p.pi == std::vector<std::uint32_t>{4, 4, 4});
  CHECK(p.xi == 15);
  CHECK(p.mu(3) == 0);
  CHECK(p.mu(4) == 1);
  CHECK(p.conjugate(1) == 4);
  CHECK(p.conjugate(4) == 1);
}

TEST_CASE("multiplication examples") {
  const Superalgebra& o = alg_a();
  // x^(e1) * x^(e1) = C(2,1) x^(2e1) = 2 x^(2e1)
  CHECK(o.multiply(mono(o, {1, 0, 0}, {}), mono(o, {1, 0, 0}, {})) ==
        mono(o, {2, 0, 0}, {}, 2));
  // exterior square vanishes
  CHECK(o.multiply(mono(o, {0, 0, 0}, {4}), mono(o, {0, 0, 0}, {4})).zero());
  // x5 * x4 = -x4x5
  CHECK(o.multiply(mono(o, {0, 0, 0}, {5}), mono(o, {0, 0, 0}, {4})) ==
        mono(o, {0, 0, 0}, {4, 5}, 4));
  // truncation: x^(4e1) * x^(e1) = 0 (C(5,1) = 0 mod 5)
  CHECK(o.multiply(mono(o, {4, 0, 0}, {}), mono(o, {1, 0, 0}, {})).zero());
}

TEST_CASE("partial examples") {
  const Superalgebra& o = alg_a();
  CHECK(o.partial(1, mono(o, {2, 0, 0}, {})) == mono(o, {1, 0, 0}, {}));
  CHECK(o.partial(4, mono(o, {0, 0, 0}, {4, 5})) == mono(o, {0, 0, 0}, {5}));
  // d5(x4x5) = -x4
  CHECK(o.partial(5, mono(o, {0, 0, 0}, {4, 5})) ==
        mono(o, {0, 0, 0}, {4}, 4));
  CHECK(o.partial(1, mono(o, {0, 2, 0}, {})).zero());
  CHECK_THROWS(o.partial(7, mono(o, {0, 0, 0}, {4})));
  CHECK_THROWS(o.partial(0, mono(o, {0, 0, 0}, {4})));
}

TEST_CASE("basis enumeration") {
  const Superalgebra& o = alg_a();
  CHECK(o.dim() == 1000);  // 2^3 * 5^3
  CHECK(o.basis().size() == 1000);
  auto deg0 = o.basis_monomials(0);
  REQUIRE(deg0.size() == 1);
  CHECK(deg0[0].umask == 0);
  auto top = o.basis_monomials(15);
  REQUIRE(top.size() == 1);
  CHECK(top[0].alpha == std::vector<std::uint32_t>{4, 4, 4});
  CHECK(top[0].umask == 7);
  CHECK(o.basis_monomials(16).empty());
  CHECK(o.basis_monomials(-1).empty());

  // degree-major order with contiguous degree slices
  int last = 0;
  std::size_t count = 0;
  for (int d = 0; d <= 15; ++d) {
    for (MonoId m : o.basis_at(d)) {
      CHECK(o.zdeg(m) == d);
      CHECK(o.zdeg(m) >= last);
      last = o.zdeg(m);
      ++count;
    }
  }
  CHECK(count == 1000);

  // parity filter splits the full space evenly here
  std::size_t even = 0, odd = 0;
  for (int d = 0; d <= 15; ++d) {
    even += o.basis_monomials(d, 0).size();
    odd += o.basis_monomials(d, 1).size();
  }
  CHECK(even == 500);
  CHECK(odd == 500);
}

TEST_CASE("super-commutativity randomized") {
  const Superalgebra& o = alg_a();
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 10000; ++iter) {
    SuperPoly f = random_poly(o, rng, 1 + rng() % 3, rng() % 2);
    SuperPoly g = random_poly(o, rng, 1 + rng() % 3, rng() % 2);
    auto pf = o.homogeneous_parity(f), pg = o.homogeneous_parity(g);
    REQUIRE(pf);
    REQUIRE(pg);
    SuperPoly fg = o.multiply(f, g);
    SuperPoly gf = o.multiply(g, f);
    if ((*pf & *pg) != 0) gf = o.scale(o.field().p() - 1, gf);
    CHECK(fg == gf);
  }
}

TEST_CASE("associativity randomized") {
  const Superalgebra& o = alg_a();
  std::mt19937_64 rng(43);
  for (int iter = 0; iter < 10000; ++iter) {
    SuperPoly f = random_poly(o, rng, 1 + rng() % 2);
    SuperPoly g = random_poly(o, rng, 1 + rng() % 2);
    SuperPoly h = random_poly(o, rng, 1 + rng() % 2);
    CHECK(o.multiply(o.multiply(f, g), h) == o.multiply(f, o.multiply(g, h)));
  }
}

TEST_CASE("super-Leibniz randomized") {
  const Superalgebra& o = alg_a();
  std::mt19937_64 rng(44);
  for (int iter = 0; iter < 10000; ++iter) {
    int r = 1 + rng() % 6;
    SuperPoly f = random_poly(o, rng, 1 + rng() % 2, rng() % 2);
    SuperPoly g = random_poly(o, rng, 1 + rng() % 2);
    int pf = *o.homogeneous_parity(f);
    SuperPoly lhs = o.partial(r, o.multiply(f, g));
    SuperPoly rhs = o.multiply(o.partial(r, f), g);
    SuperPoly second = o.multiply(f, o.partial(r, g));
    if (o.params().mu(r) && pf) second = o.scale(o.field().p() - 1, second);
    rhs = o.add(rhs, second);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("partials commute or anticommute") {
  const Superalgebra& o = alg_a();
  const PrimeField& F = o.field();
  for (int i = 1; i <= 6; ++i) {
    for (int j = 1; j <= 6; ++j) {
      for (MonoId m : o.basis()) {
        SuperPoly sp = SuperPoly::from_terms(F, {{m, 1}});
        SuperPoly ij = o.partial(i, o.partial(j, sp));
        SuperPoly ji = o.partial(j, o.partial(i, sp));
        if (o.params().mu(i) && o.params().mu(j))
          ji = o.scale(F.p() - 1, ji);  // d_k d_l = -d_l d_k on Y1
        CHECK(ij == ji);
      }
    }
  }
}

TEST_CASE("degree additivity") {
  const Superalgebra& o = alg_a();
  std::mt19937_64 rng(45);
  for (int iter = 0; iter < 10000; ++iter) {
    MonoId a = o.basis()[rng() % o.dim()];
    MonoId b = o.basis()[rng() % o.dim()];
    MonoId out;
    Fp c;
    if (o.mono_mul(a, b, out, c))
      CHECK(o.zdeg(out) == o.zdeg(a) + o.zdeg(b));
  }
}

TEST_CASE("out-of-bound products vanish mod p anyway") {
  // dropping exponents above pi agrees with the Lucas value of the binomial
  PrimeField F(5);
  Superalgebra o(AlgebraParams(3, F, {2, 1, 1}));
  std::mt19937_64 rng(46);
  for (int iter = 0; iter < 2000; ++iter) {
    std::vector<std::uint32_t> a(3), b(3), sum(3);
    bool exceeded = false;
    for (int i = 0; i < 3; ++i) {
      a[i] = rng() % (o.params().pi[i] + 1);
      b[i] = rng() % (o.params().pi[i] + 1);
      sum[i] = a[i] + b[i];
      if (sum[i] > o.params().pi[i]) exceeded = true;
    }
    if (!exceeded) continue;
    CHECK(F.multi_binom(sum, a) == 0);
  }
}

TEST_CASE("homogeneity queries") {
  const Superalgebra& o = alg_a();
  SuperPoly mixed = o.add(mono(o, {1, 0, 0}, {}), mono(o, {0, 0, 0}, {4}));
  CHECK(!o.homogeneous_parity(mixed).has_value());
  CHECK(o.homogeneous_degree(mixed).has_value());  // both degree 1
  SuperPoly hom = o.add(mono(o, {1, 0, 0}, {4}), mono(o, {0, 1, 0}, {5}));
  CHECK(o.homogeneous_parity(hom) == 1);
  CHECK(o.homogeneous_degree(hom) == 2);
}
