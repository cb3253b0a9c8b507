#include "support.hpp"

#include <mfour/cyclotomic.hpp>
#include <mfour/error.hpp>
#include <mfour/finite_field.hpp>

#include <doctest.h>

using namespace mfour;
using testing_support::random_poly;

namespace {

int mobius(int n) {
  int out = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    out = -out;
  }
  return n > 1 ? -out : out;
}

}  // namespace

TEST_SUITE("scalars") {
  TEST_CASE("polynomial division and Bezout identities on random inputs") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
      Poly a = random_poly(rng, 5), b = random_poly(rng, 3);
      if (b.is_zero()) continue;
      auto qr = divmod(a, b);
      CHECK(qr.quotient * b + qr.remainder == a);
      CHECK(qr.remainder.degree() < b.degree());
      auto bz = poly_xgcd(a, b);
      CHECK(bz.u * a + bz.v * b == bz.gcd);
      if (!bz.gcd.is_zero()) {
        CHECK(divides(bz.gcd, a));
        CHECK(divides(bz.gcd, b));
      }
    }
  }

  TEST_CASE("gcd of products recovers the common factor") {
    Poly common = Poly::linear_power(make_rational(1, 2), 2);
    Poly a = common * Poly({1, 0, 1});
    Poly b = common * Poly({-3, 1});
    CHECK(poly_gcd(a, b) == common.monic());
  }

  TEST_CASE("rational roots with multiplicity and irreducible cofactor") {
    Poly p = Poly::linear_power(make_rational(1, 2), 2) * Poly({3, 1}) * Poly({1, 0, 1}).pow(1);
    auto rr = rational_roots(p);
    REQUIRE(rr.roots.size() == 2);
    CHECK(rr.roots[0] == std::make_pair(Rational(-3), 1));
    CHECK(rr.roots[1] == std::make_pair(make_rational(1, 2), 2));
    CHECK(rr.cofactor.degree() == 2);
    CHECK(root_multiplicity(p, make_rational(1, 2)) == 2);
    CHECK(root_multiplicity(p, Rational(5)) == 0);
  }

  TEST_CASE("shift and evaluation agree") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 50; ++k) {
      Poly p = random_poly(rng, 4);
      Rational c = testing_support::small_rational(rng), x = testing_support::small_rational(rng);
      CHECK(p.shift(c).eval(x) == p.eval(x + c));
      CHECK(p.negate_variable().eval(x) == p.eval(-x));
    }
  }

  TEST_CASE("partial fractions recombine to the original function") {
    RatFun f(Poly({1, 2, 0, 1}), Poly::linear_power(Rational(1), 2) * Poly({make_rational(1, 3), 1}));
    auto pf = partial_fractions(f);
    CHECK(pf.recombine() == f);
    REQUIRE(pf.parts.size() == 2);
    CHECK(pf.parts[0].pole == make_rational(-1, 3));
    CHECK(pf.parts[1].order == 2);
    CHECK_THROWS_AS(partial_fractions(RatFun(Poly(1), Poly({1, 0, 1}))), Error);
  }

  TEST_CASE("valuations of rational functions") {
    RatFun f(Poly::linear_power(Rational(2), 3), Poly::linear_power(Rational(0), 2));
    CHECK(f.valuation(Rational(2)) == 3);
    CHECK(f.valuation(Rational(0)) == -2);
    CHECK(f.valuation(Rational(1)) == 0);
    CHECK(RatFun().valuation(Rational(0)) == kZeroValuation);
  }

  TEST_CASE("series quotient times the denominator gives the numerator") {
    Poly a({1, 1}), b({2, 0, 1});
    auto c = series_quotient(a, b, Rational(1), 6);
    // b expanded at s = 1: 3 + 2u + u^2; a = 2 + u
    std::vector<Rational> bs{3, 2, 1}, as{2, 1, 0, 0, 0, 0};
    for (int k = 0; k < 6; ++k) {
      Rational acc = 0;
      for (int i = 0; i <= k && i < 3; ++i) acc += bs[i] * c[k - i];
      CHECK(acc == as[k]);
    }
  }

  TEST_CASE("sum of primitive N-th roots of unity is the Mobius function") {
    for (int n = 1; n <= 30; ++n) {
      auto ring = CyclotomicRing::make(n);
      CHECK(ring->degree() == euler_phi(n));
      CycScalar all, prim;
      for (int k = 0; k < n; ++k) {
        auto z = CycScalar::root_of_unity(ring, k);
        all += z;
        if (std::gcd(k, n) == 1) prim += z;
      }
      CHECK(all == CycScalar(n == 1 ? 1 : 0));
      CHECK(prim == CycScalar(mobius(n)));
    }
  }

  TEST_CASE("norms, inverses and Galois action") {
    for (int p : {2, 3, 5, 7, 11}) {
      auto z = CycScalar::root_of_unity(p, 1);
      CHECK((CycScalar(1) - z).norm() == Rational(p));
    }
    auto ring = CyclotomicRing::make(12);
    CycScalar a(ring, {Rational(2), Rational(-1), make_rational(1, 2), Rational(3)});
    CHECK(a * a.inverse() == CycScalar(1));
    CycScalar b = CycScalar::root_of_unity(ring, 5) + CycScalar(3);
    for (long k : {1L, 5L, 7L, 11L}) CHECK((a * b).galois(k) == a.galois(k) * b.galois(k));
    CHECK(a.norm() == (a * a.galois(5) * a.galois(7) * a.galois(11)).rational_part());
  }

  TEST_CASE("inflation and compression between conductors") {
    auto z3 = CycScalar::root_of_unity(3, 1);
    CHECK(z3.inflate(6) == CycScalar::root_of_unity(6, 2));
    CHECK(CycScalar::root_of_unity(6, 2).compress().conductor() == 3);
    auto [x, y] = align(z3, CycScalar::root_of_unity(4, 1));
    CHECK(x.conductor() == y.conductor());
    CHECK(x.conductor() % 12 == 0);
    CHECK((CycScalar::root_of_unity(6, 3)) == CycScalar(-1));
  }

  TEST_CASE("finite fields satisfy the field axioms exhaustively") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27}) {
      auto [p, e] = prime_power(q);
      auto F = FiniteField::make(p, e);
      REQUIRE(F->q() == q);
      for (int a = 0; a < q; ++a) {
        CHECK(F->add(a, F->neg(a)) == 0);
        if (a) CHECK(F->mul(a, F->inv(a)) == 1);
        for (int b = 0; b < q; ++b) {
          CHECK(F->add(a, b) == F->add(b, a));
          CHECK(F->mul(a, b) == F->mul(b, a));
          CHECK(F->trace(F->add(a, b)) == (F->trace(a) + F->trace(b)) % p);
          for (int c = 0; c < q; c += 3) CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
        }
      }
      // primitive element has order exactly q - 1
      int g = F->primitive(), x = 1;
      for (int k = 1; k < q - 1; ++k) {
        x = F->mul(x, g);
        CHECK(x != 1);
        CHECK(F->dlog(x) == k);
      }
      CHECK(F->pow(g, q - 1) == 1);
      // Frobenius is additive
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) CHECK(F->pow(F->add(a, b), p) == F->add(F->pow(a, p), F->pow(b, p)));
    }
  }

  TEST_CASE("prime power parsing rejects non prime powers") {
    CHECK(prime_power(49) == std::make_pair(7, 2));
    CHECK_THROWS_AS(prime_power(12), Error);
    CHECK_THROWS_AS(prime_power(1), Error);
  }

  TEST_CASE("rational literals") {
    CHECK(parse_rational("-6/4") == make_rational(-3, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
  }
}
