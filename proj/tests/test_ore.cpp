#include "support.hpp"

#include <mfour/error.hpp>
#include <mfour/mellin.hpp>
#include <mfour/parse.hpp>

#include <doctest.h>

using namespace mfour;
using namespace testing_support;

namespace {

// Rank-1 Weyl operators acting on Q[x] (x multiplies, dx differentiates),
// independent of the normal-ordering code.
Poly act(const WeylOp& w, const Poly& f) {
  Poly out;
  for (const auto& [mono, c] : w.terms()) {
    Poly g = f;
    for (int k = 0; k < mono[1]; ++k) g = g.derivative();
    out += g * Poly::linear_power(Rational(0), mono[0]) * Poly(c);
  }
  return out;
}

}  // namespace

TEST_SUITE("ore") {
  TEST_CASE("defining commutation relations") {
    CHECK(ShiftOp::s() * ShiftOp::T() == ShiftOp::T() * (ShiftOp::s() + ShiftOp(1)));
    CHECK(ShiftOp::T(-1) * ShiftOp::s() == (ShiftOp::s() + ShiftOp(1)) * ShiftOp::T(-1));
    CHECK(ShiftOp::T() * ShiftOp::T(-1) == ShiftOp(1));
    CHECK(WeylOp::d(1) * WeylOp::x(1) == WeylOp::x(1) * WeylOp::d(1) + WeylOp::constant(1, 1));
    CHECK(WeylOp::d(2, 0) * WeylOp::x(2, 1) == WeylOp::x(2, 1) * WeylOp::d(2, 0));
    CHECK(LaurentWeylOp::x() * LaurentWeylOp::x(-1) == LaurentWeylOp::constant(1));
    CHECK(LaurentWeylOp::d() * LaurentWeylOp::x(-1) ==
          LaurentWeylOp::x(-1) * LaurentWeylOp::d() - LaurentWeylOp::x(-2));
  }

  TEST_CASE("associativity on 1000 random triples per algebra") {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 1000; ++k) {
      auto a = random_shift(rng), b = random_shift(rng), c = random_shift(rng);
      REQUIRE((a * b) * c == a * (b * c));
    }
    for (int rank : {1, 2}) {
      for (int k = 0; k < 1000; ++k) {
        auto a = random_weyl(rng, rank), b = random_weyl(rng, rank), c = random_weyl(rng, rank);
        REQUIRE((a * b) * c == a * (b * c));
      }
    }
    for (int k = 0; k < 1000; ++k) {
      auto a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
      REQUIRE((a * b) * c == a * (b * c));
    }
  }

  TEST_CASE("Weyl products agree with composition of differential operators") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
      auto a = random_weyl(rng, 1), b = random_weyl(rng, 1);
      Poly f = random_poly(rng, 5);
      CHECK(act(a * b, f) == act(a, act(b, f)));
    }
  }

  TEST_CASE("shift products agree with the right action on k(s)") {
    std::mt19937_64 rng(6);
    for (int k = 0; k < 200; ++k) {
      auto a = random_shift(rng), b = random_shift(rng);
      RatFun f(random_poly(rng, 2), Poly({small_rational(rng), 1}));
      CHECK(right_action(right_action(f, a), b) == right_action(f, a * b));
    }
  }

  TEST_CASE("Mellin transform on generators and as a ring isomorphism") {
    CHECK(mellin_op(LaurentWeylOp::x()) == ShiftOp::T());
    CHECK(mellin_op(LaurentWeylOp::x() * LaurentWeylOp::d()) == ShiftOp::s());
    CHECK(mellin_op(LaurentWeylOp::d()) == ShiftOp::T(-1) * ShiftOp::s());
    // d(x - 1) maps to the relation of B
    auto dx1 = LaurentWeylOp::d() * (LaurentWeylOp::x() - LaurentWeylOp::constant(1));
    CHECK(mellin_op(dx1) == ShiftOp::s() + ShiftOp(1) - ShiftOp::T(-1) * ShiftOp::s());
    std::mt19937_64 rng(7);
    for (int k = 0; k < 300; ++k) {
      auto a = random_laurent(rng), b = random_laurent(rng);
      CHECK(mellin_op(a * b) == mellin_op(a) * mellin_op(b));
      CHECK(inverse_mellin_op(mellin_op(a)) == a);
      auto sh = random_shift(rng);
      CHECK(mellin_op(inverse_mellin_op(sh)) == sh);
    }
  }

  TEST_CASE("Fourier automorphism squares to the antipode") {
    std::mt19937_64 rng(8);
    for (int rank : {1, 2, 3}) {
      CHECK(fourier_auto(WeylOp::x(rank, rank - 1)) == -WeylOp::d(rank, rank - 1));
      CHECK(fourier_auto(WeylOp::d(rank, 0)) == WeylOp::x(rank, 0));
      for (int k = 0; k < 1000; ++k) {
        auto a = random_weyl(rng, rank);
        REQUIRE(fourier_auto(fourier_auto(a)) == antipode(a));
        if (k < 100) {
          auto b = random_weyl(rng, rank);
          CHECK(fourier_auto(a * b) == fourier_auto(a) * fourier_auto(b));
        }
      }
    }
  }

  TEST_CASE("inversion twist: orders coincide, involutive, multiplicative") {
    std::mt19937_64 rng(9);
    CHECK(inversion_twist(ShiftOp::s()) == -ShiftOp::s());
    CHECK(inversion_twist(ShiftOp::T()) == -ShiftOp::T(-1));
    for (int k = 0; k < 200; ++k) {
      auto a = random_shift(rng), b = random_shift(rng);
      CHECK(inversion_twist(a, TwistOrder::invert_then_negate) == inversion_twist(a, TwistOrder::negate_then_invert));
      CHECK(inversion_twist(inversion_twist(a)) == a);
      CHECK(inversion_twist(a * b) == inversion_twist(a) * inversion_twist(b));
      CHECK(invert_coordinate(a * b) == invert_coordinate(a) * invert_coordinate(b));
    }
  }

  TEST_CASE("right reduction kills the right ideal and is linear") {
    std::mt19937_64 rng(10);
    const CyclicPresentation pres[] = {b_module(), e_module(), exp_module()};
    for (const auto& p : pres) {
      const Operator& g = p.relations.front();
      for (int k = 0; k < 100; ++k) {
        Operator e, h;
        if (p.algebra == Algebra::shift) {
          e = random_shift(rng);
          h = random_shift(rng);
        } else {
          e = random_weyl(rng, 1);
          h = random_weyl(rng, 1);
        }
        Operator gh = std::visit(
            [&](const auto& x) -> Operator {
              using T = std::decay_t<decltype(x)>;
              return x * std::get<T>(h);
            },
            g);
        Operator sum = std::visit(
            [&](const auto& x) -> Operator {
              using T = std::decay_t<decltype(x)>;
              return x + std::get<T>(gh);
            },
            e);
        CHECK(to_string(right_reduce(gh, p)) == "0");
        CHECK(right_reduce(sum, p) == right_reduce(e, p));
        CHECK(right_reduce(right_reduce(e, p), p) == right_reduce(e, p));
      }
    }
  }

  TEST_CASE("unsupported relations are refused") {
    auto g = ShiftOp::T(-1) + ShiftOp::T(1) + ShiftOp::s();
    CHECK_THROWS_AS(right_reduce(Operator(ShiftOp::s()), CyclicPresentation::shift(g)), Error);
    auto w = WeylOp::x(1) * WeylOp::d(1);
    CHECK_THROWS_AS(right_reduce(Operator(WeylOp::x(1)), CyclicPresentation::weyl(w)), Error);
    CHECK_THROWS_AS(right_reduce(Operator(LaurentWeylOp::x()), b_weyl_module()), Error);
    CHECK_THROWS_AS(right_reduce(Operator(WeylOp::x(1)), b_module()), Error);
  }
}
