#include "support.hpp"

#include <mfour/error.hpp>
#include <mfour/parse.hpp>

#include <doctest.h>

using namespace mfour;
using namespace testing_support;

namespace {

std::size_t syntax_offset(const std::string& text, Algebra a, int rank = 1) {
  try {
    parse_operator(text, a, rank);
  } catch (const SyntaxError& e) {
    return e.offset();
  }
  FAIL("no syntax error for '" << text << "'");
  return 0;
}

}  // namespace

TEST_SUITE("parser") {
  TEST_CASE("documented examples") {
    CHECK(parse_weyl("dx*(x-1)") == WeylOp::x(1) * WeylOp::d(1) - WeylOp::d(1) + WeylOp::constant(1, 1));
    CHECK(parse_shift("(s+1) - Ti*s") == ShiftOp::s() + ShiftOp(1) - ShiftOp::T(-1) * ShiftOp::s());
    CHECK(syntax_offset("s + +", Algebra::shift) == 4);
  }

  TEST_CASE("literals from the operator corpus") {
    CHECK(parse_shift("1 - Ti*s") == ShiftOp(1) - ShiftOp::T(-1) * ShiftOp::s());
    CHECK(parse_shift("s*T - T*(s+1)").is_zero());
    CHECK(parse_shift("Ti*s - (s+1)*Ti").is_zero());
    CHECK(parse_weyl("1 - dx") == WeylOp::constant(1, 1) - WeylOp::d(1));
    CHECK(parse_weyl("dx*x - x*dx").is_zero() == false);
    CHECK(parse_weyl("dx*x - x*dx - 1").is_zero());
    CHECK(parse_laurent("x*xi") == LaurentWeylOp::constant(1));
    CHECK(parse_weyl("x1*dx2 - dx2*x1", 2).is_zero());
    CHECK(parse_shift("-1/2*s^2 + 3/4") == ShiftOp(Poly({make_rational(3, 4), 0, make_rational(-1, 2)})));
    CHECK(parse_shift("--s") == ShiftOp::s());
  }

  TEST_CASE("print then parse is the identity on 200 random operators per algebra") {
    std::mt19937_64 rng(99);
    for (int k = 0; k < 200; ++k) {
      auto sh = random_shift(rng);
      CHECK(parse_shift(sh.to_string()) == sh);
      auto w1 = random_weyl(rng, 1);
      CHECK(parse_weyl(w1.to_string(), 1) == w1);
      auto w2 = random_weyl(rng, 2);
      CHECK(parse_weyl(w2.to_string(), 2) == w2);
      auto l = random_laurent(rng);
      CHECK(parse_laurent(l.to_string()) == l);
    }
  }

  TEST_CASE("parse then print is stable") {
    for (const char* t : {"(s+1) - Ti*s", "1 - Ti*s", "T^3*s - s*Ti^2", "s^2 + 1/3*T"}) {
      std::string once = parse_shift(t).to_string();
      CHECK(parse_shift(once).to_string() == once);
    }
  }

  TEST_CASE("syntax errors carry offsets") {
    CHECK(syntax_offset("(s+1", Algebra::shift) == 4);
    CHECK(syntax_offset("s)", Algebra::shift) == 1);
    CHECK(syntax_offset("", Algebra::shift) == 0);
    CHECK(syntax_offset("1/0", Algebra::shift) == 2);
    CHECK(syntax_offset("x^-1", Algebra::weyl) == 2);
    CHECK(syntax_offset("s $ 2", Algebra::shift) == 2);
  }

  TEST_CASE("atoms foreign to the algebra are rejected") {
    CHECK_THROWS_AS(parse_operator("T", Algebra::weyl), SyntaxError);
    CHECK_THROWS_AS(parse_operator("dx", Algebra::shift), SyntaxError);
    CHECK_THROWS_AS(parse_operator("x3", Algebra::weyl, 2), SyntaxError);
    CHECK_THROWS_AS(parse_operator("xi", Algebra::weyl), SyntaxError);
    try {
      parse_operator("T", Algebra::weyl);
    } catch (const SyntaxError& e) {
      CHECK(std::string(e.what()).find("unknown atom 'T'") != std::string::npos);
    }
  }

  TEST_CASE("exponent guard") {
    try {
      parse_shift("s^1000");
      FAIL("expected size guard");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::size_guard);
    }
  }
}
