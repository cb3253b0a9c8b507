#include "support.hpp"

#include <mfour/checks.hpp>
#include <mfour/error.hpp>
#include <mfour/mellin.hpp>
#include <mfour/parse.hpp>

#include <doctest.h>

using namespace mfour;
using namespace testing_support;

namespace {

const Rational kHalf = make_rational(1, 2);
const Rational kThird = make_rational(1, 3);

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::invalid_argument;
}

// f . (a(s) - T^-1 b(s)) = f(s) a(s) - f(s-1) b(s), written out by hand.
RatFun apply_two_term(const RatFun& f, const Poly& a, const Poly& b) { return f * RatFun(a) - f.shift(-1) * RatFun(b); }

}  // namespace

TEST_SUITE("mellin") {
  TEST_CASE("Mellin images of the restricted B and of exp") {
    auto b = mellin_module(b_weyl_module());
    REQUIRE(b.algebra == Algebra::shift);
    CHECK(to_string(b.relations.front()) == to_string(Operator(parse_shift("(s+1) - Ti*s"))));
    auto e = mellin_module(exp_module());
    CHECK(std::get<ShiftOp>(e.relations.front()) == parse_shift("1 - Ti*s"));
    CHECK(std::get<ShiftOp>(b_module().relations.front()) == parse_shift("(s+1) - Ti*s"));
    CHECK(std::get<ShiftOp>(e_module().relations.front()) == parse_shift("1 - Ti*s"));
  }

  TEST_CASE("right action agrees with the hand-expanded relation") {
    RatFun f(Poly(1), Poly({1, 1}));
    CHECK(apply_two_term(f, Poly({1, 1}), Poly::s()).is_zero());
    CHECK(right_action(f, parse_shift("(s+1) - Ti*s")).is_zero());
    RatFun one(Poly(1));
    CHECK(right_action(one, parse_shift("(s+1) - Ti*s")) == apply_two_term(one, Poly({1, 1}), Poly::s()));
    CHECK(!apply_two_term(one, Poly({1, 1}), Poly::s()).is_zero());
  }

  TEST_CASE("embedding B into k(s)") {
    RatFun f(Poly(1), Poly({1, 1}));
    auto lat = embed_in_Ks(b_module(), f, 6);
    CHECK(lat.contains(f));
    CHECK(lat.chi() == 0);
    CHECK(code_of([] { embed_in_Ks(b_module(), RatFun(Poly(1)), 6); }) == ErrorCode::not_a_morphism);
    // acceptance is stable under nonzero rational multiples
    for (long c : {-3L, 2L, 7L}) CHECK_NOTHROW(embed_in_Ks(b_module(), f * RatFun(Poly(Rational(c, 5))), 6));
    CHECK(code_of([] { embed_in_Ks(exp_module(), RatFun(Poly(1)), 4); }) == ErrorCode::mismatch);
  }

  TEST_CASE("accepted images are exactly those killed by the relation") {
    std::mt19937_64 rng(12);
    const ShiftOp g = std::get<ShiftOp>(b_module().relations.front());
    for (int k = 0; k < 60; ++k) {
      Poly den = Poly({small_rational(rng), 1}) * Poly({Rational(draw(rng, -3, 3)), 1});
      RatFun f(random_poly(rng, 1), den);
      bool killed = apply_two_term(f, Poly({1, 1}), Poly::s()).is_zero();
      bool accepted = true;
      try {
        embed_in_Ks(b_module(), f, 4);
      } catch (const Error& e) {
        accepted = e.code() != ErrorCode::not_a_morphism;
      }
      CHECK(killed == accepted);
    }
  }

  TEST_CASE("windowed lattices: cyclic generator and valuations") {
    RatFun a(Poly(1), Poly({-kHalf, 1}));
    RatFun b(Poly(1), Poly::linear_power(make_rational(3, 2), 2));
    WindowedLattice lat(kHalf, 3, {a, b});
    // common denominator (s-1/2)(s-3/2)^2 with coprime numerators
    RatFun expected(Poly(1), Poly({-kHalf, 1}) * Poly::linear_power(make_rational(3, 2), 2));
    CHECK(lat.cyclic_generator() == expected);
    CHECK(lat.valuation(make_rational(3, 2)) == -2);
    CHECK(lat.valuation(kHalf) == -1);
    CHECK(lat.valuation(Rational(0)) == 0);
    CHECK(lat.contains(a * RatFun(Poly({1, 1}))));
    CHECK(!lat.contains(RatFun(Poly(1), Poly::linear_power(kHalf, 2))));
    CHECK(lat.in_window(make_rational(7, 2)));
    CHECK(!lat.in_window(make_rational(9, 2)));
  }

  TEST_CASE("Hom to the free module vanishes for the B lattice but not for k[s]") {
    auto lat = embed_in_Ks(b_module(), RatFun(Poly(1), Poly({1, 1})), 8);
    auto h = hom_to_free_vanishes(lat, 5);
    CHECK(h.vanishes);
    CHECK(h.forced_degree > 5);
    WindowedLattice free_lat(Rational(0), 8, {RatFun(Poly(1))});
    CHECK(!hom_to_free_vanishes(free_lat, 5).vanishes);
    CHECK(code_of([&] { hom_to_free_vanishes(lat, 7); }) == ErrorCode::window);
  }

  TEST_CASE("skyscraper families: fibers and tensor products") {
    for (int n = 1; n <= 3; ++n) {
      auto fam = i0_module(kThird, n, 3);
      for (int i = -3; i <= 3; ++i) {
        REQUIRE(fam.at(i).exponents == std::vector<int>{n});
        CHECK(fam.at(i).point == kThird + i);
      }
      CHECK(fiber(fam, kHalf).is_zero());
      for (int m = 1; m <= 3; ++m) {
        auto t = tensor_equivariant(fam, i0_module(kThird, m, 3));
        CHECK(t.at(0).exponents == std::vector<int>{std::min(n, m)});
      }
      CHECK(tensor_equivariant(fam, i0_module(kHalf, 1, 3)).is_zero());
    }
  }

  TEST_CASE("equivariant presentation of a skyscraper has the expected local lengths") {
    auto fam = i0_module(kHalf, 2, 2);
    auto em = to_equivariant(fam);
    std::vector<Rational> pts;
    for (int i = -2; i <= 2; ++i) pts.push_back(kHalf + i);
    pts.push_back(Rational(0));
    auto fs = fibers(em, pts, 4);
    for (int i = 0; i < 5; ++i) CHECK(fs[static_cast<std::size_t>(i)].length() == 2);
    CHECK(fs.back().is_zero());
    CHECK(monodromic_test(em));
    CHECK(shift_is_consistent(em) == em.shift.has_value());
    CHECK(determinant(em.presentation).degree() == 10);
    CHECK(!monodromic_test(free_module(1)));
  }

  TEST_CASE("window presentations of E and B") {
    auto e = window_presentation(parse_shift("1 - Ti*s"), 4);
    CHECK(e.generators() == 9);
    auto b = window_presentation(parse_shift("(s+1) - Ti*s"), 4);
    // As k[s]-modules both have rank one on the window: relations cut nine
    // generators down by eight.
    CHECK(diagonal_form(e.presentation).rank == 8);
    CHECK(diagonal_form(b.presentation).rank == 8);
  }

  TEST_CASE("chi normalization and orbits") {
    CHECK(normalize_chi(Rational(3)) == 0);
    CHECK(normalize_chi(kHalf) == kHalf);
    CHECK(same_orbit(kHalf, make_rational(-5, 2)));
    CHECK(!same_orbit(kHalf, kThird));
  }

  TEST_CASE("Mellin-side checks on the acceptance grid") {
    CHECK(check_mellin_b_embed(8).verdict == Verdict::pass);
    for (const Rational& chi : {Rational(0), kHalf, kThird}) {
      CAPTURE(chi.get_str());
      CHECK(check_propDmod1(chi, 8, 5).verdict == Verdict::pass);
      CHECK(check_propDmod2(chi, 8).verdict == Verdict::pass);
      for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        CHECK(check_propDmod3(chi, n, 8).verdict == Verdict::pass);
        CHECK(check_dmodmon(chi, n, 8).verdict == Verdict::pass);
        CHECK(check_eq3_decomp(chi, n, 6).verdict == Verdict::pass);
      }
      CHECK(check_fb_fl_agree(chi).verdict == Verdict::pass);
    }
  }

  TEST_CASE("exp-square: generator found, control refused") {
    auto r = exp_square_check(6);
    CHECK(r.ok);
    CHECK(r.generator.size() > 0);
    auto e = parse_shift("1 - Ti*s");
    CHECK(!exp_square_search(e, e, 6).ok);
    CHECK(check_exp_square(6).verdict == Verdict::pass);
  }

  TEST_CASE("monodromization through B and through E match the target") {
    auto r = monodromization_check(kHalf, 2, 6);
    CHECK(r.ok);
    CHECK(r.b_scalars.size() == 13);
    for (const auto& c : r.b_scalars) CHECK(c != 0);
    // free factors reproduce the target as well
    CHECK(monodromization_control(kHalf, 2, 6).ok);
  }

  TEST_CASE("mon-test and antipode checks") {
    CHECK(check_mon_test(0, 20).verdict == Verdict::pass);
    CHECK(check_mon_test(17, 20).verdict == Verdict::pass);
    CHECK(check_fourier_antipode(2, 0, 1000).verdict == Verdict::pass);
  }

  TEST_CASE("window errors") {
    CHECK(code_of([] { i0_module(kHalf, 0, 3); }) == ErrorCode::invalid_argument);
    CHECK(code_of([] { i0_module(kHalf, 1, -1); }) == ErrorCode::invalid_argument);
  }
}
