#include <mfour/error.hpp>
#include <mfour/trace.hpp>

#include <doctest.h>

#include <numeric>
#include <random>

using namespace mfour;

namespace {

FieldPtr field(int q) {
  auto [p, e] = prime_power(q);
  return FiniteField::make(p, e);
}

// Fourier kernel written straight from the definition, as a reference:
// four_psi(f)(xi) = (-1)^d sum_v psi(<v, xi>) f(v) over all of F_q^d, the
// sign coming from the shift [d].
TraceFunction naive_four_psi(const TraceFunction& f, const CharacterTable& chars) {
  const auto& F = *f.field();
  TraceFunction out(f.field(), f.rank());
  for (std::size_t xi = 0; xi < f.size(); ++xi) {
    CycScalar acc;
    auto pxi = f.point(xi);
    for (std::size_t v = 0; v < f.size(); ++v) {
      auto pv = f.point(v);
      int dot = 0;
      for (std::size_t i = 0; i < pv.size(); ++i) dot = F.add(dot, F.mul(pv[i], pxi[i]));
      acc += chars.psi(dot) * f[v];
    }
    out[xi] = f.rank() % 2 ? -acc : acc;
  }
  return out;
}

}  // namespace

TEST_SUITE("trace") {
  TEST_CASE("t_B values") {
    for (int q : {2, 3, 4, 5, 7}) {
      auto tb = t_B(field(q));
      for (std::size_t x = 0; x < tb.size(); ++x) CHECK(tb[x] == CycScalar(x == 1 ? 1 - q : 1));
    }
  }

  TEST_CASE("t_I0 matches the point count of y^n = x") {
    for (int q : {3, 4, 5, 7, 8, 9, 11, 13}) {
      auto F = field(q);
      for (int n = 1; n <= 6; ++n) {
        auto t = t_I0(F, n);
        for (int x = 0; x < q; ++x) {
          int count = 0;
          if (x != 0)
            for (int y = 1; y < q; ++y) count += F->pow(y, n) == x;
          CHECK(t[static_cast<std::size_t>(x)] == CycScalar(count));
        }
      }
    }
  }

  TEST_CASE("four_psi agrees with the defining sum") {
    for (int q : {3, 4, 5}) {
      for (int d : {1, 2}) {
        auto F = field(q);
        CharacterTable chars(F);
        for (std::size_t i = 0; i < static_cast<std::size_t>(q); ++i) {
          auto f = TraceFunction::delta(F, d, (i * 7) % static_cast<std::size_t>(std::pow(q, d)));
          CHECK(four_psi(f, chars) == naive_four_psi(f, chars));
        }
      }
    }
  }

  TEST_CASE("psi Fourier inversion: four_psi twice is q^d times the antipode") {
    for (int q : {3, 5, 7}) {
      auto F = field(q);
      CharacterTable chars(F);
      for (std::size_t i = 0; i < static_cast<std::size_t>(q); ++i) {
        auto f = TraceFunction::delta(F, 1, i);
        auto ff = four_psi(four_psi(f, chars), chars);
        auto expected = TraceFunction::delta(F, 1, static_cast<std::size_t>(F->neg(static_cast<int>(i)))).scaled(CycScalar(q));
        CHECK(ff == expected);
      }
    }
  }

  TEST_CASE("characters are multiplicative and Gauss sums have absolute value sqrt(q)") {
    for (int q : {5, 7, 8, 9}) {
      auto F = field(q);
      CharacterTable chars(F);
      for (int k = 1; k < q - 1; ++k) {
        for (int x = 1; x < q; ++x)
          for (int y = 1; y < q; y += 2) CHECK(chars.chi(k, F->mul(x, y)) == chars.chi(k, x) * chars.chi(k, y));
        auto g = chars.gauss_sum(k);
        // complex conjugation is the Galois element -1
        CHECK(g * g.galois(-1 + chars.conductor()) == CycScalar(q));
      }
      CHECK(chars.gauss_sum(0) == CycScalar(-1));
    }
  }

  TEST_CASE("characters of order dividing n") {
    CharacterTable chars(field(7));
    auto ks = chars.characters_of_order_dividing(3);
    CHECK(ks == std::vector<int>{0, 2, 4});
    for (int k : ks) CHECK(3 % chars.chi_order(k) == 0);
  }

  TEST_CASE("conv_Gm with the delta at 1 is the identity") {
    auto F = field(5);
    auto e = TraceFunction::delta(F, 1, 1);
    auto f = TraceFunction(F, 2);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = CycScalar(static_cast<long>(i * i) - 3);
    CHECK(conv_Gm(e, f) == f);
  }

  TEST_CASE("conv_Gm against the definition") {
    auto F = field(7);
    TraceFunction g(F, 1), f(F, 1);
    for (int i = 0; i < 7; ++i) {
      g[static_cast<std::size_t>(i)] = CycScalar(i + 1);
      f[static_cast<std::size_t>(i)] = CycScalar(2 * i - 5);
    }
    auto c = conv_Gm(g, f);
    for (int v = 0; v < 7; ++v) {
      long acc = 0;
      for (int l = 1; l < 7; ++l) acc += (l + 1) * (2 * F->mul(F->inv(l), v) - 5);
      CHECK(c[static_cast<std::size_t>(v)] == CycScalar(acc));
    }
  }

  TEST_CASE("Tate twist and shift scalars") {
    CHECK(TwistShift{1, 0}.scalar(5) == make_rational(1, 5));
    CHECK(TwistShift{0, 1}.scalar(5) == -1);
    CHECK(TwistShift{-1, 1}.scalar(3) == -3);
  }

  TEST_CASE("determinants over cyclotomic fields") {
    auto z = CycScalar::root_of_unity(3, 1);
    std::vector<std::vector<CycScalar>> m{{1, z}, {z, 1}};
    CHECK(determinant(m) == CycScalar(1) - z * z);
    CHECK(rank(std::vector<std::vector<CycScalar>>{{1, z}, {z, z * z}}) == 1);
  }

  TEST_CASE("pairings") {
    auto F = field(5);
    CHECK(Pairing::identity(2).nondegenerate(*F));
    CHECK(!Pairing(2, {1, 2, 2, 4}).nondegenerate(*F));
    Pairing p(2, {1, 2, 0, 1});
    CHECK(p.eval(*F, {1, 0}, {0, 1}) == 2);
    CHECK(p.transposed().eval(*F, {0, 1}, {1, 0}) == 2);
  }

  TEST_CASE("named trace objects") {
    CHECK(trace_object(5, "B") == t_B(field(5)));
    CHECK(trace_object(7, "I0:3") == t_I0(field(7), 3));
    auto psi = trace_object(5, "psi");
    CHECK(psi[0] == CycScalar(1));
    CHECK_THROWS_AS(trace_object(5, "Q"), Error);
    CHECK_THROWS_AS(trace_object(6, "B"), Error);
    auto table = trace_table(t_B(field(3)));
    CHECK(table["1"] == "-2");
  }

  TEST_CASE("four_B twice is -q^d times convolution with t_B, on delta bases") {
    for (int q : {2, 3, 4, 5}) {
      for (int d : {1, 2}) {
        auto F = field(q);
        auto tb = t_B(F);
        const CycScalar factor(-static_cast<long>(std::pow(q, d)));
        for (std::size_t i = 0; i < static_cast<std::size_t>(std::pow(q, d)); ++i) {
          auto f = TraceFunction::delta(F, d, i);
          CHECK(four_B(four_B(f)) == conv_Gm(tb, f).scaled(factor));
        }
      }
    }
  }

  TEST_CASE("kernel sum closed form: q, 0, q^2 - q, -q") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11}) {
      auto F = field(q);
      auto tb = t_B(F);
      for (int v = 0; v < q; ++v)
        for (int w = 0; w < q; ++w) {
          CycScalar acc;
          for (int xi = 0; xi < q; ++xi)
            acc += tb[static_cast<std::size_t>(F->mul(v, xi))] * tb[static_cast<std::size_t>(F->mul(xi, w))];
          long expected = (v == 0 && w == 0) ? q : (v == 0 || w == 0) ? 0 : (v == w ? q * q - q : -q);
          CHECK(acc == CycScalar(expected));
        }
    }
  }

  TEST_CASE("four_B and conv_Gm are linear") {
    auto F = field(5);
    std::mt19937_64 rng(21);
    auto random_fn = [&](int d) {
      TraceFunction f(F, d);
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = CycScalar(static_cast<long>(rng() % 11) - 5);
      return f;
    };
    for (int k = 0; k < 20; ++k) {
      auto f = random_fn(2), g = random_fn(2), h = random_fn(1);
      CycScalar a(static_cast<long>(rng() % 7) - 3), b = CycScalar::root_of_unity(5, 2);
      auto comb = f.scaled(a) + g.scaled(b);
      CHECK(four_B(comb) == four_B(f).scaled(a) + four_B(g).scaled(b));
      CHECK(conv_Gm(h, comb) == conv_Gm(h, f).scaled(a) + conv_Gm(h, g).scaled(b));
    }
  }

  TEST_CASE("four_B on the full rank-1 space over F_3 is invertible") {
    // matrix rows xi: (3 [v xi = 1] - 1)_v = [[-1,-1,-1],[-1,2,-1],[-1,-1,2]], det -9
    auto F = field(3);
    std::vector<std::vector<CycScalar>> m(3, std::vector<CycScalar>(3));
    for (std::size_t v = 0; v < 3; ++v) {
      auto img = four_B(TraceFunction::delta(F, 1, v));
      for (std::size_t xi = 0; xi < 3; ++xi) m[xi][v] = img[xi];
    }
    CHECK(m[1][1] == CycScalar(2));
    CHECK(m[0][2] == CycScalar(-1));
    CHECK(determinant(m) == CycScalar(-9));
  }

  TEST_CASE("trace-side checks on the acceptance grids") {
    for (int q : {2, 3, 5, 7}) CHECK(check_keythm(q, 1).verdict == Verdict::pass);
    for (int q : {2, 3}) CHECK(check_keythm(q, 2).verdict == Verdict::pass);
    for (int q : {3, 5})
      for (int d : {1, 2}) CHECK(check_CV(q, d).verdict == Verdict::pass);
    for (int q : {3, 5, 7}) {
      CHECK(check_P2B(q).verdict == Verdict::pass);
      CHECK(check_BL2(q, 1).verdict == Verdict::pass);
    }
    for (int q : {2, 3, 5, 7}) CHECK(check_fbneq(q).verdict == Verdict::pass);
    for (auto [q, n] : {std::pair{5, 4}, {7, 2}, {7, 3}, {7, 6}}) CHECK(gauss_suite(q, n).verdict == Verdict::pass);
  }

  TEST_CASE("lem-mon shadow: factor q - 1 on the eigenspace") {
    for (auto [q, n] : {std::pair{7, 3}, {5, 4}}) {
      CharacterTable chars(field(q));
      for (int k : chars.characters_of_order_dividing(n)) CHECK(check_lem_mon_shadow(q, n, k).verdict == Verdict::pass);
    }
  }

  TEST_CASE("diagnostics report without asserting") {
    for (int q : {3, 5})
      for (int n : {1, 2}) {
        CHECK(propB3_diagnostic(q, n).verdict == Verdict::diagnostic);
        CHECK(gauss_g_diagnostic(q, n).verdict == Verdict::diagnostic);
      }
  }
}
