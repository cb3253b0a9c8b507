#pragma once

#include <mfour/ore.hpp>
#include <mfour/poly.hpp>

#include <random>

namespace testing_support {

using mfour::Poly;
using mfour::Rational;

inline long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational small_rational(std::mt19937_64& rng) { return mfour::make_rational(draw(rng, -4, 4), draw(rng, 1, 3)); }

inline Poly random_poly(std::mt19937_64& rng, int max_degree) {
  std::vector<Rational> c;
  int deg = static_cast<int>(draw(rng, 0, max_degree));
  for (int i = 0; i <= deg; ++i) c.push_back(small_rational(rng));
  return Poly(c);
}

inline mfour::ShiftOp random_shift(std::mt19937_64& rng) {
  mfour::ShiftOp out;
  int terms = static_cast<int>(draw(rng, 1, 3));
  for (int k = 0; k < terms; ++k) out += mfour::ShiftOp(static_cast<int>(draw(rng, -2, 2)), random_poly(rng, 2));
  return out;
}

inline mfour::WeylOp random_weyl(std::mt19937_64& rng, int rank) {
  mfour::WeylOp out(rank);
  int terms = static_cast<int>(draw(rng, 1, 3));
  for (int k = 0; k < terms; ++k) {
    std::vector<int> a(static_cast<std::size_t>(rank)), b(static_cast<std::size_t>(rank));
    for (auto& e : a) e = static_cast<int>(draw(rng, 0, 2));
    for (auto& e : b) e = static_cast<int>(draw(rng, 0, 2));
    out = out + mfour::WeylOp::monomial(rank, a, b, small_rational(rng));
  }
  return out;
}

inline mfour::LaurentWeylOp random_laurent(std::mt19937_64& rng) {
  mfour::LaurentWeylOp out;
  int terms = static_cast<int>(draw(rng, 1, 3));
  for (int k = 0; k < terms; ++k) {
    auto m = mfour::LaurentWeylOp::x(static_cast<int>(draw(rng, -2, 2))) * mfour::LaurentWeylOp::d().pow(static_cast<unsigned>(draw(rng, 0, 2)));
    out = out + m.scaled(small_rational(rng));
  }
  return out;
}

}  // namespace testing_support
