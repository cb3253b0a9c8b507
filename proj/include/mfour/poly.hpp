#pragma once

#include <mfour/rational.hpp>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace mfour {

/// Dense univariate polynomial over Q in the variable s. Coefficient i is
/// the coefficient of s^i; the leading coefficient is never zero.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<Rational> coeffs);

  static Poly s() { return Poly({Rational(0), Rational(1)}); }
  /// (s - a)^k
  static Poly linear_power(const Rational& a, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  Rational lead() const;

  Poly monic() const;
  Rational eval(const Rational& x) const;
  Poly derivative() const;
  /// p(s + c)
  Poly shift(const Rational& c) const;
  /// p(-s)
  Poly negate_variable() const;
  Poly pow(unsigned k) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "s") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};

PolyDivision divmod(const Poly& a, const Poly& b);
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).quotient; }
inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }
bool divides(const Poly& d, const Poly& a);

/// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

struct Bezout {
  Poly gcd;  // monic
  Poly u;
  Poly v;    // u*a + v*b = gcd
};
Bezout poly_xgcd(const Poly& a, const Poly& b);

/// Multiplicity of the root a in p (p nonzero).
int root_multiplicity(const Poly& p, const Rational& a);

/// Rational roots with multiplicities, sorted ascending, and the cofactor
/// without rational roots.
struct RationalRoots {
  std::vector<std::pair<Rational, int>> roots;
  Poly cofactor;
};
RationalRoots rational_roots(const Poly& p);

/// Power-series quotient a/b around s = x0 truncated to `terms` terms.
/// Requires b(x0) != 0. Coefficients are in powers of (s - x0).
std::vector<Rational> series_quotient(const Poly& a, const Poly& b, const Rational& x0, int terms);

/// Rational function num/den with den monic and gcd(num, den) = 1.
class RatFun {
 public:
  RatFun() : num_(), den_(Poly(1)) {}
  RatFun(const Poly& p) : num_(p), den_(Poly(1)) {}  // NOLINT(google-explicit-constructor)
  RatFun(const Poly& num, const Poly& den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  /// f(s + c)
  RatFun shift(const Rational& c) const;
  /// Order of vanishing at a (negative for poles); the zero function is
  /// reported as a large positive sentinel.
  int valuation(const Rational& a) const;
  Rational eval(const Rational& x) const;

  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  RatFun operator-() const { return RatFun(-num_, den_); }
  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string(const std::string& var = "s") const;

 private:
  Poly num_;
  Poly den_;
};

inline constexpr int kZeroValuation = 1 << 28;

struct PrincipalPart {
  Rational pole;
  int order = 0;
  /// coeffs[k-1] multiplies 1/(s - pole)^k, k = 1..order.
  std::vector<Rational> coeffs;
};

struct PartialFractions {
  Poly polynomial_part;
  std::vector<PrincipalPart> parts;  // ascending by pole

  RatFun recombine() const;
};

/// Throws ErrorCode::unsupported_input when the denominator has an
/// irreducible factor of degree > 1 over Q.
PartialFractions partial_fractions(const RatFun& f);

/// p(s + c)
inline Poly shift_poly(const Poly& p, const Rational& c) { return p.shift(c); }

}  // namespace mfour
