#pragma once

#include <mfour/poly.hpp>

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mfour {

/// Element of k[s]<T, T^-1>/(sT - T(s+1)) in normal form sum_j T^j p_j(s):
/// powers of T on the left, polynomials in s on the right.
class ShiftOp {
 public:
  ShiftOp() = default;
  ShiftOp(const Poly& p);  // NOLINT(google-explicit-constructor)
  ShiftOp(long c) : ShiftOp(Poly(c)) {}  // NOLINT(google-explicit-constructor)
  ShiftOp(int j, const Poly& p);

  static ShiftOp s() { return ShiftOp(Poly::s()); }
  static ShiftOp T(int power = 1) { return ShiftOp(power, Poly(1)); }

  const std::map<int, Poly>& terms() const { return terms_; }
  Poly coeff(int j) const;
  bool is_zero() const { return terms_.empty(); }
  int min_degree() const { return terms_.begin()->first; }
  int max_degree() const { return terms_.rbegin()->first; }

  friend ShiftOp operator+(const ShiftOp& a, const ShiftOp& b);
  friend ShiftOp operator-(const ShiftOp& a, const ShiftOp& b);
  friend ShiftOp operator*(const ShiftOp& a, const ShiftOp& b);
  ShiftOp operator-() const;
  ShiftOp& operator+=(const ShiftOp& b) { return *this = *this + b; }
  ShiftOp pow(unsigned k) const;
  friend bool operator==(const ShiftOp& a, const ShiftOp& b) { return a.terms_ == b.terms_; }

  /// Ascending T-power, then ascending s-degree. Ti denotes T^-1.
  std::string to_string() const;

 private:
  void add_term(int j, const Poly& p);
  std::map<int, Poly> terms_;
};

/// Normal-ordered monomial x^alpha d^beta of a rank-d Weyl algebra; stored
/// as alpha followed by beta.
using WeylMonomial = std::vector<int>;

/// Element of the rank-d Weyl algebra sum c x^alpha d^beta (x left of d).
class WeylOp {
 public:
  explicit WeylOp(int rank = 1) : rank_(rank) {}
  static WeylOp constant(int rank, const Rational& c);
  static WeylOp x(int rank, int i = 0);
  static WeylOp d(int rank, int i = 0);
  static WeylOp monomial(int rank, const std::vector<int>& alpha, const std::vector<int>& beta, const Rational& c);

  int rank() const { return rank_; }
  const std::map<WeylMonomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend WeylOp operator+(const WeylOp& a, const WeylOp& b);
  friend WeylOp operator-(const WeylOp& a, const WeylOp& b);
  friend WeylOp operator*(const WeylOp& a, const WeylOp& b);
  WeylOp operator-() const;
  WeylOp scaled(const Rational& c) const;
  WeylOp pow(unsigned k) const;
  friend bool operator==(const WeylOp& a, const WeylOp& b) { return a.rank_ == b.rank_ && a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(const WeylMonomial& m, const Rational& c);
  int rank_;
  std::map<WeylMonomial, Rational> terms_;
};

/// Rank-1 differential operators on G_m: sum c x^a d^b with a in Z.
class LaurentWeylOp {
 public:
  LaurentWeylOp() = default;
  static LaurentWeylOp constant(const Rational& c);
  static LaurentWeylOp x(int power = 1);
  static LaurentWeylOp d();
  static LaurentWeylOp from_weyl(const WeylOp& w);

  const std::map<std::pair<int, int>, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend LaurentWeylOp operator+(const LaurentWeylOp& a, const LaurentWeylOp& b);
  friend LaurentWeylOp operator-(const LaurentWeylOp& a, const LaurentWeylOp& b);
  friend LaurentWeylOp operator*(const LaurentWeylOp& a, const LaurentWeylOp& b);
  LaurentWeylOp operator-() const;
  LaurentWeylOp scaled(const Rational& c) const;
  LaurentWeylOp pow(unsigned k) const;
  friend bool operator==(const LaurentWeylOp& a, const LaurentWeylOp& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(int a, int b, const Rational& c);
  std::map<std::pair<int, int>, Rational> terms_;
};

enum class Algebra { shift, weyl, laurent_weyl };

std::string algebra_name(Algebra a);
Algebra parse_algebra(const std::string& name);

using Operator = std::variant<ShiftOp, WeylOp, LaurentWeylOp>;

std::string to_string(const Operator& op);

/// Cyclic right module D/(g_1, ..., g_k)D.
struct CyclicPresentation {
  Algebra algebra = Algebra::shift;
  int rank = 1;
  std::vector<Operator> relations;

  static CyclicPresentation shift(const ShiftOp& g) { return {Algebra::shift, 1, {g}}; }
  static CyclicPresentation weyl(const WeylOp& g) { return {Algebra::weyl, g.rank(), {g}}; }
  static CyclicPresentation laurent(const LaurentWeylOp& g) { return {Algebra::laurent_weyl, 1, {g}}; }

  std::string to_string() const;
};

// --- Maps -----------------------------------------------------------------

/// x -> T, x d -> s (so d -> T^-1 s).
ShiftOp mellin_op(const LaurentWeylOp& w);
/// Two-sided inverse of mellin_op.
LaurentWeylOp inverse_mellin_op(const ShiftOp& sh);

/// x_i -> -d_i, d_i -> x_i.
WeylOp fourier_auto(const WeylOp& w);
/// x_i -> -x_i, d_i -> -d_i.
WeylOp antipode(const WeylOp& w);

/// Order in which the two factors of lambda -> -1/lambda are composed. The
/// factors commute on generators, so both orders define the same map; both
/// are kept so that callers can check this.
enum class TwistOrder { invert_then_negate, negate_then_invert };

/// s -> -s, T -> T^-1.
ShiftOp invert_coordinate(const ShiftOp& sh);
/// T -> -T.
ShiftOp negate_coordinate(const ShiftOp& sh);
/// Automorphism induced by lambda -> -1/lambda: s -> -s, T -> -T^-1.
ShiftOp inversion_twist(const ShiftOp& sh, TwistOrder order = TwistOrder::invert_then_negate);

/// Canonical representative of the class of generator * elem in D/gD.
/// Supported relations: shift relations whose T-support spans at most two
/// adjacent powers, and Weyl relations affine in a single generator
/// (a + b x_i or a + b d_i). Anything else is rejected as non-confluent.
Operator right_reduce(const Operator& elem, const CyclicPresentation& presentation);

}  // namespace mfour
