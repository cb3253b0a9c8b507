#pragma once

#include <mfour/cyclotomic.hpp>
#include <mfour/finite_field.hpp>
#include <mfour/report.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace mfour {

/// Function F_q^d -> Q(zeta). Points are indexed lexicographically with
/// the first coordinate most significant.
class TraceFunction {
 public:
  TraceFunction(FieldPtr field, int rank);
  TraceFunction(FieldPtr field, int rank, std::vector<CycScalar> values);

  static TraceFunction delta(FieldPtr field, int rank, std::size_t index);
  static TraceFunction constant(FieldPtr field, int rank, const CycScalar& c);

  const FieldPtr& field() const { return field_; }
  int q() const { return field_->q(); }
  int rank() const { return rank_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<CycScalar>& values() const { return values_; }
  const CycScalar& operator[](std::size_t i) const { return values_[i]; }
  CycScalar& operator[](std::size_t i) { return values_[i]; }

  std::vector<int> point(std::size_t index) const;
  std::size_t index(const std::vector<int>& coords) const;
  /// Index of lambda * v.
  std::size_t scale(std::size_t index, int lambda) const;
  bool is_zero() const;

  TraceFunction scaled(const CycScalar& c) const;
  friend TraceFunction operator+(const TraceFunction& a, const TraceFunction& b);
  friend TraceFunction operator-(const TraceFunction& a, const TraceFunction& b);
  friend bool operator==(const TraceFunction& a, const TraceFunction& b);

 private:
  FieldPtr field_;
  int rank_;
  std::vector<CycScalar> values_;
};

/// Tate twist (a) and shift [b]. On traces, (1) multiplies by q^-1 and [1]
/// by -1, so M(a)[b] has trace (-1)^b q^-a t_M.
struct TwistShift {
  int twist = 0;
  int shift = 0;

  Rational scalar(int q) const;
  friend TwistShift operator+(TwistShift a, TwistShift b) { return {a.twist + b.twist, a.shift + b.shift}; }
};

TraceFunction apply(const TwistShift& ts, const TraceFunction& f);

/// Bilinear form <v, xi> = v^T M xi over F_q.
class Pairing {
 public:
  static Pairing identity(int rank);
  Pairing(int rank, std::vector<int> matrix);

  int rank() const { return rank_; }
  Pairing transposed() const;
  int eval(const FiniteField& field, const std::vector<int>& v, const std::vector<int>& xi) const;
  bool nondegenerate(const FiniteField& field) const;

 private:
  int rank_;
  std::vector<int> m_;
};

/// psi_a(x) = zeta_p^{Tr(a x)}; chi_k(g^m) = zeta_{q-1}^{k m} for the
/// primitive element g. All values live in Q(zeta_N), N = lcm(p, q - 1).
class CharacterTable {
 public:
  explicit CharacterTable(FieldPtr field, int psi_index = 1);

  const FieldPtr& field() const { return field_; }
  int conductor() const { return ring_->conductor(); }
  CycScalar psi(int x) const;
  /// chi_k(0) = 0.
  CycScalar chi(int k, int x) const;
  int chi_order(int k) const;
  /// Indices k with chi_k^n = 1.
  std::vector<int> characters_of_order_dividing(int n) const;
  CycScalar gauss_sum(int k) const;

 private:
  FieldPtr field_;
  int psi_index_;
  CycRingPtr ring_;
  std::vector<CycScalar> zeta_;  // zeta_N^j
};

// --- Basic objects and operators ------------------------------------------------

/// 1 off x = 1, and 1 - q at x = 1.
TraceFunction t_B(const FieldPtr& field);
/// x -> #{y : y^n = x} on F_q^x, 0 at x = 0.
TraceFunction t_I0(const FieldPtr& field, int n);

TraceFunction four_B(const TraceFunction& f, const Pairing& pairing);
TraceFunction four_B(const TraceFunction& f);
TraceFunction four_psi(const TraceFunction& f, const CharacterTable& chars, const Pairing& pairing);
TraceFunction four_psi(const TraceFunction& f, const CharacterTable& chars);
/// (g * f)(v) = sum_{lambda != 0} g(lambda) f(lambda^-1 v); g(0) is ignored.
TraceFunction conv_Gm(const TraceFunction& g, const TraceFunction& f);

/// Exact determinant over Q(zeta) by Gaussian elimination.
CycScalar determinant(std::vector<std::vector<CycScalar>> m);
std::size_t rank(std::vector<std::vector<CycScalar>> m);

// --- Checks ----------------------------------------------------------------------

/// Functions f used to test a linear identity: the delta basis when
/// q^d <= 625, otherwise `trials` seeded random integer functions.
std::vector<TraceFunction> test_functions(const FieldPtr& field, int rank, int trials, std::uint64_t seed, bool& exhaustive);

CheckOutcome check_keythm(int q, int d, int trials = 8, std::uint64_t seed = 0);
CheckOutcome check_CV(int q, int d);
CheckOutcome check_P2B(int q, int psi_index = 1);
CheckOutcome check_BL2(int q, int d, int trials = 8, std::uint64_t seed = 0);
CheckOutcome check_fbneq(int q);
CheckOutcome gauss_suite(int q, int n);
CheckOutcome gauss_g_diagnostic(int q, int n);
CheckOutcome propB3_diagnostic(int q, int n);
CheckOutcome check_lem_mon_shadow(int q, int n, int chi_index);
CheckOutcome check_mon_equivalence(int q, int d, int n);

/// Named rank-1 object on F_q: "B", "I0:<n>" or "psi".
TraceFunction trace_object(int q, const std::string& name);
/// point -> value
Json trace_table(const TraceFunction& f);

/// Trace of I^1_n at x: the trace of multiplication by g_x u on R[Z/n],
/// g_x = t^dlog(x), u = sum_{a < q} t^a.
TraceFunction t_I1_candidate(const FieldPtr& field, int n);

}  // namespace mfour
