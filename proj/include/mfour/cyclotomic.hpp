#pragma once

#include <mfour/poly.hpp>

#include <memory>
#include <string>
#include <vector>

namespace mfour {

/// Q[x]/Phi_N(x) with precomputed reduction data.
class CyclotomicRing {
 public:
  static std::shared_ptr<const CyclotomicRing> make(int conductor);

  int conductor() const { return n_; }
  int degree() const { return phi_; }
  const Poly& modulus() const { return modulus_; }
  /// x^k reduced, k in [0, N).
  const std::vector<Rational>& power(int k) const { return powers_[static_cast<std::size_t>(k)]; }

 private:
  CyclotomicRing() = default;
  int n_ = 1;
  int phi_ = 1;
  Poly modulus_;
  std::vector<std::vector<Rational>> powers_;
};

using CycRingPtr = std::shared_ptr<const CyclotomicRing>;

/// The N-th cyclotomic polynomial.
Poly cyclotomic_polynomial(int n);
int euler_phi(int n);

/// Exact element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^{phi(N)-1}.
class CycScalar {
 public:
  CycScalar();
  CycScalar(const Rational& r);  // NOLINT(google-explicit-constructor)
  CycScalar(long r) : CycScalar(Rational(r)) {}  // NOLINT(google-explicit-constructor)
  CycScalar(CycRingPtr ring, std::vector<Rational> coeffs);

  /// zeta_N^k
  static CycScalar root_of_unity(const CycRingPtr& ring, long k);
  static CycScalar root_of_unity(int conductor, long k) { return root_of_unity(CyclotomicRing::make(conductor), k); }

  int conductor() const { return ring_->conductor(); }
  const CycRingPtr& ring() const { return ring_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }

  /// Image in Q(zeta_M) for a multiple M of the conductor (zeta_N -> zeta_M^{M/N}).
  CycScalar inflate(int multiple) const;
  /// Galois conjugate zeta -> zeta^k, gcd(k, N) = 1.
  CycScalar galois(long k) const;
  /// Norm down to Q.
  Rational norm() const;
  CycScalar inverse() const;
  /// Smallest conductor representing this value.
  CycScalar compress() const;

  friend CycScalar operator+(const CycScalar& a, const CycScalar& b);
  friend CycScalar operator-(const CycScalar& a, const CycScalar& b);
  friend CycScalar operator*(const CycScalar& a, const CycScalar& b);
  friend CycScalar operator/(const CycScalar& a, const CycScalar& b) { return a * b.inverse(); }
  CycScalar operator-() const;
  CycScalar& operator+=(const CycScalar& b) { return *this = *this + b; }
  CycScalar& operator-=(const CycScalar& b) { return *this = *this - b; }
  CycScalar& operator*=(const CycScalar& b) { return *this = *this * b; }
  friend bool operator==(const CycScalar& a, const CycScalar& b);

  /// e.g. "3 - 2*z12^2" (z<N> denotes zeta_N).
  std::string to_string() const;

 private:
  void trim();
  CycRingPtr ring_;
  std::vector<Rational> c_;
};

/// Brings two scalars to a common conductor.
std::pair<CycScalar, CycScalar> align(const CycScalar& a, const CycScalar& b);

}  // namespace mfour
