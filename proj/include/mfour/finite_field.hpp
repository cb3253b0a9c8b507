#pragma once

#include <memory>
#include <string>
#include <vector>

namespace mfour {

/// Small finite field F_q, q = p^e, with table arithmetic.
///
/// Element i encodes the residue polynomial sum_k c_k x^k with
/// i = sum_k c_k p^k; the modulus is the lexicographically smallest monic
/// irreducible of degree e. Enumeration order 0..q-1 is the fixed report
/// order for tables.
class FiniteField {
 public:
  static std::shared_ptr<const FiniteField> make(int p, int e = 1);

  int p() const { return p_; }
  int e() const { return e_; }
  int q() const { return q_; }
  /// Low-to-high coefficients of the monic modulus (size e + 1).
  const std::vector<int>& modulus() const { return modulus_; }

  int zero() const { return 0; }
  int one() const { return 1; }
  int add(int a, int b) const { return add_[static_cast<std::size_t>(a * q_ + b)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a * q_ + b)]; }
  int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
  /// a != 0
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  int pow(int a, long k) const;
  /// Absolute trace F_q -> F_p, returned as an integer in [0, p).
  int trace(int a) const { return trace_[static_cast<std::size_t>(a)]; }

  /// Smallest-index generator of the multiplicative group.
  int primitive() const { return primitive_; }
  /// dlog(primitive^k) = k for a != 0.
  int dlog(int a) const { return dlog_[static_cast<std::size_t>(a)]; }

  std::string element_name(int a) const;

 private:
  FiniteField() = default;
  int p_ = 0, e_ = 0, q_ = 0;
  std::vector<int> modulus_;
  std::vector<int> add_, mul_, neg_, inv_, trace_, dlog_;
  int primitive_ = 0;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

struct FqElement {
  FieldPtr field;
  int value = 0;

  friend FqElement operator+(const FqElement& a, const FqElement& b) { return {a.field, a.field->add(a.value, b.value)}; }
  friend FqElement operator*(const FqElement& a, const FqElement& b) { return {a.field, a.field->mul(a.value, b.value)}; }
  friend bool operator==(const FqElement& a, const FqElement& b) { return a.value == b.value; }
};

bool is_prime(long n);

/// q = p^e with p prime, or throws.
std::pair<int, int> prime_power(int q);

}  // namespace mfour
