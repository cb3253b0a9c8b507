#pragma once

#include <cstdint>
#include <string>

namespace mfour {

/// Element of Z/ell^r.
class Residue {
 public:
  Residue() = default;
  Residue(std::int64_t value, std::int64_t modulus) : m_(modulus), v_(((value % modulus) + modulus) % modulus) {}

  std::int64_t value() const { return v_; }
  std::int64_t modulus() const { return m_; }
  bool is_zero() const { return v_ == 0; }

  friend Residue operator+(Residue a, Residue b) { return {a.v_ + b.v_, a.m_}; }
  friend Residue operator-(Residue a, Residue b) { return {a.v_ - b.v_, a.m_}; }
  friend Residue operator*(Residue a, Residue b) { return {a.v_ * b.v_, a.m_}; }
  friend bool operator==(Residue a, Residue b) { return a.v_ == b.v_ && a.m_ == b.m_; }

 private:
  std::int64_t m_ = 1;
  std::int64_t v_ = 0;
};

/// ell^r, validating ell prime and r >= 1.
std::int64_t prime_power_modulus(int ell, int r);

}  // namespace mfour
