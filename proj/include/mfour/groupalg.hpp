#pragma once

#include <mfour/report.hpp>
#include <mfour/residue.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace mfour {

/// Element of (Z/ell^r)[Z/n], coefficient i on t^i.
class GroupAlgebraElem {
 public:
  GroupAlgebraElem(int ell, int r, int n);
  GroupAlgebraElem(int ell, int r, int n, std::vector<std::int64_t> coeffs);

  static GroupAlgebraElem one(int ell, int r, int n);
  static GroupAlgebraElem t(int ell, int r, int n, long power = 1);
  /// 1 + t + ... + t^{n-1}
  static GroupAlgebraElem norm_element(int ell, int r, int n);

  int ell() const { return ell_; }
  int r() const { return r_; }
  int n() const { return static_cast<int>(c_.size()); }
  std::int64_t modulus() const { return mod_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  std::int64_t coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
  bool is_zero() const;
  /// Sum of coefficients (the map to R = A^0_1).
  std::int64_t augmentation() const;

  friend GroupAlgebraElem operator+(const GroupAlgebraElem& a, const GroupAlgebraElem& b);
  friend GroupAlgebraElem operator-(const GroupAlgebraElem& a, const GroupAlgebraElem& b);
  friend GroupAlgebraElem operator*(const GroupAlgebraElem& a, const GroupAlgebraElem& b);
  GroupAlgebraElem scaled(std::int64_t c) const;
  GroupAlgebraElem pow(unsigned k) const;
  friend bool operator==(const GroupAlgebraElem& a, const GroupAlgebraElem& b);

  std::string to_string() const;

 private:
  int ell_, r_;
  std::int64_t mod_;
  std::vector<std::int64_t> c_;
};

/// Ring map R[Z/n] -> R[Z/n_target], t -> t, for n_target | n.
GroupAlgebraElem transition(const GroupAlgebraElem& a, int n_target);

/// Units are detected on the reduction mod ell (R is local).
bool is_unit(const GroupAlgebraElem& a);

/// Integer coefficients of sum_{a < q} t^a in Z[Z/n]; this is the scalar
/// by which Frobenius acts on the generator t - 1 of A^1_n.
std::vector<long> frobenius_unit(int q, int n);

/// Free rank-1 module A^i_n with formal generator g_i.
struct TwistedRankOneModule {
  int level = 1;
  int twist = 0;

  std::string generator() const { return "g_" + std::to_string(twist); }
};

struct TwistedTensor {
  TwistedRankOneModule module;
  /// Cohomological bookkeeping of the convolution I^i * I^j.
  int tate_twist = -1;
  int shift = -2;
};

/// (A^i at level m) (x) (A^j at level n) for n | m: twist i + j at level n.
TwistedTensor twisted_tensor(const TwistedRankOneModule& a, const TwistedRankOneModule& b);

CheckOutcome augmentation_kernel_check(int ell, int r, int n);
/// Annihilator of t - 1 in R[Z/(n ell^k)] pushed to R[Z/n], k = 0..k_max.
/// Passes when it vanishes at k = r but not at k = r - 1.
CheckOutcome pro_nzd_check(int ell, int r, int n, int k_max = -1);
CheckOutcome unit_surjectivity_check(int ell, int r, int n, int n_prime);
CheckOutcome twisted_tensor_check(int ell, int r, int m, int n);

}  // namespace mfour
