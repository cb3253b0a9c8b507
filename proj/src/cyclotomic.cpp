#include <mfour/cyclotomic.hpp>
#include <mfour/error.hpp>
#include <mfour/matrix.hpp>

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace mfour {

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

Poly cyclotomic_polynomial(int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "cyclotomic conductor must be positive");
  // x^n - 1 = prod_{d | n} Phi_d
  std::vector<Rational> c(static_cast<std::size_t>(n + 1));
  c[0] = -1;
  c[static_cast<std::size_t>(n)] = 1;
  Poly acc{std::move(c)};
  for (int d = 1; d < n; ++d)
    if (n % d == 0) acc = divmod(acc, cyclotomic_polynomial(d)).quotient;
  return acc;
}

std::shared_ptr<const CyclotomicRing> CyclotomicRing::make(int conductor) {
  if (conductor < 1 || conductor > 2000) fail(ErrorCode::invalid_argument, "unsupported cyclotomic conductor");
  // Rings are immutable; memoize so that mixed-conductor arithmetic does not
  // rebuild reduction tables.
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CyclotomicRing>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(conductor); it != cache.end()) return it->second;
  }
  std::shared_ptr<CyclotomicRing> r(new CyclotomicRing());
  r->n_ = conductor;
  r->modulus_ = cyclotomic_polynomial(conductor);
  r->phi_ = r->modulus_.degree();
  r->powers_.resize(static_cast<std::size_t>(conductor));
  // x^k mod Phi_N by repeated multiplication by x.
  std::vector<Rational> cur(static_cast<std::size_t>(r->phi_));
  if (r->phi_ == 0) fail(ErrorCode::invalid_argument, "degenerate cyclotomic modulus");
  cur[0] = 1;
  const auto& m = r->modulus_.coeffs();
  for (int k = 0; k < conductor; ++k) {
    r->powers_[static_cast<std::size_t>(k)] = cur;
    Rational top = cur.back();
    for (int i = r->phi_ - 1; i > 0; --i) cur[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < r->phi_; ++i) cur[static_cast<std::size_t>(i)] -= top * m[static_cast<std::size_t>(i)];
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(conductor, std::move(r)).first->second;
}

namespace {
const CycRingPtr& rational_ring() {
  static const CycRingPtr ring = CyclotomicRing::make(1);
  return ring;
}
}  // namespace

CycScalar::CycScalar() : ring_(rational_ring()) {}

CycScalar::CycScalar(const Rational& r) : ring_(rational_ring()) {
  if (r != 0) c_.push_back(r);
}

CycScalar::CycScalar(CycRingPtr ring, std::vector<Rational> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
  const int n = ring_->conductor();
  if (static_cast<int>(c_.size()) > ring_->degree()) {
    // Reduce x^k for k >= phi using x^N = 1 and the power table.
    std::vector<Rational> out(static_cast<std::size_t>(ring_->degree()));
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      const auto& pw = ring_->power(static_cast<int>(k % static_cast<std::size_t>(n)));
      for (std::size_t i = 0; i < pw.size(); ++i)
        if (pw[i] != 0) out[i] += c_[k] * pw[i];
    }
    c_ = std::move(out);
  }
  trim();
}

void CycScalar::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

CycScalar CycScalar::root_of_unity(const CycRingPtr& ring, long k) {
  const long n = ring->conductor();
  long r = ((k % n) + n) % n;
  return CycScalar(ring, ring->power(static_cast<int>(r)));
}

bool CycScalar::is_zero() const { return c_.empty(); }
bool CycScalar::is_rational() const { return c_.size() <= 1; }

CycScalar CycScalar::inflate(int multiple) const {
  const int n = conductor();
  if (multiple % n != 0) fail(ErrorCode::mismatch, "inflation target is not a multiple of the conductor");
  if (multiple == n) return *this;
  const int step = multiple / n;
  auto ring = CyclotomicRing::make(multiple);
  std::vector<Rational> raw(c_.size() == 0 ? 0 : (c_.size() - 1) * static_cast<std::size_t>(step) + 1);
  for (std::size_t k = 0; k < c_.size(); ++k) raw[k * static_cast<std::size_t>(step)] = c_[k];
  return CycScalar(ring, std::move(raw));
}

std::pair<CycScalar, CycScalar> align(const CycScalar& a, const CycScalar& b) {
  if (a.conductor() == b.conductor()) return {a, b};
  if (a.is_rational()) return {CycScalar(b.ring(), {a.rational_part()}), b};
  if (b.is_rational()) return {a, CycScalar(a.ring(), {b.rational_part()})};
  int l = std::lcm(a.conductor(), b.conductor());
  return {a.inflate(l), b.inflate(l)};
}

CycScalar operator+(const CycScalar& a, const CycScalar& b) {
  if (a.conductor() != b.conductor()) {
    auto [x, y] = align(a, b);
    return x + y;
  }
  std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return CycScalar(a.ring_, std::move(out));
}

CycScalar CycScalar::operator-() const {
  std::vector<Rational> out(c_);
  for (auto& x : out) x = -x;
  return CycScalar(ring_, std::move(out));
}

CycScalar operator-(const CycScalar& a, const CycScalar& b) { return a + (-b); }

CycScalar operator*(const CycScalar& a, const CycScalar& b) {
  if (a.conductor() != b.conductor()) {
    auto [x, y] = align(a, b);
    return x * y;
  }
  if (a.c_.empty() || b.c_.empty()) return CycScalar(a.ring_, {});
  std::vector<Rational> raw(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (b.c_[j] != 0) raw[i + j] += a.c_[i] * b.c_[j];
  }
  return CycScalar(a.ring_, std::move(raw));
}

bool operator==(const CycScalar& a, const CycScalar& b) {
  if (a.conductor() != b.conductor()) {
    auto [x, y] = align(a, b);
    return x.c_ == y.c_;
  }
  return a.c_ == b.c_;
}

CycScalar CycScalar::galois(long k) const {
  const long n = conductor();
  if (std::gcd(k, n) != 1) fail(ErrorCode::invalid_argument, "Galois exponent must be a unit mod the conductor");
  CycScalar acc(ring_, {});
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    acc += CycScalar(ring_, {c_[i]}) * root_of_unity(ring_, static_cast<long>(i) * k);
  }
  return acc;
}

Rational CycScalar::norm() const {
  const int n = conductor();
  CycScalar acc(1);
  for (int k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) acc *= galois(k);
  if (!acc.is_rational()) fail(ErrorCode::invalid_argument, "norm did not land in Q");
  return acc.rational_part();
}

CycScalar CycScalar::inverse() const {
  if (is_zero()) fail(ErrorCode::invalid_argument, "inverse of zero cyclotomic scalar");
  Bezout b = poly_xgcd(Poly(c_), ring_->modulus());
  if (b.gcd.degree() != 0) fail(ErrorCode::invalid_argument, "cyclotomic scalar is not invertible");
  return CycScalar(ring_, b.u.coeffs());
}

CycScalar CycScalar::compress() const {
  if (is_rational()) return CycScalar(rational_part());
  const int n = conductor();
  for (int d = 2; d < n; ++d) {
    if (n % d != 0) continue;
    // Q(zeta_d) is the fixed field of {k : k = 1 mod d}.
    bool fixed = true;
    for (int k = 1; k < n && fixed; k += d)
      if (std::gcd(k, n) == 1 && !(galois(k) == *this)) fixed = false;
    if (!fixed) continue;
    auto small = CyclotomicRing::make(d);
    const auto phi = static_cast<std::size_t>(small->degree());
    const auto big = static_cast<std::size_t>(ring_->degree());
    RationalMatrix a(big, phi + 1);
    for (std::size_t j = 0; j < phi; ++j) {
      CycScalar b = root_of_unity(small, static_cast<long>(j)).inflate(n);
      for (std::size_t i = 0; i < b.c_.size(); ++i) a(i, j) = b.c_[i];
    }
    for (std::size_t i = 0; i < c_.size(); ++i) a(i, phi) = -c_[i];
    for (const auto& v : nullspace(a)) {
      if (v[phi] == 0) continue;
      std::vector<Rational> coeffs(phi);
      for (std::size_t j = 0; j < phi; ++j) coeffs[j] = v[j] / v[phi];
      return CycScalar(small, coeffs);
    }
  }
  return *this;
}

std::string CycScalar::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  const std::string z = "z" + std::to_string(conductor());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const Rational& c = c_[i];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << z;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

}  // namespace mfour
