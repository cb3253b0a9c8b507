#include <mfour/error.hpp>
#include <mfour/finite_field.hpp>

#include <sstream>

namespace mfour {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<int, int> prime_power(int q) {
  for (int p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    if (!is_prime(p)) break;
    int e = 0, r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) break;
    return {p, e};
  }
  fail(ErrorCode::invalid_argument, "q = " + std::to_string(q) + " is not a prime power");
}

namespace {

using Digits = std::vector<int>;  // low-to-high coefficients mod p

Digits to_digits(int a, int p, int e) {
  Digits d(static_cast<std::size_t>(e));
  for (int k = 0; k < e; ++k) {
    d[static_cast<std::size_t>(k)] = a % p;
    a /= p;
  }
  return d;
}

int from_digits(const Digits& d, int p) {
  int a = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) a = a * p + *it;
  return a;
}

// Remainder of a polynomial (low-to-high, mod p) by a monic modulus.
Digits reduce(Digits a, const Digits& mod, int p) {
  const int dm = static_cast<int>(mod.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
    int c = a[static_cast<std::size_t>(i)] % p;
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) {
      auto& slot = a[static_cast<std::size_t>(i - dm + j)];
      slot = ((slot - c * mod[static_cast<std::size_t>(j)]) % p + p) % p;
    }
  }
  a.resize(static_cast<std::size_t>(dm));
  return a;
}

bool has_factor_of_degree(const Digits& f, int p, int deg) {
  // Trial division by every monic polynomial of the given degree.
  long count = 1;
  for (int i = 0; i < deg; ++i) count *= p;
  for (long idx = 0; idx < count; ++idx) {
    Digits g = to_digits(static_cast<int>(idx), p, deg);
    g.push_back(1);
    Digits r = reduce(f, g, p);
    bool zero = true;
    for (int c : r) zero = zero && c == 0;
    if (zero) return true;
  }
  return false;
}

Digits lowest_irreducible(int p, int e) {
  long count = 1;
  for (int i = 0; i < e; ++i) count *= p;
  for (long idx = 0; idx < count; ++idx) {
    Digits f = to_digits(static_cast<int>(idx), p, e);
    f.push_back(1);
    bool irreducible = true;
    for (int deg = 1; deg <= e / 2 && irreducible; ++deg) irreducible = !has_factor_of_degree(f, p, deg);
    if (irreducible) return f;
  }
  fail(ErrorCode::invalid_argument, "no irreducible polynomial found");
}

}  // namespace

std::shared_ptr<const FiniteField> FiniteField::make(int p, int e) {
  if (!is_prime(p) || e < 1) fail(ErrorCode::invalid_argument, "finite field needs prime p and e >= 1");
  long q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  if (q > 4096) fail(ErrorCode::invalid_argument, "finite field too large for table arithmetic");
  std::shared_ptr<FiniteField> f(new FiniteField());
  f->p_ = p;
  f->e_ = e;
  f->q_ = static_cast<int>(q);
  f->modulus_ = e == 1 ? Digits{0, 1} : lowest_irreducible(p, e);
  const int qq = f->q_;
  const auto uq = static_cast<std::size_t>(qq);
  f->add_.resize(uq * uq);
  f->mul_.resize(uq * uq);
  f->neg_.resize(uq);
  f->inv_.assign(uq, 0);
  std::vector<Digits> digits(uq);
  for (int a = 0; a < qq; ++a) digits[static_cast<std::size_t>(a)] = to_digits(a, p, e);
  for (int a = 0; a < qq; ++a) {
    const auto& da = digits[static_cast<std::size_t>(a)];
    Digits n(da);
    for (auto& c : n) c = (p - c) % p;
    f->neg_[static_cast<std::size_t>(a)] = from_digits(n, p);
    for (int b = 0; b < qq; ++b) {
      const auto& db = digits[static_cast<std::size_t>(b)];
      Digits s(da);
      for (int k = 0; k < e; ++k) s[static_cast<std::size_t>(k)] = (s[static_cast<std::size_t>(k)] + db[static_cast<std::size_t>(k)]) % p;
      f->add_[static_cast<std::size_t>(a * qq + b)] = from_digits(s, p);
      Digits prod(static_cast<std::size_t>(2 * e), 0);
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[static_cast<std::size_t>(i + j)] += da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)];
      for (auto& c : prod) c %= p;
      f->mul_[static_cast<std::size_t>(a * qq + b)] = from_digits(reduce(prod, f->modulus_, p), p);
    }
  }
  for (int a = 1; a < qq; ++a)
    for (int b = 1; b < qq; ++b)
      if (f->mul(a, b) == 1) f->inv_[static_cast<std::size_t>(a)] = b;
  // Trace: a + a^p + ... + a^{p^{e-1}} lies in the prime field.
  f->trace_.resize(uq);
  for (int a = 0; a < qq; ++a) {
    int acc = 0, cur = a;
    for (int k = 0; k < e; ++k) {
      acc = f->add(acc, cur);
      cur = f->pow(cur, p);
    }
    f->trace_[static_cast<std::size_t>(a)] = acc;
  }
  for (int g = 1; g < qq; ++g) {
    int order = 1, cur = g;
    while (cur != 1) {
      cur = f->mul(cur, g);
      ++order;
    }
    if (order == qq - 1) {
      f->primitive_ = g;
      break;
    }
  }
  f->dlog_.assign(uq, -1);
  for (int k = 0, cur = 1; k < qq - 1; ++k, cur = f->mul(cur, f->primitive_)) f->dlog_[static_cast<std::size_t>(cur)] = k;
  return f;
}

int FiniteField::pow(int a, long k) const {
  int result = 1, base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::string FiniteField::element_name(int a) const {
  if (e_ == 1) return std::to_string(a);
  std::ostringstream os;
  Digits d = to_digits(a, p_, e_);
  os << "[";
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << "]";
  return os.str();
}

}  // namespace mfour
