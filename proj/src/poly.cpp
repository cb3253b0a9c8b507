#include <mfour/error.hpp>
#include <mfour/poly.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace mfour {

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0 || r.get_den() == 0) {
    fail(ErrorCode::invalid_argument, "not a rational literal: '" + text + "'");
  }
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::linear_power(const Rational& a, int k) {
  return Poly({Rational(-a), Rational(1)}).pow(static_cast<unsigned>(k));
}

Rational Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(i)];
}

Rational Poly::lead() const { return c_.empty() ? Rational(0) : c_.back(); }

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / lead();
  std::vector<Rational> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * inv;
  return Poly(std::move(out));
}

Rational Poly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(out));
}

Poly Poly::shift(const Rational& c) const {
  // Horner in (s + c).
  Poly lin({c, Rational(1)});
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Poly(*it);
  return acc;
}

Poly Poly::negate_variable() const {
  std::vector<Rational> out(c_);
  for (std::size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
  return Poly(std::move(out));
}

Poly Poly::pow(unsigned k) const {
  Poly result(1), base = *this;
  while (k) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k) base *= base;
  }
  return result;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return Poly(std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const {
  std::vector<Rational> out(c_);
  for (auto& x : out) x = -x;
  Poly p;
  p.c_ = std::move(out);
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(out));
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rational c = c_[static_cast<std::size_t>(i)];
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
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

PolyDivision divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorCode::invalid_argument, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rational> rem(a.coeffs());
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const auto& bc = b.coeffs();
  Rational inv = 1 / b.lead();
  int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    Rational q = rem[static_cast<std::size_t>(i)] * inv;
    if (q == 0) continue;
    quo[static_cast<std::size_t>(i - db)] = q;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= q * bc[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

bool divides(const Poly& d, const Poly& a) {
  if (d.is_zero()) return a.is_zero();
  return divmod(a, d).remainder.is_zero();
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Bezout poly_xgcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b, u0(1), u1, v0, v1(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly u2 = u0 - q * u1, v2 = v0 - q * v1;
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  if (r0.is_zero()) return {Poly(), Poly(), Poly()};
  Rational inv = 1 / r0.lead();
  return {r0 * Poly(inv), u0 * Poly(inv), v0 * Poly(inv)};
}

int root_multiplicity(const Poly& p, const Rational& a) {
  if (p.is_zero()) return kZeroValuation;
  Poly lin({Rational(-a), Rational(1)});
  Poly cur = p;
  int m = 0;
  while (true) {
    auto [q, r] = divmod(cur, lin);
    if (!r.is_zero()) return m;
    cur = std::move(q);
    ++m;
  }
}

namespace {

std::vector<BigInt> positive_divisors(BigInt n) {
  if (n < 0) n = -n;
  std::vector<std::pair<BigInt, int>> factors;
  BigInt d = 2;
  while (d * d <= n && d < 1000000) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      factors.emplace_back(d, e);
    }
    d += 1;
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<BigInt> divs{BigInt(1)};
  for (const auto& [prime, e] : factors) {
    std::size_t sz = divs.size();
    BigInt pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= prime;
      for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace

RationalRoots rational_roots(const Poly& p) {
  if (p.is_zero()) fail(ErrorCode::invalid_argument, "rational_roots of the zero polynomial");
  RationalRoots out;
  Poly cur = p;
  int zero_mult = 0;
  while (cur.degree() > 0 && cur.coeff(0) == 0) {
    cur = divmod(cur, Poly::s()).quotient;
    ++zero_mult;
  }
  std::set<Rational> found;
  if (cur.degree() > 0) {
    // Integer coefficients for the rational root theorem.
    BigInt lcm = 1;
    for (const auto& c : cur.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    BigInt a0 = Rational(cur.coeff(0) * lcm).get_num();
    BigInt an = Rational(cur.lead() * lcm).get_num();
    auto num_divs = positive_divisors(a0);
    auto den_divs = positive_divisors(an);
    for (const auto& nd : num_divs) {
      for (const auto& dd : den_divs) {
        for (int sign : {1, -1}) {
          Rational cand(nd * sign, dd);
          cand.canonicalize();
          if (found.count(cand)) continue;
          if (cur.eval(cand) == 0) found.insert(cand);
        }
      }
    }
  }
  if (zero_mult > 0) out.roots.emplace_back(Rational(0), zero_mult);
  for (const auto& r : found) {
    int m = root_multiplicity(cur, r);
    out.roots.emplace_back(r, m);
    cur = divmod(cur, Poly::linear_power(r, m)).quotient;
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.cofactor = cur;
  return out;
}

std::vector<Rational> series_quotient(const Poly& a, const Poly& b, const Rational& x0, int terms) {
  Poly as = a.shift(x0), bs = b.shift(x0);
  if (bs.coeff(0) == 0) fail(ErrorCode::invalid_argument, "series_quotient: denominator vanishes at expansion point");
  std::vector<Rational> out(static_cast<std::size_t>(std::max(terms, 0)));
  Rational inv = 1 / bs.coeff(0);
  for (int k = 0; k < terms; ++k) {
    Rational acc = as.coeff(k);
    for (int j = 1; j <= k; ++j) acc -= bs.coeff(j) * out[static_cast<std::size_t>(k - j)];
    out[static_cast<std::size_t>(k)] = acc * inv;
  }
  return out;
}

// ---------------------------------------------------------------------------
// RatFun

RatFun::RatFun(const Poly& num, const Poly& den) {
  if (den.is_zero()) fail(ErrorCode::invalid_argument, "rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly(1);
    return;
  }
  Poly g = poly_gcd(num, den);
  Poly n = num / g, d = den / g;
  Rational lc = d.lead();
  num_ = n * Poly(1 / lc);
  den_ = d * Poly(1 / lc);
}

RatFun RatFun::shift(const Rational& c) const { return RatFun(num_.shift(c), den_.shift(c)); }

int RatFun::valuation(const Rational& a) const {
  if (num_.is_zero()) return kZeroValuation;
  return root_multiplicity(num_, a) - root_multiplicity(den_, a);
}

Rational RatFun::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (d == 0) fail(ErrorCode::invalid_argument, "rational function evaluated at a pole");
  return num_.eval(x) / d;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
  return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
RatFun operator*(const RatFun& a, const RatFun& b) { return RatFun(a.num_ * b.num_, a.den_ * b.den_); }
RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) fail(ErrorCode::invalid_argument, "division by the zero rational function");
  return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFun::to_string(const std::string& var) const {
  if (is_polynomial()) return num_.to_string(var);
  auto wrap = [&var](const Poly& p) {
    std::size_t terms = 0;
    for (const auto& c : p.coeffs()) terms += c != 0;
    return terms > 1 ? "(" + p.to_string(var) + ")" : p.to_string(var);
  };
  return wrap(num_) + "/" + wrap(den_);
}

// ---------------------------------------------------------------------------
// Partial fractions

RatFun PartialFractions::recombine() const {
  RatFun acc(polynomial_part);
  for (const auto& part : parts) {
    for (int k = 1; k <= part.order; ++k) {
      const Rational& c = part.coeffs[static_cast<std::size_t>(k - 1)];
      if (c == 0) continue;
      acc = acc + RatFun(Poly(c), Poly::linear_power(part.pole, k));
    }
  }
  return acc;
}

PartialFractions partial_fractions(const RatFun& f) {
  PartialFractions out;
  auto [quo, rem] = divmod(f.num(), f.den());
  out.polynomial_part = quo;
  if (f.den().degree() == 0) return out;
  RationalRoots rr = rational_roots(f.den());
  if (rr.cofactor.degree() > 0) {
    fail(ErrorCode::unsupported_input,
         "denominator factor " + rr.cofactor.to_string() + " has no rational root");
  }
  for (const auto& [pole, order] : rr.roots) {
    // rem/den = g/(s-pole)^order with g = rem/rest; expand g around pole.
    Poly rest = f.den() / Poly::linear_power(pole, order);
    auto series = series_quotient(rem, rest, pole, order);
    PrincipalPart part;
    part.pole = pole;
    part.order = order;
    part.coeffs.resize(static_cast<std::size_t>(order));
    for (int j = 0; j < order; ++j) part.coeffs[static_cast<std::size_t>(order - 1 - j)] = series[static_cast<std::size_t>(j)];
    out.parts.push_back(std::move(part));
  }
  return out;
}

}  // namespace mfour
