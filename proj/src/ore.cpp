#include <mfour/error.hpp>
#include <mfour/ore.hpp>

#include <optional>
#include <sstream>

namespace mfour {

namespace {

// c^{(k)} = c (c-1) ... (c-k+1), valid for negative c.
Rational falling(long c, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= Rational(c - i);
  return r;
}

Rational binomial(int n, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
  return r;
}

// Appends "c*f1*f2" with sign handling to a running sum.
void append_term(std::ostringstream& os, bool& first, const Rational& c, const std::vector<std::string>& factors) {
  bool neg = c < 0;
  Rational mag = neg ? Rational(-c) : c;
  if (first) {
    if (neg) os << "-";
  } else {
    os << (neg ? " - " : " + ");
  }
  first = false;
  if (factors.empty()) {
    os << mag.get_str();
    return;
  }
  bool need_star = false;
  if (mag != 1) {
    os << mag.get_str();
    need_star = true;
  }
  for (const auto& f : factors) {
    if (need_star) os << "*";
    os << f;
    need_star = true;
  }
}

std::string power_factor(const std::string& atom, int k) {
  return k == 1 ? atom : atom + "^" + std::to_string(k);
}

}  // namespace

// ---------------------------------------------------------------------------
// ShiftOp

ShiftOp::ShiftOp(const Poly& p) { add_term(0, p); }
ShiftOp::ShiftOp(int j, const Poly& p) { add_term(j, p); }

void ShiftOp::add_term(int j, const Poly& p) {
  if (p.is_zero()) return;
  auto it = terms_.find(j);
  if (it == terms_.end()) {
    terms_.emplace(j, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) terms_.erase(it);
}

Poly ShiftOp::coeff(int j) const {
  auto it = terms_.find(j);
  return it == terms_.end() ? Poly() : it->second;
}

ShiftOp operator+(const ShiftOp& a, const ShiftOp& b) {
  ShiftOp out = a;
  for (const auto& [j, p] : b.terms_) out.add_term(j, p);
  return out;
}

ShiftOp ShiftOp::operator-() const {
  ShiftOp out;
  for (const auto& [j, p] : terms_) out.terms_.emplace(j, -p);
  return out;
}

ShiftOp operator-(const ShiftOp& a, const ShiftOp& b) { return a + (-b); }

ShiftOp operator*(const ShiftOp& a, const ShiftOp& b) {
  // (T^i p(s)) (T^j r(s)) = T^{i+j} p(s+j) r(s)
  ShiftOp out;
  for (const auto& [i, p] : a.terms_)
    for (const auto& [j, r] : b.terms_) out.add_term(i + j, p.shift(j) * r);
  return out;
}

ShiftOp ShiftOp::pow(unsigned k) const {
  ShiftOp result(1), base = *this;
  while (k) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

std::string ShiftOp::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [j, p] : terms_) {
    for (int k = 0; k <= p.degree(); ++k) {
      Rational c = p.coeff(k);
      if (c == 0) continue;
      std::vector<std::string> factors;
      if (j > 0) factors.push_back(power_factor("T", j));
      if (j < 0) factors.push_back(power_factor("Ti", -j));
      if (k > 0) factors.push_back(power_factor("s", k));
      append_term(os, first, c, factors);
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// WeylOp

WeylOp WeylOp::monomial(int rank, const std::vector<int>& alpha, const std::vector<int>& beta, const Rational& c) {
  WeylOp w(rank);
  WeylMonomial m(alpha);
  m.insert(m.end(), beta.begin(), beta.end());
  w.add_term(m, c);
  return w;
}

WeylOp WeylOp::constant(int rank, const Rational& c) {
  return monomial(rank, std::vector<int>(static_cast<std::size_t>(rank)), std::vector<int>(static_cast<std::size_t>(rank)), c);
}

WeylOp WeylOp::x(int rank, int i) {
  std::vector<int> a(static_cast<std::size_t>(rank)), b(static_cast<std::size_t>(rank));
  a.at(static_cast<std::size_t>(i)) = 1;
  return monomial(rank, a, b, 1);
}

WeylOp WeylOp::d(int rank, int i) {
  std::vector<int> a(static_cast<std::size_t>(rank)), b(static_cast<std::size_t>(rank));
  b.at(static_cast<std::size_t>(i)) = 1;
  return monomial(rank, a, b, 1);
}

void WeylOp::add_term(const WeylMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

WeylOp operator+(const WeylOp& a, const WeylOp& b) {
  if (a.rank_ != b.rank_) fail(ErrorCode::mismatch, "Weyl operators of different rank");
  WeylOp out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

WeylOp WeylOp::operator-() const { return scaled(-1); }
WeylOp operator-(const WeylOp& a, const WeylOp& b) { return a + (-b); }

WeylOp WeylOp::scaled(const Rational& c) const {
  WeylOp out(rank_);
  for (const auto& [m, v] : terms_) out.add_term(m, v * c);
  return out;
}

WeylOp operator*(const WeylOp& a, const WeylOp& b) {
  if (a.rank_ != b.rank_) fail(ErrorCode::mismatch, "Weyl operators of different rank");
  const auto d = static_cast<std::size_t>(a.rank_);
  WeylOp out(a.rank_);
  for (const auto& [m1, c1] : a.terms_) {
    for (const auto& [m2, c2] : b.terms_) {
      // Coordinates commute with each other; expand d_i^b x_i^c per index.
      std::vector<std::pair<WeylMonomial, Rational>> partial{{WeylMonomial(2 * d), c1 * c2}};
      for (std::size_t i = 0; i < d; ++i) {
        const int al = m1[i], be = m1[d + i], ga = m2[i], de = m2[d + i];
        std::vector<std::pair<WeylMonomial, Rational>> next;
        for (int k = 0; k <= std::min(be, ga); ++k) {
          Rational f = binomial(be, k) * falling(ga, k);
          for (const auto& [pm, pc] : partial) {
            WeylMonomial nm = pm;
            nm[i] = al + ga - k;
            nm[d + i] = be + de - k;
            next.emplace_back(std::move(nm), pc * f);
          }
        }
        partial = std::move(next);
      }
      for (const auto& [m, c] : partial) out.add_term(m, c);
    }
  }
  return out;
}

WeylOp WeylOp::pow(unsigned k) const {
  WeylOp result = constant(rank_, 1), base = *this;
  while (k) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

std::string WeylOp::to_string() const {
  if (terms_.empty()) return "0";
  const auto d = static_cast<std::size_t>(rank_);
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < d; ++i) {
      std::string suffix = rank_ == 1 ? "" : std::to_string(i + 1);
      if (m[i] > 0) factors.push_back(power_factor("x" + suffix, m[i]));
    }
    for (std::size_t i = 0; i < d; ++i) {
      std::string suffix = rank_ == 1 ? "" : std::to_string(i + 1);
      if (m[d + i] > 0) factors.push_back(power_factor("dx" + suffix, m[d + i]));
    }
    append_term(os, first, c, factors);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// LaurentWeylOp

LaurentWeylOp LaurentWeylOp::constant(const Rational& c) {
  LaurentWeylOp w;
  w.add_term(0, 0, c);
  return w;
}
LaurentWeylOp LaurentWeylOp::x(int power) {
  LaurentWeylOp w;
  w.add_term(power, 0, 1);
  return w;
}
LaurentWeylOp LaurentWeylOp::d() {
  LaurentWeylOp w;
  w.add_term(0, 1, 1);
  return w;
}

LaurentWeylOp LaurentWeylOp::from_weyl(const WeylOp& w) {
  if (w.rank() != 1) fail(ErrorCode::mismatch, "only rank-1 Weyl operators restrict to G_m");
  LaurentWeylOp out;
  for (const auto& [m, c] : w.terms()) out.add_term(m[0], m[1], c);
  return out;
}

void LaurentWeylOp::add_term(int a, int b, const Rational& c) {
  if (c == 0) return;
  auto key = std::make_pair(a, b);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

LaurentWeylOp operator+(const LaurentWeylOp& a, const LaurentWeylOp& b) {
  LaurentWeylOp out = a;
  for (const auto& [k, c] : b.terms_) out.add_term(k.first, k.second, c);
  return out;
}
LaurentWeylOp LaurentWeylOp::operator-() const { return scaled(-1); }
LaurentWeylOp operator-(const LaurentWeylOp& a, const LaurentWeylOp& b) { return a + (-b); }

LaurentWeylOp LaurentWeylOp::scaled(const Rational& c) const {
  LaurentWeylOp out;
  for (const auto& [k, v] : terms_) out.add_term(k.first, k.second, v * c);
  return out;
}

LaurentWeylOp operator*(const LaurentWeylOp& a, const LaurentWeylOp& b) {
  LaurentWeylOp out;
  for (const auto& [m1, c1] : a.terms_) {
    for (const auto& [m2, c2] : b.terms_) {
      const auto [al, be] = m1;
      const auto [ga, de] = m2;
      for (int k = 0; k <= be; ++k) {
        Rational f = binomial(be, k) * falling(ga, k);
        if (f == 0) continue;
        out.add_term(al + ga - k, be + de - k, c1 * c2 * f);
      }
    }
  }
  return out;
}

LaurentWeylOp LaurentWeylOp::pow(unsigned k) const {
  LaurentWeylOp result = constant(1), base = *this;
  while (k) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

std::string LaurentWeylOp::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::vector<std::string> factors;
    if (m.first > 0) factors.push_back(power_factor("x", m.first));
    if (m.first < 0) factors.push_back(power_factor("xi", -m.first));
    if (m.second > 0) factors.push_back(power_factor("dx", m.second));
    append_term(os, first, c, factors);
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::string algebra_name(Algebra a) {
  switch (a) {
    case Algebra::shift: return "shift";
    case Algebra::weyl: return "weyl";
    case Algebra::laurent_weyl: return "laurent-weyl";
  }
  return "?";
}

Algebra parse_algebra(const std::string& name) {
  if (name == "shift") return Algebra::shift;
  if (name == "weyl") return Algebra::weyl;
  if (name == "laurent-weyl" || name == "laurent") return Algebra::laurent_weyl;
  fail(ErrorCode::invalid_argument, "unknown algebra '" + name + "'");
}

std::string to_string(const Operator& op) {
  return std::visit([](const auto& o) { return o.to_string(); }, op);
}

std::string CyclicPresentation::to_string() const {
  std::string out = "D/(";
  for (std::size_t i = 0; i < relations.size(); ++i) out += (i ? ", " : "") + mfour::to_string(relations[i]);
  return out + ")D";
}

// ---------------------------------------------------------------------------
// Maps

ShiftOp mellin_op(const LaurentWeylOp& w) {
  const ShiftOp d_image = ShiftOp::T(-1) * ShiftOp::s();
  ShiftOp out;
  for (const auto& [m, c] : w.terms()) out += ShiftOp::T(m.first) * d_image.pow(static_cast<unsigned>(m.second)) * ShiftOp(Poly(c));
  return out;
}

LaurentWeylOp inverse_mellin_op(const ShiftOp& sh) {
  const LaurentWeylOp euler = LaurentWeylOp::x() * LaurentWeylOp::d();
  LaurentWeylOp out;
  for (const auto& [j, p] : sh.terms()) {
    LaurentWeylOp poly_image;  // p(x d) by Horner
    const auto& cs = p.coeffs();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) poly_image = poly_image * euler + LaurentWeylOp::constant(*it);
    out = out + LaurentWeylOp::x(j) * poly_image;
  }
  return out;
}

WeylOp fourier_auto(const WeylOp& w) {
  const int d = w.rank();
  const auto ud = static_cast<std::size_t>(d);
  WeylOp out(d);
  for (const auto& [m, c] : w.terms()) {
    // x^alpha d^beta -> (-d)^alpha x^beta
    WeylOp img = WeylOp::constant(d, c);
    for (std::size_t i = 0; i < ud; ++i) img = img * (-WeylOp::d(d, static_cast<int>(i))).pow(static_cast<unsigned>(m[i]));
    for (std::size_t i = 0; i < ud; ++i) img = img * WeylOp::x(d, static_cast<int>(i)).pow(static_cast<unsigned>(m[ud + i]));
    out = out + img;
  }
  return out;
}

WeylOp antipode(const WeylOp& w) {
  WeylOp out(w.rank());
  for (const auto& [m, c] : w.terms()) {
    int total = 0;
    for (int e : m) total += e;
    out = out + WeylOp::monomial(w.rank(), std::vector<int>(m.begin(), m.begin() + w.rank()),
                                 std::vector<int>(m.begin() + w.rank(), m.end()), total % 2 ? Rational(-c) : c);
  }
  return out;
}

ShiftOp invert_coordinate(const ShiftOp& sh) {
  ShiftOp out;
  for (const auto& [j, p] : sh.terms()) out += ShiftOp(-j, p.negate_variable());
  return out;
}

ShiftOp negate_coordinate(const ShiftOp& sh) {
  ShiftOp out;
  for (const auto& [j, p] : sh.terms()) out += ShiftOp(j, j % 2 ? -p : p);
  return out;
}

ShiftOp inversion_twist(const ShiftOp& sh, TwistOrder order) {
  if (order == TwistOrder::invert_then_negate) return negate_coordinate(invert_coordinate(sh));
  return invert_coordinate(negate_coordinate(sh));
}

// ---------------------------------------------------------------------------
// Reduction modulo a cyclic right relation

namespace {

ShiftOp reduce_shift(const ShiftOp& elem, const ShiftOp& g) {
  if (g.is_zero()) return elem;
  const int lo = g.min_degree(), hi = g.max_degree();
  std::map<int, Poly> t = elem.terms();
  auto at = [&t](int j) -> Poly& { return t[j]; };

  if (lo == hi) {
    // g T^m = T^{hi+m} a(s+m): every coefficient reduces independently.
    const Poly a = g.coeff(hi);
    ShiftOp out;
    for (const auto& [j, p] : t) out += ShiftOp(j, divmod(p, a.shift(j - hi)).remainder);
    return out;
  }
  if (hi - lo != 1) {
    fail(ErrorCode::unsupported_input, "relation " + g.to_string() + " spans non-adjacent T-powers; reduction is not confluent");
  }
  const Poly a_hi = g.coeff(hi), a_lo = g.coeff(lo);
  // g T^m = T^{hi+m} a_hi(s+m) + T^{lo+m} a_lo(s+m) = 0.
  if (!t.empty()) {
    for (int j = t.rbegin()->first; j > hi; --j) {
      auto it = t.find(j);
      if (it == t.end() || it->second.is_zero()) continue;
      const int m = j - hi;
      auto [q, r] = divmod(it->second, a_hi.shift(m));
      it->second = r;
      at(j - 1) -= a_lo.shift(m) * q;
    }
  }
  if (!t.empty()) {
    for (int j = t.begin()->first; j < hi; ++j) {
      auto it = t.find(j);
      if (it == t.end() || it->second.is_zero()) continue;
      const int m = j - lo;
      auto [q, r] = divmod(it->second, a_lo.shift(m));
      it->second = r;
      at(j + 1) -= a_hi.shift(m) * q;
    }
  }
  ShiftOp out;
  for (const auto& [j, p] : t) out += ShiftOp(j, p);
  return out;
}

struct AffineGenerator {
  std::size_t index;  // position in the monomial vector (alpha then beta)
  Rational value;     // generator * (that variable) = value * generator
};

AffineGenerator affine_relation(const WeylOp& g) {
  Rational constant = 0;
  std::optional<std::pair<std::size_t, Rational>> linear;
  for (const auto& [m, c] : g.terms()) {
    int total = 0;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      total += m[i];
      if (m[i]) pos = i;
    }
    if (total == 0) {
      constant = c;
    } else if (total == 1 && !linear) {
      linear = std::make_pair(pos, c);
    } else {
      fail(ErrorCode::unsupported_input, "Weyl relation " + g.to_string() + " is not affine in a single generator");
    }
  }
  if (!linear) fail(ErrorCode::unsupported_input, "constant Weyl relation " + g.to_string() + " is not handled by reduction");
  return {linear->first, -constant / linear->second};
}

WeylOp reduce_weyl(const WeylOp& elem, const WeylOp& g) {
  if (elem.rank() != g.rank()) fail(ErrorCode::mismatch, "element and relation have different rank");
  const auto d = static_cast<std::size_t>(g.rank());
  const AffineGenerator rel = affine_relation(g);
  WeylOp out(g.rank());
  auto power = [](const Rational& v, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= v;
    return r;
  };
  for (const auto& [m, c] : elem.terms()) {
    if (rel.index < d) {
      // x_i sits leftmost in x^alpha d^beta.
      WeylMonomial nm = m;
      const int k = nm[rel.index];
      nm[rel.index] = 0;
      out = out + WeylOp::monomial(g.rank(), {nm.begin(), nm.begin() + g.rank()}, {nm.begin() + g.rank(), nm.end()}, c * power(rel.value, k));
      continue;
    }
    // x_i^a d_i^b = sum_k (-1)^k C(b,k) a^{(k)} d_i^{b-k} x_i^{a-k}; then the
    // leftmost d_i^{b-k} acts on the generator by value^{b-k}.
    const std::size_t i = rel.index - d;
    const int a = m[i], b = m[rel.index];
    for (int k = 0; k <= std::min(a, b); ++k) {
      Rational f = binomial(b, k) * falling(a, k) * power(rel.value, b - k);
      if (k % 2) f = -f;
      if (f == 0) continue;
      WeylMonomial nm = m;
      nm[i] = a - k;
      nm[rel.index] = 0;
      out = out + WeylOp::monomial(g.rank(), {nm.begin(), nm.begin() + g.rank()}, {nm.begin() + g.rank(), nm.end()}, c * f);
    }
  }
  return out;
}

}  // namespace

Operator right_reduce(const Operator& elem, const CyclicPresentation& presentation) {
  if (presentation.relations.size() != 1) {
    fail(ErrorCode::unsupported_input, "reduction supports exactly one relation");
  }
  const Operator& g = presentation.relations.front();
  if (presentation.algebra == Algebra::shift) {
    const auto* e = std::get_if<ShiftOp>(&elem);
    const auto* r = std::get_if<ShiftOp>(&g);
    if (!e || !r) fail(ErrorCode::mismatch, "shift presentation needs shift operators");
    return reduce_shift(*e, *r);
  }
  if (presentation.algebra == Algebra::weyl) {
    const auto* e = std::get_if<WeylOp>(&elem);
    const auto* r = std::get_if<WeylOp>(&g);
    if (!e || !r) fail(ErrorCode::mismatch, "Weyl presentation needs Weyl operators");
    return reduce_weyl(*e, *r);
  }
  fail(ErrorCode::unsupported_input, "reduction over the Laurent Weyl algebra is not supported");
}

}  // namespace mfour
