#include <mfour/error.hpp>
#include <mfour/mellin.hpp>

#include <algorithm>
#include <sstream>

namespace mfour {

namespace {

bool is_integral(const Rational& a) { return a.get_den() == 1; }

std::string shift_generator_name(int j) {
  if (j == 0) return "1";
  return "1T^" + std::to_string(j);
}

// Summand indices of the Smith form that survive at s = a.
std::vector<std::size_t> local_summands(const SmithForm& snf, std::size_t cols, const Rational& a) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cols; ++i) {
    if (i >= snf.rank || root_multiplicity(snf.diagonal(i), a) > 0) out.push_back(i);
  }
  return out;
}

// Coordinates of the row vector x in the Smith basis.
std::vector<Poly> smith_coordinates(const SmithForm& snf, const std::vector<Poly>& x) {
  std::vector<Poly> out(snf.V.cols());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].is_zero()) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += x[k] * snf.V(k, j);
  }
  return out;
}

// If the fiber at a is cyclic, the value at a of x's coordinate on it.
std::optional<Rational> local_coordinate(const SmithForm& snf, std::size_t cols, const std::vector<Poly>& x, const Rational& a) {
  auto summands = local_summands(snf, cols, a);
  if (summands.size() != 1) return std::nullopt;
  return smith_coordinates(snf, x)[summands.front()].eval(a);
}

std::vector<Poly> unit_vector(std::size_t n, std::size_t k) {
  std::vector<Poly> v(n);
  v[k] = Poly(1);
  return v;
}

Fiber fiber_from_smith(const SmithForm& snf, std::size_t cols, const Rational& a, int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "fiber order must be positive");
  Fiber f;
  f.point = a;
  f.order = n;
  for (std::size_t i = 0; i < cols; ++i) {
    int e = i < snf.rank ? std::min(root_multiplicity(snf.diagonal(i), a), n) : n;
    if (e > 0) f.exponents.push_back(e);
  }
  std::sort(f.exponents.begin(), f.exponents.end());
  return f;
}

// Rational roots of the denominator; every pole must be rational.
std::vector<Rational> poles(const RatFun& f) {
  if (f.is_polynomial()) return {};
  auto rr = rational_roots(f.den());
  if (rr.cofactor.degree() > 0) {
    fail(ErrorCode::unsupported_input, "denominator " + f.den().to_string() + " has non-rational poles");
  }
  std::vector<Rational> out;
  for (const auto& [root, mult] : rr.roots) out.push_back(root);
  return out;
}

Rational abs_value(const Rational& a) { return a < 0 ? Rational(-a) : a; }

}  // namespace

// ---------------------------------------------------------------------------

EquivariantModule free_module(std::size_t generators) {
  EquivariantModule m;
  m.presentation = PolyMatrix(0, generators);
  for (std::size_t i = 0; i < generators; ++i) m.generator_names.push_back("e" + std::to_string(i));
  m.shift = PolyMatrix::identity(generators);
  m.shift_inverse = PolyMatrix::identity(generators);
  return m;
}

bool shift_is_consistent(const EquivariantModule& m) {
  if (!m.shift || !m.shift_inverse) return false;
  const auto n = m.generators();
  const PolyMatrix& S = *m.shift;
  const PolyMatrix& Si = *m.shift_inverse;
  if (S.rows() != n || S.cols() != n || Si.rows() != n || Si.cols() != n) return false;
  const SmithForm snf = diagonal_form(m.presentation);
  auto apply = [n](const PolyMatrix& map, const std::vector<Poly>& x, int direction) {
    std::vector<Poly> out(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (x[k].is_zero()) continue;
      Poly c = x[k].shift(direction);
      for (std::size_t l = 0; l < n; ++l) out[l] += c * map(k, l);
    }
    return out;
  };
  auto in_span = [&](const std::vector<Poly>& v) {
    if (m.presentation.rows() == 0) return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
    return in_row_space(snf, v);
  };
  for (std::size_t r = 0; r < m.presentation.rows(); ++r) {
    std::vector<Poly> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = m.presentation(r, k);
    if (!in_span(apply(S, row, 1)) || !in_span(apply(Si, row, -1))) return false;
  }
  for (std::size_t k = 0; k < n; ++k) {
    auto back = apply(Si, apply(S, unit_vector(n, k), 1), -1);
    back[k] -= Poly(1);
    if (!in_span(back)) return false;
  }
  return true;
}

bool Fiber::is_free(std::size_t rank) const {
  return exponents.size() == rank && std::all_of(exponents.begin(), exponents.end(), [this](int e) { return e == order; });
}

int Fiber::length() const {
  int total = 0;
  for (int e : exponents) total += e;
  return total;
}

// ---------------------------------------------------------------------------

Rational normalize_chi(const Rational& chi) { return is_integral(chi) ? Rational(0) : chi; }

bool same_orbit(const Rational& a, const Rational& b) { return is_integral(Rational(a - b)); }

WindowedLattice::WindowedLattice(Rational chi, int radius, std::vector<RatFun> generators)
    : chi_(normalize_chi(chi)), radius_(radius), generators_(std::move(generators)) {
  if (radius < 0) fail(ErrorCode::invalid_argument, "window radius must be non-negative");
  Poly common(1);
  for (const auto& g : generators_) {
    for (const auto& p : poles(g)) {
      if (!same_orbit(p, chi_) || abs_value(p - chi_) > radius_) {
        fail(ErrorCode::window, "generator " + g.to_string() + " has a pole at " + p.get_str() + " outside the window");
      }
    }
    if (!g.is_zero()) common = common / poly_gcd(common, g.den()) * g.den();
  }
  Poly numerator;
  for (const auto& g : generators_) {
    if (g.is_zero()) continue;
    numerator = poly_gcd(numerator, g.num() * (common / g.den()));
  }
  cyclic_ = numerator.is_zero() ? RatFun() : RatFun(numerator, common);
}

int WindowedLattice::valuation(const Rational& a) const { return cyclic_.valuation(a); }

std::vector<std::pair<Rational, int>> WindowedLattice::valuation_table() const {
  std::vector<std::pair<Rational, int>> out;
  for (int i = -radius_; i <= radius_; ++i) {
    Rational a = chi_ + i;
    out.emplace_back(a, valuation(a));
  }
  return out;
}

bool WindowedLattice::contains(const RatFun& f) const {
  if (f.is_zero()) return true;
  if (cyclic_.is_zero()) return false;
  return (f / cyclic_).is_polynomial();
}

bool WindowedLattice::in_window(const Rational& a) const { return abs_value(a - chi_) <= radius_; }

bool SkyscraperFamily::is_zero() const {
  return std::all_of(fibers.begin(), fibers.end(), [](const Fiber& f) { return f.is_zero(); });
}

// ---------------------------------------------------------------------------
// Canonical objects

CyclicPresentation b_module() { return CyclicPresentation::shift(ShiftOp(Poly{1, 1}) - ShiftOp::T(-1) * ShiftOp::s()); }

CyclicPresentation e_module() { return CyclicPresentation::shift(ShiftOp(1) - ShiftOp::T(-1) * ShiftOp::s()); }

CyclicPresentation exp_module() { return CyclicPresentation::weyl(WeylOp::constant(1, 1) - WeylOp::d(1)); }

CyclicPresentation b_weyl_module() {
  return CyclicPresentation::laurent(LaurentWeylOp::d() * (LaurentWeylOp::x() - LaurentWeylOp::constant(1)));
}

SkyscraperFamily i0_module(const Rational& chi, int n, int radius) {
  if (n < 1) fail(ErrorCode::invalid_argument, "pole order must be positive");
  if (radius < 0) fail(ErrorCode::invalid_argument, "window radius must be non-negative");
  SkyscraperFamily fam;
  fam.chi = normalize_chi(chi);
  fam.radius = radius;
  fam.order = n;
  // The summand at a is generated by 1/(s-a)^n; its principal part after
  // translation by T^-1 gives the shift unit.
  for (int i = -radius; i <= radius; ++i) {
    Rational a = fam.chi + i;
    RatFun gen(Poly(1), Poly::linear_power(a, n));
    Fiber f;
    f.point = a;
    f.order = n;
    f.exponents = {n};
    f.generators = {gen.to_string()};
    fam.fibers.push_back(f);
    if (i < radius) {
      PartialFractions pf = partial_fractions(right_action(gen, ShiftOp::T(-1)));
      Rational unit = 0;
      for (const auto& part : pf.parts) {
        if (part.pole == a + 1 && part.order == n) unit = part.coeffs.back();
      }
      fam.shift_units.push_back(unit);
    }
  }
  return fam;
}

EquivariantModule to_equivariant(const SkyscraperFamily& f) {
  std::size_t count = 0;
  for (const auto& fb : f.fibers) count += fb.exponents.size();
  EquivariantModule m;
  m.presentation = PolyMatrix(count, count);
  std::size_t k = 0;
  for (const auto& fb : f.fibers) {
    for (std::size_t j = 0; j < fb.exponents.size(); ++j, ++k) {
      m.presentation(k, k) = Poly::linear_power(fb.point, fb.exponents[j]);
      m.generator_names.push_back(j < fb.generators.size() ? fb.generators[j] : "g" + std::to_string(k));
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

CyclicPresentation mellin_module(const CyclicPresentation& m) {
  CyclicPresentation out;
  out.algebra = Algebra::shift;
  for (const auto& rel : m.relations) {
    if (const auto* l = std::get_if<LaurentWeylOp>(&rel)) {
      out.relations.emplace_back(mellin_op(*l));
    } else if (const auto* w = std::get_if<WeylOp>(&rel)) {
      out.relations.emplace_back(mellin_op(LaurentWeylOp::from_weyl(*w)));
    } else {
      fail(ErrorCode::mismatch, "mellin_module expects a differential-operator presentation");
    }
  }
  return out;
}

RatFun right_action(const RatFun& f, const ShiftOp& op) {
  RatFun out;
  for (const auto& [j, p] : op.terms()) out = out + f.shift(j) * RatFun(p);
  return out;
}

WindowedLattice embed_in_Ks(const CyclicPresentation& m, const RatFun& image, int radius) {
  if (m.algebra != Algebra::shift) fail(ErrorCode::mismatch, "embed_in_Ks expects a shift-algebra presentation");
  for (const auto& rel : m.relations) {
    RatFun r = right_action(image, std::get<ShiftOp>(rel));
    if (!r.is_zero()) {
      fail(ErrorCode::not_a_morphism, image.to_string() + " . (" + mfour::to_string(rel) + ") = " + r.to_string() + " is not zero");
    }
  }
  auto ps = poles(image);
  Rational chi = ps.empty() ? Rational(0) : normalize_chi(ps.front());
  for (const auto& p : ps) {
    if (!same_orbit(p, chi)) fail(ErrorCode::unsupported_input, "poles of the image lie in more than one orbit");
  }
  std::vector<RatFun> gens;
  if (image.is_zero()) return WindowedLattice(chi, radius, gens);
  if (ps.empty()) {
    for (int j = -radius; j <= radius; ++j) gens.push_back(image.shift(j));
    return WindowedLattice(chi, radius, gens);
  }
  // Poles of f(s + j) are the poles of f moved by -j.
  Rational lo = ps.front(), hi = ps.front();
  for (const auto& p : ps) {
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  for (int j = -4 * radius - 8; j <= 4 * radius + 8; ++j) {
    if (abs_value(lo - j - chi) <= radius && abs_value(hi - j - chi) <= radius) gens.push_back(image.shift(j));
  }
  return WindowedLattice(chi, radius, gens);
}

EquivariantModule window_presentation(const ShiftOp& g, int W) {
  if (W < 0) fail(ErrorCode::invalid_argument, "window radius must be non-negative");
  const auto cols = static_cast<std::size_t>(2 * W + 1);
  EquivariantModule m;
  for (int j = -W; j <= W; ++j) m.generator_names.push_back(shift_generator_name(j));
  std::vector<std::vector<Poly>> rows;
  if (!g.is_zero()) {
    for (int mm = -W - g.min_degree(); mm <= W - g.max_degree(); ++mm) {
      // g T^m = sum_j T^{j+m} g_j(s+m)
      std::vector<Poly> row(cols);
      for (const auto& [j, p] : g.terms()) row[static_cast<std::size_t>(j + mm + W)] = p.shift(mm);
      rows.push_back(std::move(row));
    }
  }
  m.presentation = PolyMatrix(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m.presentation(r, c) = rows[r][c];
  return m;
}

Fiber fiber(const WindowedLattice& m, const Rational& a, int n) {
  if (!m.in_window(a)) fail(ErrorCode::window, "point " + a.get_str() + " lies outside the window");
  if (n < 1) fail(ErrorCode::invalid_argument, "fiber order must be positive");
  Fiber f;
  f.point = a;
  f.order = n;
  if (m.cyclic_generator().is_zero()) return f;
  // A nonzero lattice is free of rank 1; locally it is generated by
  // (s - a)^v with v the minimum valuation.
  const int v = m.valuation(a);
  f.exponents = {n};
  f.generators = {v >= 0 ? RatFun(Poly::linear_power(a, v)).to_string() : RatFun(Poly(1), Poly::linear_power(a, -v)).to_string()};
  return f;
}

std::vector<Fiber> fibers(const EquivariantModule& m, const std::vector<Rational>& points, int n) {
  const SmithForm snf = diagonal_form(m.presentation);
  std::vector<Fiber> out;
  for (const auto& a : points) {
    Fiber f = fiber_from_smith(snf, m.generators(), a, n);
    for (std::size_t k = 0; k < m.generators(); ++k) {
      auto c = local_coordinate(snf, m.generators(), unit_vector(m.generators(), k), a);
      if (c && *c != 0) {
        f.generators = {k < m.generator_names.size() ? m.generator_names[k] : "e" + std::to_string(k)};
        break;
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

Fiber fiber(const EquivariantModule& m, const Rational& a, int n) { return fibers(m, {a}, n).front(); }

Fiber fiber(const SkyscraperFamily& m, const Rational& a) {
  if (same_orbit(a, m.chi) && abs_value(a - m.chi) <= m.radius) {
    return m.at(static_cast<int>(Rational(a - m.chi).get_num().get_si()));
  }
  Fiber f;
  f.point = a;
  f.order = m.order;
  return f;
}

EquivariantModule tensor_equivariant(const EquivariantModule& a, const EquivariantModule& b) {
  const std::size_t ca = a.generators(), cb = b.generators();
  EquivariantModule out;
  out.presentation = PolyMatrix(a.presentation.rows() * cb + ca * b.presentation.rows(), ca * cb);
  std::size_t r = 0;
  for (std::size_t ra = 0; ra < a.presentation.rows(); ++ra)
    for (std::size_t j = 0; j < cb; ++j, ++r)
      for (std::size_t k = 0; k < ca; ++k) out.presentation(r, k * cb + j) = a.presentation(ra, k);
  for (std::size_t i = 0; i < ca; ++i)
    for (std::size_t rb = 0; rb < b.presentation.rows(); ++rb, ++r)
      for (std::size_t l = 0; l < cb; ++l) out.presentation(r, i * cb + l) = b.presentation(rb, l);
  for (std::size_t i = 0; i < ca; ++i)
    for (std::size_t j = 0; j < cb; ++j) {
      std::string na = i < a.generator_names.size() ? a.generator_names[i] : "e" + std::to_string(i);
      std::string nb = j < b.generator_names.size() ? b.generator_names[j] : "f" + std::to_string(j);
      out.generator_names.push_back(na + " ⊗ " + nb);
    }
  auto kron = [ca, cb](const PolyMatrix& x, const PolyMatrix& y) {
    PolyMatrix k(ca * cb, ca * cb);
    for (std::size_t i = 0; i < ca; ++i)
      for (std::size_t j = 0; j < cb; ++j)
        for (std::size_t p = 0; p < ca; ++p)
          for (std::size_t q = 0; q < cb; ++q) k(i * cb + j, p * cb + q) = x(i, p) * y(j, q);
    return k;
  };
  if (a.shift && b.shift) out.shift = kron(*a.shift, *b.shift);
  if (a.shift_inverse && b.shift_inverse) out.shift_inverse = kron(*a.shift_inverse, *b.shift_inverse);
  return out;
}

SkyscraperFamily tensor_equivariant(const SkyscraperFamily& a, const SkyscraperFamily& b) {
  if (a.radius != b.radius) {
    fail(ErrorCode::window, "window radii differ (" + std::to_string(a.radius) + " vs " + std::to_string(b.radius) + ")");
  }
  SkyscraperFamily out;
  out.chi = a.chi;
  out.radius = a.radius;
  out.order = std::min(a.order, b.order);
  if (!same_orbit(a.chi, b.chi)) {
    // Disjoint supports: every fiber of the tensor product vanishes.
    for (int i = -a.radius; i <= a.radius; ++i) {
      Fiber f;
      f.point = a.chi + i;
      f.order = out.order;
      out.fibers.push_back(f);
    }
    return out;
  }
  if (a.chi != b.chi) fail(ErrorCode::window, "families are centered at different points of the same orbit");
  for (int i = -a.radius; i <= a.radius; ++i) {
    const Fiber& fa = a.at(i);
    const Fiber& fb = b.at(i);
    Fiber f;
    f.point = fa.point;
    f.order = out.order;
    for (std::size_t x = 0; x < fa.exponents.size(); ++x)
      for (std::size_t y = 0; y < fb.exponents.size(); ++y) {
        f.exponents.push_back(std::min(fa.exponents[x], fb.exponents[y]));
        std::string ga = x < fa.generators.size() ? fa.generators[x] : "?";
        std::string gb = y < fb.generators.size() ? fb.generators[y] : "?";
        f.generators.push_back(ga + " ⊗ " + gb);
      }
    std::sort(f.exponents.begin(), f.exponents.end());
    out.fibers.push_back(f);
  }
  if (a.shift_units.size() == b.shift_units.size()) {
    for (std::size_t i = 0; i < a.shift_units.size(); ++i) out.shift_units.push_back(a.shift_units[i] * b.shift_units[i]);
  }
  return out;
}

bool monodromic_test(const EquivariantModule& m) {
  if (m.generators() == 0) return true;
  return diagonal_form(m.presentation).rank == m.generators();
}

HomVanishing hom_to_free_vanishes(const WindowedLattice& m, int degree_bound) {
  if (degree_bound < 0) fail(ErrorCode::invalid_argument, "degree bound must be non-negative");
  if (m.radius() <= degree_bound + 1) {
    fail(ErrorCode::window, "window radius " + std::to_string(m.radius()) + " must exceed degree bound + 1 = " +
                                std::to_string(degree_bound + 1));
  }
  HomVanishing out;
  if (m.cyclic_generator().is_zero()) {
    out.vanishes = true;
    return out;
  }
  // phi is determined by P = phi(r); phi(g_k) = (g_k / r) P.
  for (const auto& g : m.generators()) {
    RatFun q = g / m.cyclic_generator();
    if (!q.is_polynomial()) fail(ErrorCode::invalid_argument, "lattice generator outside the lattice");
    if (!q.is_zero()) out.forced_degree = std::max(out.forced_degree, q.num().degree());
  }
  out.vanishes = out.forced_degree > degree_bound;
  return out;
}

bool localization_identity_check(const WindowedLattice& m, const std::vector<Rational>& test_points) {
  for (const auto& a : test_points) {
    if (same_orbit(a, m.chi())) fail(ErrorCode::invalid_argument, "test point " + a.get_str() + " lies in the orbit of the window");
    for (const auto& g : m.generators()) {
      if (g.valuation(a) < 0) fail(ErrorCode::invalid_argument, "test point " + a.get_str() + " is a pole of " + g.to_string());
    }
  }
  if (m.cyclic_generator().is_zero()) return false;
  for (const auto& a : test_points) {
    if (m.valuation(a) != 0) return false;
  }
  // 1 is in the lattice after inverting the window factors iff every zero of
  // the generator lies on a window point.
  Poly num = m.cyclic_generator().num();
  auto rr = rational_roots(num);
  if (rr.cofactor.degree() > 0) return false;
  return std::all_of(rr.roots.begin(), rr.roots.end(), [&m](const auto& z) { return same_orbit(z.first, m.chi()) && m.in_window(z.first); });
}

// ---------------------------------------------------------------------------
// Skyscraper families

FreenessWitness skyscraper_freeness_check(SkyscraperKind kind, const Rational& chi_in, int n, int radius) {
  if (n < 1) fail(ErrorCode::invalid_argument, "pole order must be positive");
  if (radius < 0) fail(ErrorCode::invalid_argument, "window radius must be non-negative");
  const Rational chi = normalize_chi(chi_in);
  const CyclicPresentation pres = kind == SkyscraperKind::B ? b_module() : e_module();
  const ShiftOp& g = std::get<ShiftOp>(pres.relations.front());
  const int W = radius + 2;
  const EquivariantModule wm = window_presentation(g, W);
  const SmithForm snf = diagonal_form(wm.presentation);
  const std::size_t cols = wm.generators();
  auto index = [W](int j) { return static_cast<std::size_t>(j + W); };

  std::optional<WindowedLattice> lattice;
  if (kind == SkyscraperKind::B) lattice = embed_in_Ks(pres, RatFun(Poly(1), Poly{1, 1}), W);

  FreenessWitness out;
  out.free = true;
  SkyscraperFamily& fam = out.family;
  fam.chi = chi;
  fam.radius = radius;
  fam.order = n;
  std::ostringstream why;
  for (int i = -radius; i <= radius; ++i) {
    const Rational a = chi + i;
    Fiber f = fiber_from_smith(snf, cols, a, n);
    // Named generator 1T^{-i-1}; under 1 -> 1/(s+1) it is 1/(s-i).
    const int j = -i - 1;
    auto c = local_coordinate(snf, cols, unit_vector(cols, index(j)), a);
    std::string label;
    if (kind == SkyscraperKind::B) {
      RatFun image = right_action(RatFun(Poly(1), Poly{1, 1}), ShiftOp::T(j));
      label = image.to_string() + " ⊗ 1";
      // Second route: the image must have minimal valuation in the lattice.
      if (image.valuation(a) != lattice->valuation(a)) {
        out.free = false;
        why << "fiber " << i << ": " << image.to_string() << " does not generate the lattice fiber; ";
      }
    } else {
      label = shift_generator_name(j) + " ⊗ 1";
      // 1T^{-i} = 1T^{-i-1}(s - i)
      std::vector<Poly> rel = unit_vector(cols, index(-i));
      rel[index(j)] = -Poly::linear_power(Rational(i), 1);
      if (!in_row_space(snf, rel)) {
        out.free = false;
        why << "fiber " << i << ": relation 1T^" << -i << " = 1T^" << j << "(s - " << i << ") fails; ";
      }
    }
    f.generators = {label};
    if (!f.is_free(1)) {
      out.free = false;
      why << "fiber " << i << " at " << a.get_str() << " has exponents";
      for (int e : f.exponents) why << " " << e;
      why << "; ";
    } else if (!c || *c == 0) {
      out.free = false;
      why << "fiber " << i << ": " << label << " does not generate; ";
    }
    fam.fibers.push_back(f);
    if (i < radius) {
      // gen_i T^-1 compared with gen_{i+1} at the next point.
      std::vector<Poly> moved(cols);
      moved[index(j - 1)] = Poly(1);
      auto num = local_coordinate(snf, cols, moved, a + 1);
      auto den = local_coordinate(snf, cols, unit_vector(cols, index(j - 1)), a + 1);
      Rational unit = (num && den && *den != 0) ? Rational(*num / *den) : Rational(0);
      if (unit == 0) {
        out.free = false;
        why << "shift " << i << " -> " << i + 1 << " is not invertible; ";
      }
      fam.shift_units.push_back(unit);
    }
  }
  out.counterexample = why.str();
  return out;
}

namespace {

SkyscraperFamily free_family(const Rational& chi, int n, int radius) {
  SkyscraperFamily fam;
  fam.chi = normalize_chi(chi);
  fam.radius = radius;
  fam.order = n;
  for (int i = -radius; i <= radius; ++i) {
    Fiber f;
    f.point = fam.chi + i;
    f.order = n;
    f.exponents = {n};
    f.generators = {"1"};
    fam.fibers.push_back(f);
    if (i < radius) fam.shift_units.push_back(1);
  }
  return fam;
}

// Builds c_{i+1} = c_i u_i / v_i and checks fiber types and commutation.
bool match_families(const SkyscraperFamily& target, const SkyscraperFamily& x, std::vector<Rational>& scalars, std::ostream& why,
                    const std::string& name) {
  bool ok = true;
  const int N = target.radius;
  for (int i = -N; i <= N; ++i) {
    if (x.at(i).exponents != target.at(i).exponents) {
      ok = false;
      why << name << ": fiber " << i << " differs; ";
    }
  }
  if (x.shift_units.size() != target.shift_units.size()) {
    why << name << ": missing shift data; ";
    return false;
  }
  scalars.assign(1, Rational(1));
  for (int i = -N; i < N; ++i) {
    const Rational& u = target.shift_units[static_cast<std::size_t>(i + N)];
    const Rational& v = x.shift_units[static_cast<std::size_t>(i + N)];
    if (u == 0 || v == 0) {
      ok = false;
      why << name << ": shift " << i << " not invertible; ";
      scalars.push_back(0);
      continue;
    }
    scalars.push_back(scalars.back() * u / v);
  }
  for (int i = -N + 1; i < N - 1; ++i) {
    const auto k = static_cast<std::size_t>(i + N);
    if (x.shift_units[k] * scalars[k + 1] != scalars[k] * target.shift_units[k]) {
      ok = false;
      why << name << ": square " << i << " does not commute; ";
    }
  }
  return ok;
}

MonodromizationResult monodromization_with(const Rational& chi, int n, int radius, const SkyscraperFamily& b_factor,
                                           const SkyscraperFamily& e_factor) {
  MonodromizationResult out;
  out.target = i0_module(chi, n, radius);
  out.with_b = tensor_equivariant(out.target, b_factor);
  out.with_e = tensor_equivariant(out.target, e_factor);
  std::ostringstream why;
  bool b_ok = match_families(out.target, out.with_b, out.b_scalars, why, "B");
  bool e_ok = match_families(out.target, out.with_e, out.e_scalars, why, "E");
  out.ok = b_ok && e_ok;
  out.report = why.str();
  return out;
}

}  // namespace

MonodromizationResult monodromization_check(const Rational& chi, int n, int radius) {
  FreenessWitness b = skyscraper_freeness_check(SkyscraperKind::B, chi, n, radius);
  FreenessWitness e = skyscraper_freeness_check(SkyscraperKind::E, chi, n, radius);
  MonodromizationResult out = monodromization_with(chi, n, radius, b.family, e.family);
  if (!b.free || !e.free) {
    out.ok = false;
    out.report += b.counterexample + e.counterexample;
  }
  return out;
}

MonodromizationResult monodromization_control(const Rational& chi, int n, int radius) {
  SkyscraperFamily f = free_family(chi, n, radius);
  return monodromization_with(chi, n, radius, f, f);
}

// ---------------------------------------------------------------------------
// iota^*E (x) E

ExpSquareResult exp_square_search(const ShiftOp& left, const ShiftOp& right, int radius) {
  constexpr int kSearch = 2;
  const int W = radius + kSearch + 1;
  ExpSquareResult out;
  out.relation = std::get<ShiftOp>(b_module().relations.front()).to_string();
  const EquivariantModule lm = window_presentation(left, W), rm = window_presentation(right, W);
  const SmithForm ls = diagonal_form(lm.presentation), rs = diagonal_form(rm.presentation);

  for (int i = -radius; i <= radius; ++i) {
    Fiber fl = fiber_from_smith(ls, lm.generators(), Rational(i), 1);
    Fiber fr = fiber_from_smith(rs, rm.generators(), Rational(i), 1);
    out.fiber_ranks.push_back(static_cast<int>(fl.exponents.size() * fr.exponents.size()));
  }

  auto free_rank_one = [](const SmithForm& snf, std::size_t cols) {
    if (cols != snf.rank + 1) return false;
    for (std::size_t i = 0; i < snf.rank; ++i)
      if (snf.diagonal(i).degree() != 0) return false;
    return true;
  };
  if (!free_rank_one(ls, lm.generators()) || !free_rank_one(rs, rm.generators())) {
    out.report = "a factor is not free of rank 1 on the window";
    return out;
  }
  // Coordinate of 1T^j on the free generator of each factor.
  auto coord = [W](const SmithForm& snf, int j) { return snf.V(static_cast<std::size_t>(j + W), snf.rank); };
  auto tensor_coord = [&](int a, int b) { return coord(ls, a) * coord(rs, b); };
  const Poly s_plus_1{1, 1};

  std::ostringstream why;
  for (int a = -kSearch; a <= kSearch && !out.ok; ++a) {
    for (int b = -kSearch; b <= kSearch && !out.ok; ++b) {
      // x (s+1) = x T^-1 s
      if (tensor_coord(a, b) * s_plus_1 != tensor_coord(a - 1, b - 1) * Poly::s()) continue;
      Poly g;
      Poly image_of_one;
      bool constant = true;
      for (int j = -2 * W; j <= 2 * W; ++j) {
        if (std::abs(a + j) > W || std::abs(b + j) > W) continue;
        Poly c = tensor_coord(a + j, b + j);
        g = poly_gcd(g, c);
        // x T^j corresponds to 1/(s+1+j), so c (s+1+j) is independent of j.
        Poly one = c * Poly{Rational(1 + j), 1};
        if (image_of_one.is_zero()) {
          image_of_one = one;
        } else if (one != image_of_one) {
          constant = false;
        }
      }
      if (g != Poly(1)) {
        why << "candidate (" << a << ", " << b << ") satisfies the relation but its translates span a proper sublattice; ";
        continue;
      }
      if (!constant) {
        why << "candidate (" << a << ", " << b << ") is not compatible with 1/(s+1+j); ";
        continue;
      }
      out.ok = true;
      out.a = a;
      out.b = b;
      out.generator = shift_generator_name(a) + " ⊗ " + shift_generator_name(b);
    }
  }
  if (!out.ok) why << "no candidate with |a|, |b| <= " << kSearch << " satisfies " << out.relation;
  out.report = why.str();
  return out;
}

ExpSquareResult exp_square_check(int radius) {
  const ShiftOp e = std::get<ShiftOp>(e_module().relations.front());
  return exp_square_search(inversion_twist(e), e, radius);
}

// ---------------------------------------------------------------------------
// Fourier transform on presentations

CyclicPresentation fourier_presentation(const CyclicPresentation& m) {
  if (m.algebra != Algebra::weyl) fail(ErrorCode::mismatch, "fourier_presentation expects a Weyl presentation");
  CyclicPresentation out;
  out.algebra = Algebra::weyl;
  out.rank = m.rank;
  for (const auto& rel : m.relations) {
    WeylOp f = fourier_auto(std::get<WeylOp>(rel));
    if (!f.is_zero()) f = f.scaled(Rational(1) / f.terms().begin()->second);
    out.relations.emplace_back(f);
  }
  return out;
}

CyclicPresentation fourier_B_monodromic(const CyclicPresentation& m) {
  if (m.algebra != Algebra::weyl || m.rank != 1 || m.relations.size() != 1) {
    fail(ErrorCode::unsupported_input, "fourier_B_monodromic expects a cyclic rank-1 Weyl presentation");
  }
  const ShiftOp g = std::get<ShiftOp>(mellin_module(m).relations.front());
  constexpr int kWindow = 4;
  const EquivariantModule wm = window_presentation(g, kWindow);
  const SmithForm snf = diagonal_form(wm.presentation);
  if (snf.rank != wm.generators()) {
    fail(ErrorCode::not_monodromic, "Mellin image with relation " + g.to_string() + " has free rank " +
                                        std::to_string(wm.generators() - snf.rank) + " over k[s] on the window");
  }
  return fourier_presentation(m);
}

}  // namespace mfour
