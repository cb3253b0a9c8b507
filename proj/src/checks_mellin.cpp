#include <mfour/checks.hpp>
#include <mfour/error.hpp>
#include <mfour/mellin.hpp>

#include <random>

namespace mfour {

namespace {

// 1/(s - chi - i) for |i| <= N; for chi = 0 this is the lattice of B.
WindowedLattice orbit_lattice(const Rational& chi_in, int window) {
  const Rational chi = normalize_chi(chi_in);
  if (chi == 0) return embed_in_Ks(b_module(), RatFun(Poly(1), Poly{1, 1}), window);
  std::vector<RatFun> gens;
  for (int i = -window; i <= window; ++i) gens.emplace_back(Poly(1), Poly::linear_power(chi + i, 1));
  return WindowedLattice(chi, window, std::move(gens));
}

Json rational_json(const Rational& r) { return r.get_str(); }

// Rank over k(s) by Gaussian elimination.
std::size_t ratfun_rank(std::vector<std::vector<RatFun>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      RatFun f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] = rows[r][k] - f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Every generator is killed by a nonzero polynomial iff it lies in the
// k(s)-span of the relations.
bool saturation_oracle(const PolyMatrix& pres) {
  std::vector<std::vector<RatFun>> rows;
  for (std::size_t i = 0; i < pres.rows(); ++i) {
    std::vector<RatFun> row;
    for (std::size_t j = 0; j < pres.cols(); ++j) row.emplace_back(pres(i, j));
    rows.push_back(std::move(row));
  }
  const std::size_t base = ratfun_rank(rows);
  for (std::size_t j = 0; j < pres.cols(); ++j) {
    auto extended = rows;
    std::vector<RatFun> e(pres.cols(), RatFun(Poly()));
    e[j] = RatFun(Poly(1));
    extended.push_back(e);
    if (ratfun_rank(extended) != base) return false;
  }
  return true;
}

// Engine output in [lo, hi] without relying on distribution internals.
long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Poly random_poly(std::mt19937_64& rng) {
  if (draw(rng, 0, 3) == 0) return Poly();
  const int deg = static_cast<int>(draw(rng, 0, 2));
  std::vector<Rational> c;
  for (int k = 0; k <= deg; ++k) c.emplace_back(draw(rng, -2, 2));
  return Poly(std::move(c));
}

WeylOp random_weyl(std::mt19937_64& rng, int rank) {
  WeylOp w(rank);
  const int terms = static_cast<int>(draw(rng, 1, 4));
  for (int t = 0; t < terms; ++t) {
    std::vector<int> a(static_cast<std::size_t>(rank)), b(static_cast<std::size_t>(rank));
    for (auto& v : a) v = static_cast<int>(draw(rng, 0, 2));
    for (auto& v : b) v = static_cast<int>(draw(rng, 0, 2));
    Rational c(draw(rng, -5, 5), draw(rng, 1, 3));
    c.canonicalize();
    w = w + WeylOp::monomial(rank, a, b, c);
  }
  return w;
}

}  // namespace

CheckOutcome check_mellin_b_embed(int window) {
  if (window < 1) fail(ErrorCode::invalid_argument, "window must be positive");
  Json w;
  const ShiftOp s = ShiftOp::s(), Ti = ShiftOp::T(-1);
  const ShiftOp b_rel = std::get<ShiftOp>(mellin_module(b_weyl_module()).relations.front());
  const ShiftOp e_rel =
      std::get<ShiftOp>(mellin_module(CyclicPresentation::laurent(LaurentWeylOp::from_weyl(std::get<WeylOp>(exp_module().relations.front()))))
                            .relations.front());
  const bool b_ok = b_rel == (s + 1) - Ti * s;
  const bool e_ok = e_rel == ShiftOp(1) - Ti * s;
  w["mellin_B"] = b_rel.to_string();
  w["mellin_exp"] = e_rel.to_string();

  const RatFun image(Poly(1), Poly{1, 1});
  const WindowedLattice lat = embed_in_Ks(b_module(), image, window);
  bool gens_ok = true;
  for (int i = -window; i <= window; ++i) gens_ok = gens_ok && lat.contains(RatFun(Poly(1), Poly{Rational(i), 1}));
  w["lattice_generators"] = lat.generators().size();
  w["contains_all_1/(s+i)"] = gens_ok;

  const RatFun moved = right_action(image, ShiftOp::T(-1));
  const bool action_ok = moved == RatFun(Poly(1), Poly::s());
  w["image_times_Ti"] = moved.to_string();

  bool scaled_ok = true;
  try {
    embed_in_Ks(b_module(), RatFun(Poly(5), Poly{1, 1}), window);
  } catch (const Error&) {
    scaled_ok = false;
  }
  bool refused = false;
  try {
    embed_in_Ks(b_module(), RatFun(Poly(1)), window);
  } catch (const Error& e) {
    refused = e.code() == ErrorCode::not_a_morphism;
  }
  w["scaled_image_accepted"] = scaled_ok;
  w["image_1_refused"] = refused;
  return CheckOutcome::from_bool(b_ok && e_ok && gens_ok && action_ok && scaled_ok && refused, w);
}

CheckOutcome check_propDmod1(const Rational& chi, int window, int degree_bound) {
  const WindowedLattice lat = orbit_lattice(chi, window);
  const HomVanishing h = hom_to_free_vanishes(lat, degree_bound);
  const HomVanishing control = hom_to_free_vanishes(WindowedLattice(normalize_chi(chi), window, {RatFun(Poly(1))}), degree_bound);
  Json w;
  w["chi"] = rational_json(normalize_chi(chi));
  w["degree_bound"] = degree_bound;
  w["forced_degree"] = h.forced_degree;
  w["vanishes"] = h.vanishes;
  w["control_free_lattice_vanishes"] = control.vanishes;
  return CheckOutcome::from_bool(h.vanishes && !control.vanishes, w);
}

CheckOutcome check_propDmod2(const Rational& chi_in, int window) {
  const Rational chi = normalize_chi(chi_in);
  const WindowedLattice lat = orbit_lattice(chi, window);
  std::vector<Rational> points{chi + Rational(1, 2), chi + Rational(-3, 2), chi + Rational(1, 3)};
  const bool ok = localization_identity_check(lat, points);
  const bool control = localization_identity_check(WindowedLattice(chi, window, {RatFun(Poly(1))}), points);
  Json w;
  w["chi"] = rational_json(chi);
  Json pts = Json::array();
  for (const auto& p : points) pts.push_back(rational_json(p));
  w["test_points"] = pts;
  Json fibers = Json::array();
  for (const auto& p : points) {
    Fiber f = fiber(lat, p, 1);
    fibers.push_back(Json{{"point", rational_json(p)}, {"free_rank_1", f.is_free(1)}});
  }
  w["fibers"] = fibers;
  w["invertible_off_orbit"] = ok;
  w["control_free_lattice"] = control;
  return CheckOutcome::from_bool(ok && control, w);
}

CheckOutcome check_propDmod3(const Rational& chi, int n, int window) {
  const FreenessWitness fw = skyscraper_freeness_check(SkyscraperKind::B, chi, n, window);
  Json w;
  w["chi"] = rational_json(fw.family.chi);
  w["free"] = fw.free;
  Json gens = Json::array();
  for (const auto& f : fw.family.fibers)
    gens.push_back(Json{{"point", rational_json(f.point)}, {"generator", f.generators.empty() ? "" : f.generators.front()}});
  w["generators"] = gens;
  Json units = Json::array();
  for (const auto& u : fw.family.shift_units) units.push_back(rational_json(u));
  w["shift_units"] = units;
  if (!fw.counterexample.empty()) w["counterexample"] = fw.counterexample;
  return CheckOutcome::from_bool(fw.free, w);
}

CheckOutcome check_dmodmon(const Rational& chi, int n, int window) {
  const MonodromizationResult r = monodromization_check(chi, n, window);
  const MonodromizationResult c = monodromization_control(chi, n, window);
  Json w;
  w["chi"] = rational_json(r.target.chi);
  Json bs = Json::array(), es = Json::array();
  for (const auto& v : r.b_scalars) bs.push_back(rational_json(v));
  for (const auto& v : r.e_scalars) es.push_back(rational_json(v));
  w["b_scalars"] = bs;
  w["e_scalars"] = es;
  w["ok"] = r.ok;
  w["control_free_factor"] = c.ok;
  if (!r.report.empty()) w["report"] = r.report;
  return CheckOutcome::from_bool(r.ok && c.ok, w);
}

CheckOutcome check_exp_square(int window) {
  const ExpSquareResult r = exp_square_check(window);
  const ShiftOp e = std::get<ShiftOp>(e_module().relations.front());
  const ExpSquareResult control = exp_square_search(e, e, window);
  Json w;
  w["generator"] = r.generator;
  w["relation"] = r.relation;
  w["fiber_ranks"] = r.fiber_ranks;
  w["found"] = r.ok;
  w["control_E_tensor_E_found"] = control.ok;
  if (!r.ok) w["report"] = r.report;
  return CheckOutcome::from_bool(r.ok && !control.ok, w);
}

CheckOutcome check_mon_test(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed ^ 0x6d6f6e2d74657374ULL);
  bool ok = true;
  Json rows = Json::array();
  int torsion = 0;
  for (int c = 0; c < cases; ++c) {
    const auto gens = static_cast<std::size_t>(draw(rng, 1, 2));
    const auto rels = static_cast<std::size_t>(draw(rng, 1, 3));
    PolyMatrix p(rels, gens);
    for (std::size_t i = 0; i < rels; ++i)
      for (std::size_t j = 0; j < gens; ++j) p(i, j) = random_poly(rng);
    EquivariantModule m;
    m.presentation = p;
    const bool engine = monodromic_test(m);
    const bool oracle = saturation_oracle(p);
    torsion += engine ? 1 : 0;
    if (engine != oracle) {
      ok = false;
      rows.push_back(Json{{"case", c}, {"engine", engine}, {"oracle", oracle}});
    }
  }
  // Fixed cases.
  EquivariantModule skyscraper;
  skyscraper.presentation = PolyMatrix{{Poly::s()}};
  const bool fixed = monodromic_test(skyscraper) && !monodromic_test(free_module(1)) &&
                     monodromic_test(to_equivariant(i0_module(0, 1, 3)));
  Json w;
  w["cases"] = cases;
  w["torsion_cases"] = torsion;
  w["disagreements"] = rows;
  w["fixed_cases"] = fixed;
  return CheckOutcome::from_bool(ok && fixed, w);
}

CheckOutcome check_eq3_decomp(const Rational& chi_in, int n, int window) {
  const Rational chi = normalize_chi(chi_in);
  const SkyscraperFamily fam = i0_module(chi, n, window);
  const EquivariantModule eq = to_equivariant(fam);
  bool ok = true;
  int length = 0;
  std::vector<Rational> points;
  for (int i = -window; i <= window; ++i) points.push_back(chi + i);
  const std::vector<Fiber> via_smith = fibers(eq, points, n);
  for (int i = -window; i <= window; ++i) {
    const Fiber& f = fam.at(i);
    const Fiber& g = via_smith[static_cast<std::size_t>(i + window)];
    length += f.length();
    if (f.exponents != std::vector<int>{n} || g.exponents != f.exponents) ok = false;
  }
  const bool off_orbit_zero = fiber(fam, chi + Rational(1, 2)).is_zero();
  const bool torsion = monodromic_test(eq);
  Json w;
  w["chi"] = rational_json(chi);
  w["fibers"] = 2 * window + 1;
  w["total_length"] = length;
  w["expected_length"] = (2 * window + 1) * n;
  w["off_orbit_fiber_zero"] = off_orbit_zero;
  w["torsion"] = torsion;
  return CheckOutcome::from_bool(ok && off_orbit_zero && torsion && length == (2 * window + 1) * n, w);
}

CheckOutcome check_fourier_antipode(int rank, std::uint64_t seed, int cases) {
  if (rank < 1 || rank > 4) fail(ErrorCode::invalid_argument, "rank must be in 1..4");
  std::mt19937_64 rng(seed ^ 0x666f757269657200ULL);
  int failures = 0, hom_failures = 0;
  std::string first_failure;
  for (int c = 0; c < cases; ++c) {
    const WeylOp a = random_weyl(rng, rank);
    if (!(fourier_auto(fourier_auto(a)) == antipode(a))) {
      if (failures++ == 0) first_failure = a.to_string();
    }
    if (c % 10 == 0) {
      const WeylOp b = random_weyl(rng, rank);
      if (!(fourier_auto(a * b) == fourier_auto(a) * fourier_auto(b))) ++hom_failures;
    }
  }
  bool relation_ok = true;
  for (int i = 0; i < rank; ++i) {
    const WeylOp x = WeylOp::x(rank, i), d = WeylOp::d(rank, i);
    relation_ok = relation_ok && fourier_auto(d * x - x * d - WeylOp::constant(rank, 1)).is_zero();
  }
  bool presentations_ok = true;
  if (rank == 1) {
    const auto delta = fourier_presentation(CyclicPresentation::weyl(WeylOp::x(1)));
    const auto expo = fourier_presentation(exp_module());
    presentations_ok = std::get<WeylOp>(delta.relations.front()) == WeylOp::d(1) &&
                       std::get<WeylOp>(expo.relations.front()) == WeylOp::constant(1, 1) - WeylOp::x(1);
  }
  Json w;
  w["rank"] = rank;
  w["cases"] = cases;
  w["antipode_failures"] = failures;
  if (failures) w["first_failure"] = first_failure;
  w["ring_map_failures"] = hom_failures;
  w["defining_relation_preserved"] = relation_ok;
  w["presentation_examples"] = presentations_ok;
  return CheckOutcome::from_bool(failures == 0 && hom_failures == 0 && relation_ok && presentations_ok, w);
}

CheckOutcome check_fb_fl_agree(const Rational& chi) {
  const WeylOp x = WeylOp::x(1), d = WeylOp::d(1);
  const CyclicPresentation eigen = CyclicPresentation::weyl(x * d - WeylOp::constant(1, chi));
  const CyclicPresentation fb = fourier_B_monodromic(eigen);
  const CyclicPresentation fl = fourier_presentation(eigen);
  bool refused = false;
  std::string message;
  try {
    fourier_B_monodromic(CyclicPresentation::weyl(x - WeylOp::constant(1, 1)));
  } catch (const Error& e) {
    refused = e.code() == ErrorCode::not_monodromic;
    message = e.what();
  }
  Json w;
  w["input"] = eigen.to_string();
  w["four_B"] = fb.to_string();
  w["four_L"] = fl.to_string();
  w["non_monodromic_refused"] = refused;
  w["refusal"] = message;
  return CheckOutcome::from_bool(fb.to_string() == fl.to_string() && refused, w);
}

}  // namespace mfour
