#include <mfour/checks.hpp>
#include <mfour/error.hpp>
#include <mfour/groupalg.hpp>
#include <mfour/trace.hpp>

#include <array>
#include <atomic>
#include <chrono>
#include <thread>

namespace mfour {

namespace {

struct CheckInfo {
  CheckId id;
  const char* name;
  const char* engine;
  const char* citation;
};

constexpr std::array<CheckInfo, 24> kChecks{{
    {CheckId::keythm, "keythm", "trace",
     "Four_B(Four_B(M)) = j^*B * M(-d)[1]; on trace functions four_B(four_B(f)) = -q^d (t_{j^*B} * f)"},
    {CheckId::cv_equivalence, "cv-equivalence", "trace",
     "Four_B o Four_B = (-d-1) on C_V; four_B^2 = q^(d+1) id on functions whose sums over G_m-orbits vanish"},
    {CheckId::p2b, "p2b", "trace", "iota^* j^* L_psi * L_psi = B[-1]; sum_{l != 0} psi(-1/l) psi(x/l) = -t_B(x)"},
    {CheckId::bl2, "bl2", "trace", "Four_B = (iota^* j^* L_psi * Four_psi)[1] on trace functions"},
    {CheckId::fbneq, "fbneq", "trace", "Four_B(0_! R) = R[1] and Four_B(1_! R) = B[1] on trace functions"},
    {CheckId::gauss_suite, "gauss-suite", "trace",
     "g(chi, psi) g(chi^-1, psi) chi(-1) = q for nontrivial chi with chi^n = 1; t_{I^0_n}(x) = #{y : y^n = x}"},
    {CheckId::gauss_g_diagnostic, "gauss-g-diagnostic", "trace", "iota^* G * G = I^1[-2]: measured trace scalars"},
    {CheckId::propB3_diagnostic, "propB3-diagnostic", "trace", "I^0_n * j^*B against I^1(-1)[-2]: measured trace scalars"},
    {CheckId::mon_equivalence, "mon-equivalence", "trace", "Four_B is an equivalence on monodromic objects; four_B is invertible on monodromic functions"},
    {CheckId::lem_mon_shadow, "lem-mon-shadow", "trace",
     "I^0_n * M = M for chi-eigen M with chi^n = 1; finite-level trace factor q - 1, zero off the eigenspace"},
    {CheckId::mellin_b_embed, "mellin-b-embed", "mellin",
     "Mellin(B) = D/((s+1) - T^-1 s)D, Mellin(exp) = D/(1 - T^-1 s)D, and 1 -> 1/(s+1) embeds B into k(s)"},
    {CheckId::propDmod1, "propDmod1", "mellin", "Hom(B', k[s]) = 0"},
    {CheckId::propDmod2, "propDmod2", "mellin", "O(A^1 - (chi + Z)) (x)_{k[s]} B' = O(A^1 - (chi + Z))"},
    {CheckId::propDmod3, "propDmod3", "mellin",
     "B' (x)_{k[s]} k[s]/(s-chi-i)^n is free of rank one with generator 1/(s-i) (x) 1"},
    {CheckId::dmodmon, "dmodmon", "mellin", "Mellin(I^{0,n}_chi) (x) B = Mellin(I^{0,n}_chi) = Mellin(I^{0,n}_chi) (x) E"},
    {CheckId::exp_square, "exp-square", "mellin",
     "iota^* j^* L * L = B via Mellin(L * K) = Mellin(L) (x)_{k[s]} Mellin(K): iota^*E (x)_{k[s]} E = B"},
    {CheckId::mon_test, "mon-test", "mellin", "a module is monodromic iff its Mellin image is k[s]-torsion"},
    {CheckId::eq3_decomp, "eq3-decomp", "mellin", "A_{chi,n}/k[s] = (+)_i k[s]/(s-chi-i)^n"},
    {CheckId::fourier_antipode, "fourier-antipode", "ore", "x_i -> -d_i, d_i -> x_i is an automorphism whose square is the antipode"},
    {CheckId::fb_fl_agree, "fb-fl-agree", "mellin", "Four_B = Four_L on monodromic modules"},
    {CheckId::appendix_augmentation, "appendix-augmentation", "groupalg", "ker(A^0_n -> R) = (t - 1)"},
    {CheckId::appendix_nzd, "appendix-nzd", "groupalg", "t - 1 is a non-zero-divisor of lim_n A^0_n"},
    {CheckId::appendix_units, "appendix-units", "groupalg", "(A^0_{n'})^x -> (A^0_n)^x is surjective for n | n'"},
    {CheckId::appendix_tensor, "appendix-tensor", "groupalg",
     "A^i_m (x) A^j_n = A^{i+j}_n for n | m, with bookkeeping (-1)[-2] for I^i * I^j"},
}};

const CheckInfo& info(CheckId id) {
  for (const auto& c : kChecks)
    if (c.id == id) return c;
  fail(ErrorCode::invalid_argument, "unknown check");
}

int need_positive(const char* name, int v) {
  if (v < 1) fail(ErrorCode::invalid_argument, std::string(name) + " must be positive");
  return v;
}

// Resolved parameters, written in a fixed order.
struct Resolved {
  Json json = Json::object();
  std::optional<int> window;
};

CheckParams with(CheckParams p, std::initializer_list<std::pair<const char*, int>> values) {
  for (const auto& [k, v] : values) {
    std::string key = k;
    if (key == "q") p.q = v;
    else if (key == "d") p.d = v;
    else if (key == "n") p.n = v;
    else if (key == "window") p.window = v;
    else if (key == "ell") p.ell = v;
    else if (key == "r") p.r = v;
    else if (key == "nprime") p.nprime = v;
    else if (key == "m") p.m = v;
  }
  return p;
}

CheckOutcome dispatch(CheckId id, const CheckParams& p, Resolved& res) {
  auto get = [&](const char* name, const std::optional<int>& v, int dflt) {
    int x = v.value_or(dflt);
    res.json[name] = x;
    return x;
  };
  auto get_chi = [&](const Rational& dflt) {
    Rational c = p.chi.value_or(dflt);
    res.json["chi"] = c.get_str();
    return c;
  };
  auto get_window = [&](int dflt) {
    int w = need_positive("window", get("window", p.window, dflt));
    res.window = w;
    return w;
  };
  auto seed = [&] {
    res.json["seed"] = p.seed;
    return p.seed;
  };

  switch (id) {
    case CheckId::keythm: {
      int q = get("q", p.q, 3), d = get("d", p.d, 1);
      return check_keythm(q, d, 8, seed());
    }
    case CheckId::cv_equivalence: {
      int q = get("q", p.q, 3), d = get("d", p.d, 1);
      return check_CV(q, d);
    }
    case CheckId::p2b: return check_P2B(get("q", p.q, 5));
    case CheckId::bl2: {
      int q = get("q", p.q, 5), d = get("d", p.d, 1);
      return check_BL2(q, d, 8, seed());
    }
    case CheckId::fbneq: return check_fbneq(get("q", p.q, 5));
    case CheckId::gauss_suite: {
      int q = get("q", p.q, 5), n = get("n", p.n, 4);
      return gauss_suite(q, n);
    }
    case CheckId::gauss_g_diagnostic: {
      int q = get("q", p.q, 5), n = get("n", p.n, 2);
      return gauss_g_diagnostic(q, n);
    }
    case CheckId::propB3_diagnostic: {
      int q = get("q", p.q, 3), n = get("n", p.n, 1);
      return propB3_diagnostic(q, n);
    }
    case CheckId::mon_equivalence: {
      int q = get("q", p.q, 3), d = get("d", p.d, 1), n = get("n", p.n, 2);
      return check_mon_equivalence(q, d, n);
    }
    case CheckId::lem_mon_shadow: {
      int q = get("q", p.q, 7), n = get("n", p.n, 3);
      // Every character: factor q - 1 on the eigenspace, 0 elsewhere.
      bool ok = true;
      Json per = Json::array();
      for (int k = 0; k < q - 1; ++k) {
        CheckOutcome o = check_lem_mon_shadow(q, n, k);
        ok = ok && o.verdict == Verdict::pass;
        o.witness["chi_index"] = k;
        per.push_back(o.witness);
      }
      return CheckOutcome::from_bool(ok, Json{{"characters", per}});
    }
    case CheckId::mellin_b_embed: return check_mellin_b_embed(get_window(10));
    case CheckId::propDmod1: {
      Rational chi = get_chi(0);
      int w = get_window(8);
      res.json["degree_bound"] = 5;
      return check_propDmod1(chi, w, 5);
    }
    case CheckId::propDmod2: {
      Rational chi = get_chi(0);
      return check_propDmod2(chi, get_window(8));
    }
    case CheckId::propDmod3: {
      Rational chi = get_chi(0);
      int n = need_positive("n", get("n", p.n, 1));
      return check_propDmod3(chi, n, get_window(8));
    }
    case CheckId::dmodmon: {
      Rational chi = get_chi(0);
      int n = need_positive("n", get("n", p.n, 1));
      return check_dmodmon(chi, n, get_window(8));
    }
    case CheckId::exp_square: return check_exp_square(get_window(6));
    case CheckId::mon_test: {
      std::uint64_t s = seed();
      res.json["cases"] = 20;
      return check_mon_test(s, 20);
    }
    case CheckId::eq3_decomp: {
      Rational chi = get_chi(0);
      int n = need_positive("n", get("n", p.n, 2));
      return check_eq3_decomp(chi, n, get_window(8));
    }
    case CheckId::fourier_antipode: {
      int d = get("d", p.d, 1);
      std::uint64_t s = seed();
      res.json["cases"] = 1000;
      return check_fourier_antipode(d, s, 1000);
    }
    case CheckId::fb_fl_agree: return check_fb_fl_agree(get_chi(Rational(1, 2)));
    case CheckId::appendix_augmentation: {
      int ell = get("ell", p.ell, 2), r = get("r", p.r, 2), n = get("n", p.n, 3);
      return augmentation_kernel_check(ell, r, n);
    }
    case CheckId::appendix_nzd: {
      int ell = get("ell", p.ell, 2), r = get("r", p.r, 2), n = get("n", p.n, 3);
      return pro_nzd_check(ell, r, n);
    }
    case CheckId::appendix_units: {
      int ell = get("ell", p.ell, 2), r = get("r", p.r, 1), n = get("n", p.n, 2), np = get("nprime", p.nprime, 4);
      return unit_surjectivity_check(ell, r, n, np);
    }
    case CheckId::appendix_tensor: {
      int ell = get("ell", p.ell, 2), r = get("r", p.r, 1), m = get("m", p.m, 6), n = get("n", p.n, 3);
      return twisted_tensor_check(ell, r, m, n);
    }
  }
  fail(ErrorCode::invalid_argument, "unknown check");
}

Json given_params(const CheckParams& p) {
  Json j = Json::object();
  auto put = [&j](const char* k, const std::optional<int>& v) {
    if (v) j[k] = *v;
  };
  put("q", p.q);
  put("d", p.d);
  put("n", p.n);
  put("window", p.window);
  put("ell", p.ell);
  put("r", p.r);
  put("nprime", p.nprime);
  put("m", p.m);
  if (p.chi) j["chi"] = p.chi->get_str();
  j["seed"] = p.seed;
  return j;
}

}  // namespace

const std::vector<CheckId>& all_checks() {
  static const std::vector<CheckId> ids = [] {
    std::vector<CheckId> v;
    for (const auto& c : kChecks) v.push_back(c.id);
    return v;
  }();
  return ids;
}

std::string check_name(CheckId id) { return info(id).name; }
std::string check_citation(CheckId id) { return info(id).citation; }
std::string check_engine(CheckId id) { return info(id).engine; }

std::optional<CheckId> parse_check_id(const std::string& name) {
  for (const auto& c : kChecks)
    if (name == c.name) return c.id;
  return std::nullopt;
}

Json CheckReport::to_json(bool with_timings) const {
  Json j;
  j["check"] = check_name(id);
  j["parameters"] = parameters;
  j["verdict"] = verdict_name(verdict);
  j["witness"] = witness;
  j["window"] = window ? Json(*window) : Json(nullptr);
  if (with_timings) j["timings"] = Json{{"seconds", seconds}};
  j["citation"] = citation;
  return j;
}

CheckReport run_check(CheckId id, const CheckParams& params) {
  CheckReport rep;
  rep.id = id;
  rep.citation = check_citation(id);
  Resolved res;
  auto t0 = std::chrono::steady_clock::now();
  CheckOutcome out = dispatch(id, params, res);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.parameters = std::move(res.json);
  rep.window = res.window;
  rep.verdict = out.verdict;
  rep.witness = std::move(out.witness);
  return rep;
}

std::string profile_name(Profile p) { return p == Profile::quick ? "quick" : "full"; }

Profile parse_profile(const std::string& name) {
  if (name == "quick") return Profile::quick;
  if (name == "full") return Profile::full;
  fail(ErrorCode::invalid_argument, "unknown profile '" + name + "'");
}

std::vector<std::pair<CheckId, CheckParams>> profile_grid(Profile prof, std::uint64_t seed) {
  const bool full = prof == Profile::full;
  std::vector<std::pair<CheckId, CheckParams>> g;
  CheckParams base;
  base.seed = seed;
  auto add = [&](CheckId id, CheckParams p) { g.emplace_back(id, std::move(p)); };
  auto chi_params = [&](const Rational& chi) {
    CheckParams p = base;
    p.chi = chi;
    return p;
  };

  std::vector<std::pair<int, int>> keythm{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}, {5, 2}};
  if (full) keythm.insert(keythm.end(), {{11, 1}, {7, 2}, {2, 3}, {3, 3}});
  for (auto [q, d] : keythm) add(CheckId::keythm, with(base, {{"q", q}, {"d", d}}));

  std::vector<int> cv_q{3, 5};
  if (full) cv_q.push_back(7);
  for (int q : cv_q)
    for (int d : {1, 2}) add(CheckId::cv_equivalence, with(base, {{"q", q}, {"d", d}}));

  std::vector<int> primes{3, 5, 7};
  if (full) primes.push_back(11);
  for (int q : primes) add(CheckId::p2b, with(base, {{"q", q}}));
  for (int q : primes) add(CheckId::bl2, with(base, {{"q", q}, {"d", 1}}));
  if (full) add(CheckId::bl2, with(base, {{"q", 3}, {"d", 2}}));

  std::vector<int> fb{2, 3, 5, 7};
  if (full) fb.insert(fb.end(), {4, 9, 11});
  for (int q : fb) add(CheckId::fbneq, with(base, {{"q", q}}));

  std::vector<std::pair<int, int>> gauss{{5, 4}, {7, 2}, {7, 3}, {7, 6}};
  if (full) gauss.insert(gauss.end(), {{9, 4}, {11, 5}, {11, 10}});
  for (auto [q, n] : gauss) add(CheckId::gauss_suite, with(base, {{"q", q}, {"n", n}}));

  std::vector<int> diag_q{3, 5};
  if (full) diag_q.push_back(7);
  for (int q : diag_q)
    for (int n : {1, 2}) add(CheckId::gauss_g_diagnostic, with(base, {{"q", q}, {"n", n}}));
  for (int q : diag_q)
    for (int n : {1, 2}) add(CheckId::propB3_diagnostic, with(base, {{"q", q}, {"n", n}}));

  std::vector<std::array<int, 3>> moneq{{3, 1, 2}, {5, 1, 4}, {3, 2, 2}};
  if (full) moneq.push_back({7, 1, 3});
  for (auto [q, d, n] : moneq) add(CheckId::mon_equivalence, with(base, {{"q", q}, {"d", d}, {"n", n}}));

  std::vector<std::pair<int, int>> lem{{7, 3}, {5, 4}};
  if (full) lem.insert(lem.end(), {{11, 5}, {13, 4}});
  for (auto [q, n] : lem) add(CheckId::lem_mon_shadow, with(base, {{"q", q}, {"n", n}}));

  const int window = full ? 12 : 8;
  add(CheckId::mellin_b_embed, with(base, {{"window", full ? 12 : 10}}));
  const std::vector<Rational> chis{Rational(0), Rational(1, 2), Rational(1, 3)};
  for (const auto& chi : chis) add(CheckId::propDmod1, with(chi_params(chi), {{"window", window}}));
  for (const auto& chi : chis) add(CheckId::propDmod2, with(chi_params(chi), {{"window", window}}));
  for (const auto& chi : chis)
    for (int n : {1, 2, 3}) add(CheckId::propDmod3, with(chi_params(chi), {{"n", n}, {"window", window}}));
  for (const auto& chi : chis)
    for (int n : {1, 2, 3}) add(CheckId::dmodmon, with(chi_params(chi), {{"n", n}, {"window", window}}));
  add(CheckId::exp_square, with(base, {{"window", 6}}));
  if (full) add(CheckId::exp_square, with(base, {{"window", 10}}));
  add(CheckId::mon_test, base);
  for (const auto& chi : chis)
    for (int n : {1, 2, 3}) add(CheckId::eq3_decomp, with(chi_params(chi), {{"n", n}, {"window", window}}));
  for (int d : {1, 2}) add(CheckId::fourier_antipode, with(base, {{"d", d}}));
  if (full) add(CheckId::fourier_antipode, with(base, {{"d", 3}}));
  for (const auto& chi : chis) add(CheckId::fb_fl_agree, chi_params(chi));

  for (int ell : {2, 3})
    for (int r : {1, 2})
      for (int n = 1; n <= 6; ++n) add(CheckId::appendix_augmentation, with(base, {{"ell", ell}, {"r", r}, {"n", n}}));
  for (int ell : {2, 3})
    for (int r : {1, 2})
      for (int n = 1; n <= 6; ++n) add(CheckId::appendix_nzd, with(base, {{"ell", ell}, {"r", r}, {"n", n}}));
  std::vector<std::pair<int, int>> unit_levels{{1, 2}, {2, 4}, {3, 6}, {2, 6}};
  if (full) unit_levels.insert(unit_levels.end(), {{1, 5}, {1, 6}, {3, 3}});
  for (int ell : {2, 3})
    for (int r : {1, 2})
      for (auto [n, np] : unit_levels)
        add(CheckId::appendix_units, with(base, {{"ell", ell}, {"r", r}, {"n", n}, {"nprime", np}}));
  std::vector<std::pair<int, int>> tensor_levels{{6, 3}, {4, 2}, {6, 6}, {6, 1}};
  for (int ell : {2, 3})
    for (int r : {1, 2})
      for (auto [m, n] : tensor_levels) add(CheckId::appendix_tensor, with(base, {{"ell", ell}, {"r", r}, {"m", m}, {"n", n}}));
  return g;
}

bool AggregateReport::ok() const {
  for (const auto& r : reports)
    if (r.verdict == Verdict::fail) return false;
  return true;
}

Json AggregateReport::to_json(bool with_timings) const {
  int pass = 0, failed = 0, diag = 0;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::pass) ++pass;
    else if (r.verdict == Verdict::fail) ++failed;
    else ++diag;
  }
  Json j;
  j["profile"] = profile_name(profile);
  j["seed"] = seed;
  j["summary"] = Json{{"total", reports.size()}, {"pass", pass}, {"fail", failed}, {"diagnostic", diag}};
  j["verdict"] = ok() ? "pass" : "fail";
  if (with_timings) j["timings"] = Json{{"seconds", seconds}};
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(r.to_json(with_timings));
  j["reports"] = arr;
  return j;
}

AggregateReport run_all(Profile p, std::uint64_t seed, unsigned threads) {
  const auto grid = profile_grid(p, seed);
  AggregateReport agg;
  agg.profile = p;
  agg.seed = seed;
  agg.reports.resize(grid.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.size()));

  auto t0 = std::chrono::steady_clock::now();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      const auto& [id, params] = grid[i];
      try {
        agg.reports[i] = run_check(id, params);
      } catch (const Error& e) {
        CheckReport r;
        r.id = id;
        r.citation = check_citation(id);
        r.parameters = given_params(params);
        r.window = params.window;
        r.verdict = Verdict::fail;
        r.witness = Json{{"error", error_code_name(e.code())}, {"message", e.what()}};
        agg.reports[i] = std::move(r);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  agg.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return agg;
}

}  // namespace mfour
