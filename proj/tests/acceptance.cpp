// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <mfour/checks.hpp>
#include <mfour/error.hpp>
#include <mfour/groupalg.hpp>
#include <mfour/mellin.hpp>
#include <mfour/parse.hpp>
#include <mfour/trace.hpp>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace mfour;

namespace {

// Pinned runtime limits in seconds.
constexpr double kKeythmLimit = 10.0;
constexpr double kMellinSuiteLimit = 60.0;
constexpr double kQuickProfileLimit = 60.0;

struct Result {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail = what;
      ok = false;
    }
  }
};

struct Criterion {
  std::string id;
  std::string title;
  std::optional<double> limit;
  std::function<Result()> run;
};

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool passes(const CheckOutcome& c) { return c.verdict == Verdict::pass; }

std::string fmt(const Rational& r) { return r.get_str(); }

struct Cli {
  int status;
  std::string out;
};

Cli cli(const std::string& args) {
  std::string cmd = std::string(MFOUR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 1 << 14> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int st = pclose(pipe);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

void strip_timings(Json& j) {
  if (j.is_object()) {
    j.erase("timings");
    j.erase("seconds");
    for (auto& [k, v] : j.items()) strip_timings(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timings(v);
  }
}

const std::vector<Rational>& chis() {
  static const std::vector<Rational> c{Rational(0), Rational(1, 2), Rational(1, 3)};
  return c;
}

// Boolean verdicts of the windowed Mellin-side checks at window N (exp-square
// at N - 2, matching its base window 6 against 8).
std::vector<bool> mellin_verdicts(int N) {
  std::vector<bool> v;
  v.push_back(passes(check_mellin_b_embed(N)));
  for (const auto& chi : chis()) {
    v.push_back(passes(check_propDmod1(chi, N, 5)));
    v.push_back(passes(check_propDmod2(chi, N)));
    for (int n = 1; n <= 3; ++n) {
      v.push_back(passes(check_propDmod3(chi, n, N)));
      v.push_back(passes(check_dmodmon(chi, n, N)));
    }
  }
  v.push_back(passes(check_exp_square(N - 2)));
  return v;
}

Result ac1() {
  Result r;
  std::vector<std::pair<int, int>> grid{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}, {5, 2}};
  int n = 0;
  for (auto [q, d] : grid) {
    auto c = check_keythm(q, d);
    r.require(passes(c), "fails at q=" + std::to_string(q) + " d=" + std::to_string(d));
    r.require(c.witness.value("exhaustive", false), "not exhaustive at q=" + std::to_string(q) + " d=" + std::to_string(d));
    n += c.witness.value("functions_tested", 0);
  }
  if (r.ok) r.detail = std::to_string(grid.size()) + " (q,d) pairs, " + std::to_string(n) + " delta functions";
  return r;
}

Result ac2() {
  Result r;
  int dims = 0;
  for (int q : {3, 5})
    for (int d : {1, 2}) {
      auto c = check_CV(q, d);
      r.require(passes(c), "fails at q=" + std::to_string(q) + " d=" + std::to_string(d));
      dims += c.witness.value("subspace_dimension", 0);
    }
  if (r.ok) r.detail = "total subspace dimension " + std::to_string(dims) + ", stable and q^(d+1)-scaled";
  return r;
}

Result ac3() {
  Result r;
  for (int q : {3, 5, 7}) {
    r.require(passes(check_P2B(q)), "P^2 = B fails at q=" + std::to_string(q));
    auto c = check_BL2(q, 1);
    r.require(passes(c) && c.witness.value("exhaustive", false), "BL^2 fails at q=" + std::to_string(q));
  }
  if (r.ok) r.detail = "q in {3,5,7}";
  return r;
}

Result ac4() {
  Result r;
  for (int q : {2, 3, 5, 7}) r.require(passes(check_fbneq(q)), "fails at q=" + std::to_string(q));
  if (r.ok) r.detail = "q in {2,3,5,7}";
  return r;
}

Result ac5() {
  Result r;
  // (a) symbols
  auto b = mellin_module(b_weyl_module());
  auto e = mellin_module(exp_module());
  r.require(std::get<ShiftOp>(b.relations.front()) == parse_shift("(s+1) - Ti*s"), "(a) Mellin(B) relation");
  r.require(std::get<ShiftOp>(e.relations.front()) == parse_shift("1 - Ti*s"), "(a) Mellin(exp) relation");
  // (b) embedding
  bool accepted = true, rejected = false;
  try {
    embed_in_Ks(b_module(), RatFun(Poly(1), Poly({1, 1})), 8);
  } catch (const Error&) {
    accepted = false;
  }
  try {
    embed_in_Ks(b_module(), RatFun(Poly(1)), 8);
  } catch (const Error& err) {
    rejected = err.code() == ErrorCode::not_a_morphism;
  }
  r.require(accepted, "(b) 1 -> 1/(s+1) rejected");
  r.require(rejected, "(b) 1 -> 1 accepted");
  // (c), (d)
  for (const auto& chi : chis()) {
    r.require(passes(check_propDmod1(chi, 8, 5)), "(c) propDmod1 chi=" + fmt(chi));
    r.require(passes(check_propDmod2(chi, 8)), "(c) propDmod2 chi=" + fmt(chi));
    for (int n = 1; n <= 3; ++n) {
      r.require(passes(check_propDmod3(chi, n, 8)), "(c) propDmod3 chi=" + fmt(chi) + " n=" + std::to_string(n));
      r.require(passes(check_dmodmon(chi, n, 8)), "(d) dmodmon chi=" + fmt(chi) + " n=" + std::to_string(n));
    }
  }
  // (e)
  auto es = exp_square_check(6);
  r.require(es.ok, "(e) no generator witness at window 6");
  auto E = parse_shift("1 - Ti*s");
  r.require(!exp_square_search(E, E, 6).ok, "(e) negative control E (x) E succeeded");
  // (f), (g)
  for (int d : {1, 2}) r.require(passes(check_fourier_antipode(d, 0, 1000)), "(f) fourier-antipode rank " + std::to_string(d));
  r.require(passes(check_mon_test(0, 20)), "(g) mon-test");
  if (r.ok) r.detail = "(a)-(g) ok; exp-square witness 1T^" + std::to_string(es.a) + " (x) 1T^" + std::to_string(es.b);
  return r;
}

Result ac6() {
  Result r;
  const int N = 8;
  auto a = mellin_verdicts(N), b = mellin_verdicts(N + 2);
  r.require(a.size() == b.size(), "grid size differs");
  std::size_t differ = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) differ += a[i] != b[i];
  r.require(differ == 0, std::to_string(differ) + " verdicts change between windows 8 and 10");
  if (r.ok) r.detail = std::to_string(a.size()) + " verdicts identical at windows 8 and 10 (exp-square 6 and 8)";
  return r;
}

Result ac7() {
  Result r;
  for (auto [q, n] : {std::pair{5, 4}, {7, 2}, {7, 3}, {7, 6}}) {
    r.require(passes(gauss_suite(q, n)), "fails at q=" + std::to_string(q) + " n=" + std::to_string(n));
    // point count, recomputed here by brute force
    auto [p, ex] = prime_power(q);
    auto F = FiniteField::make(p, ex);
    auto t = t_I0(F, n);
    for (int x = 0; x < q; ++x) {
      long count = 0;
      for (int y = 1; y < q && x; ++y) count += F->pow(y, n) == x;
      r.require(t[static_cast<std::size_t>(x)] == CycScalar(count), "t_I0 point count at q=" + std::to_string(q));
    }
  }
  if (r.ok) r.detail = "(q,n) in {(5,4),(7,2),(7,3),(7,6)}";
  return r;
}

Result ac8() {
  Result r;
  int runs = 0;
  for (int ell : {2, 3})
    for (int rr : {1, 2}) {
      auto tag = [&](const std::string& what, int a, int b = -1) {
        return what + " ell=" + std::to_string(ell) + " r=" + std::to_string(rr) + " " + std::to_string(a) +
               (b >= 0 ? "," + std::to_string(b) : "");
      };
      for (int n = 1; n <= 6; ++n) {
        r.require(passes(augmentation_kernel_check(ell, rr, n)), tag("augmentation", n));
        auto nzd = pro_nzd_check(ell, rr, n);
        r.require(passes(nzd) && nzd.witness.value("negative_control", false), tag("nzd", n));
        runs += 2;
        for (int np = n + 1; np <= 6; ++np) {
          if (np % n) continue;
          r.require(passes(unit_surjectivity_check(ell, rr, n, np)), tag("units", n, np));
          r.require(passes(twisted_tensor_check(ell, rr, np, n)), tag("tensor", np, n));
          runs += 2;
        }
        r.require(passes(twisted_tensor_check(ell, rr, n, n)), tag("tensor", n, n));
        ++runs;
      }
    }
  if (r.ok) r.detail = std::to_string(runs) + " runs, ell in {2,3}, r <= 2, n <= 6";
  return r;
}

Result ac9() {
  Result r;
  for (auto [q, n] : {std::pair{7, 3}, {5, 4}}) {
    CheckParams p;
    p.q = q;
    p.n = n;
    auto rep = run_check(CheckId::lem_mon_shadow, p);
    r.require(rep.verdict == Verdict::pass, "fails at q=" + std::to_string(q) + " n=" + std::to_string(n));
    int eigen = 0;
    for (const auto& c : rep.witness["characters"]) {
      if (!c["in_eigenspace"].get<bool>()) continue;
      ++eigen;
      r.require(c["finite_level_factor"] == std::to_string(q - 1), "finite-level factor is not q - 1");
      r.require(c["pro_limit_factor"] == std::to_string(q), "pro-limit note missing");
    }
    r.require(eigen == std::gcd(n, q - 1), "wrong number of characters with chi^n = 1");
  }
  if (r.ok) r.detail = "factor q-1 at finite level; pro-limit constant q recorded";
  return r;
}

Result ac10() {
  Result r;
  for (const char* check : {"propB3-diagnostic", "gauss-g-diagnostic"})
    for (int q : {3, 5})
      for (int n : {1, 2}) {
        std::string args = std::string("verify ") + check + " --q " + std::to_string(q) + " --n " + std::to_string(n) + " --no-timings";
        auto c = cli(args);
        std::string where = std::string(check) + " q=" + std::to_string(q) + " n=" + std::to_string(n);
        r.require(c.status == 2, where + ": exit " + std::to_string(c.status));
        try {
          auto j = Json::parse(c.out);
          r.require(j["verdict"] == "diagnostic", where + ": verdict");
          r.require(!j["witness"].empty(), where + ": empty scalar report");
        } catch (const std::exception&) {
          r.require(false, where + ": unparsable output");
        }
      }
  if (r.ok) r.detail = "8 runs, exit code 2, scalar reports present";
  return r;
}

Result ac11() {
  Result r;
  std::string outs[2];
  double secs[2];
  int status[2];
  for (int i = 0; i < 2; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    auto c = cli("verify-all --profile quick --seed 0");
    secs[i] = since(t0);
    status[i] = c.status;
    try {
      Json j = Json::parse(c.out);
      strip_timings(j);
      outs[i] = j.dump();
    } catch (const std::exception&) {
      r.require(false, "unparsable output from run " + std::to_string(i + 1));
    }
    r.require(secs[i] < kQuickProfileLimit, "run " + std::to_string(i + 1) + " exceeded the limit");
  }
  r.require(!outs[0].empty() && outs[0] == outs[1], "reports differ between runs");
  std::ostringstream d;
  d << std::fixed << std::setprecision(2) << "runs took " << secs[0] << " s and " << secs[1] << " s; exit " << status[0]
    << "/" << status[1];
  if (r.ok) r.detail = d.str();
  return r;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "key theorem trace identity on delta bases", kKeythmLimit, ac1},
      {"AC2", "C_V shadow: four_B^2 = q^(d+1) on the orbit-sum-zero subspace", std::nullopt, ac2},
      {"AC3", "P^2 = B and BL^2 identities", std::nullopt, ac3},
      {"AC4", "four_B of deltas at 0 and 1", std::nullopt, ac4},
      {"AC5", "Mellin-side suite", kMellinSuiteLimit, ac5},
      {"AC6", "window stability N vs N+2", std::nullopt, ac6},
      {"AC7", "Gauss sums and I^0_n point counts", std::nullopt, ac7},
      {"AC8", "group-algebra suite", std::nullopt, ac8},
      {"AC9", "finite-level monodromic convolution factor", std::nullopt, ac9},
      {"AC10", "diagnostics terminate with exit code 2", std::nullopt, ac10},
      {"AC11", "verify-all quick is deterministic", kQuickProfileLimit, ac11},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Result res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res.ok = false;
      res.detail = std::string("error: ") + e.what();
    }
    double s = since(t0);
    bool in_time = !c.limit || s < *c.limit;
    if (!in_time && res.ok) res.detail = "exceeded time limit";
    bool ok = res.ok && in_time;
    failed += !ok;
    std::ostringstream timing;
    timing << std::fixed << std::setprecision(2) << s << " s";
    if (c.limit) timing << " / limit " << std::setprecision(0) << *c.limit << " s";
    std::cout << std::left << std::setw(5) << c.id << (ok ? "PASS  " : "FAIL  ") << c.title << " [" << timing.str() << "] "
              << res.detail << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
