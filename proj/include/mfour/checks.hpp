#pragma once

#include <mfour/rational.hpp>
#include <mfour/report.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mfour {

enum class CheckId {
  keythm,
  cv_equivalence,
  p2b,
  bl2,
  fbneq,
  gauss_suite,
  gauss_g_diagnostic,
  propB3_diagnostic,
  mon_equivalence,
  lem_mon_shadow,
  mellin_b_embed,
  propDmod1,
  propDmod2,
  propDmod3,
  dmodmon,
  exp_square,
  mon_test,
  eq3_decomp,
  fourier_antipode,
  fb_fl_agree,
  appendix_augmentation,
  appendix_nzd,
  appendix_units,
  appendix_tensor,
};

const std::vector<CheckId>& all_checks();
std::string check_name(CheckId id);
std::optional<CheckId> parse_check_id(const std::string& name);
/// The mathematical statement a check verifies.
std::string check_citation(CheckId id);
/// Engine module the check dispatches to.
std::string check_engine(CheckId id);

/// Unset fields take per-check defaults.
struct CheckParams {
  std::optional<int> q, d, n, window, ell, r, nprime, m;
  std::optional<Rational> chi;
  std::uint64_t seed = 0;
};

struct CheckReport {
  CheckId id = CheckId::keythm;
  Json parameters = Json::object();
  Verdict verdict = Verdict::fail;
  Json witness = Json::object();
  std::optional<int> window;
  double seconds = 0;
  std::string citation;

  Json to_json(bool with_timings = true) const;
};

/// Throws Error on invalid parameters.
CheckReport run_check(CheckId id, const CheckParams& params);

enum class Profile { quick, full };
std::string profile_name(Profile p);
Profile parse_profile(const std::string& name);

/// Parameter grid of a profile, ordered by CheckId then parameters.
std::vector<std::pair<CheckId, CheckParams>> profile_grid(Profile p, std::uint64_t seed);

struct AggregateReport {
  Profile profile = Profile::quick;
  std::uint64_t seed = 0;
  std::vector<CheckReport> reports;
  double seconds = 0;

  /// No report failed (diagnostics do not count against the run).
  bool ok() const;
  Json to_json(bool with_timings = true) const;
};

/// Runs the grid concurrently; the merged order is the grid order.
AggregateReport run_all(Profile p, std::uint64_t seed, unsigned threads = 0);

// Mellin-side and Weyl-side checks, also exercised directly by tests.
CheckOutcome check_mellin_b_embed(int window);
CheckOutcome check_propDmod1(const Rational& chi, int window, int degree_bound);
CheckOutcome check_propDmod2(const Rational& chi, int window);
CheckOutcome check_propDmod3(const Rational& chi, int n, int window);
CheckOutcome check_dmodmon(const Rational& chi, int n, int window);
CheckOutcome check_exp_square(int window);
CheckOutcome check_mon_test(std::uint64_t seed, int cases);
CheckOutcome check_eq3_decomp(const Rational& chi, int n, int window);
CheckOutcome check_fourier_antipode(int rank, std::uint64_t seed, int cases);
CheckOutcome check_fb_fl_agree(const Rational& chi);

}  // namespace mfour
