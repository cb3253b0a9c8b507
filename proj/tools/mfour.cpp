// Command-line front end over the C API.

#include <mfour/mfour.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

using Json = nlohmann::ordered_json;

constexpr int kErrorExit = 3;

struct OpDeleter {
  void operator()(mfour_operator* p) const { mfour_operator_free(p); }
};
using OpPtr = std::unique_ptr<mfour_operator, OpDeleter>;

struct Failure {
  mfour_status status;
  std::string message;
};

void check(mfour_status st) {
  if (st != MFOUR_OK) throw Failure{st, mfour_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  mfour_string_free(s);
  return out;
}

OpPtr parse(const std::string& text, const std::string& algebra, int rank) {
  mfour_operator* op = nullptr;
  check(mfour_operator_parse(text.c_str(), algebra.c_str(), rank, &op));
  return OpPtr(op);
}

std::string str(const mfour_operator* op) {
  char* s = nullptr;
  check(mfour_operator_to_string(op, &s));
  return take(s);
}

void emit(const Json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; }

std::string compact_params(const Json& p) {
  std::string out;
  for (const auto& [k, v] : p.items()) {
    if (!out.empty()) out += " ";
    out += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  return out;
}

void print_report_row(const Json& r) {
  std::ostringstream secs;
  if (r.contains("timings")) secs << std::fixed << std::setprecision(3) << r["timings"]["seconds"].get<double>() << "s";
  std::cout << std::left << std::setw(24) << r["check"].get<std::string>() << std::setw(11) << r["verdict"].get<std::string>()
            << std::setw(10) << secs.str() << compact_params(r["parameters"]) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact operator algebra, Mellin transforms and trace-function checks"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Human-readable output instead of JSON");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Normal form, optionally modulo a right ideal");
  std::string algebra = "shift", expr, modulo;
  int rank = 1;
  reduce->add_option("--algebra", algebra, "shift | weyl | laurent-weyl")
      ->check(CLI::IsMember({"shift", "weyl", "laurent-weyl"}));
  reduce->add_option("--rank", rank, "Weyl rank")->check(CLI::PositiveNumber);
  reduce->add_option("--modulo", modulo, "Relation generating the right ideal");
  reduce->add_option("EXPR", expr, "Operator expression")->required();

  // mellin
  auto* mellin = app.add_subcommand("mellin", "Mellin transform x -> T, x*dx -> s");
  bool inverse = false;
  std::string mellin_expr;
  mellin->add_flag("--inverse", inverse, "Shift operator back to a differential operator");
  mellin->add_option("EXPR", mellin_expr, "Operator in x, xi, dx (or s, T, Ti with --inverse)")->required();

  // fourier
  auto* fourier = app.add_subcommand("fourier", "Fourier automorphism x_i -> -d_i, d_i -> x_i");
  int fourier_rank = 1;
  std::string fourier_expr;
  fourier->add_option("--rank", fourier_rank, "Weyl rank")->check(CLI::PositiveNumber);
  fourier->add_option("EXPR", fourier_expr, "Weyl operator")->required();

  // trace
  auto* trace = app.add_subcommand("trace", "Trace function of a named object on F_q");
  int trace_q = 0;
  std::string object;
  trace->add_option("--q", trace_q, "Field size")->required();
  trace->add_option("--object", object, "B | I0:n | psi")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Run one named check");
  std::string check_id;
  std::optional<int> q, d, n, window, ell, r, nprime, m;
  std::string chi;
  std::uint64_t seed = 0;
  bool no_timings = false;
  verify->add_option("CHECK", check_id, "Check name (see `checks`)")->required();
  verify->add_option("--q", q);
  verify->add_option("--d", d);
  verify->add_option("--chi", chi, "Rational orbit base point, e.g. 1/2");
  verify->add_option("--n", n);
  verify->add_option("--window", window);
  verify->add_option("--ell", ell);
  verify->add_option("--r", r);
  verify->add_option("--nprime", nprime);
  verify->add_option("--m", m, "Source level (appendix-tensor)");
  verify->add_option("--seed", seed);
  verify->add_flag("--no-timings", no_timings, "Omit wall times");

  // verify-all
  auto* verify_all = app.add_subcommand("verify-all", "Run every check over a profile grid");
  std::string profile = "quick";
  std::uint64_t all_seed = 0;
  unsigned threads = 0;
  bool all_no_timings = false;
  verify_all->add_option("--profile", profile, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  verify_all->add_option("--seed", all_seed);
  verify_all->add_option("--threads", threads, "0 = hardware concurrency");
  verify_all->add_flag("--no-timings", all_no_timings, "Omit wall times");

  auto* checks = app.add_subcommand("checks", "List check names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*reduce) {
      OpPtr e = parse(expr, algebra, rank);
      Json out{{"algebra", algebra}, {"rank", rank}, {"input", expr}, {"normal_form", str(e.get())}};
      if (!modulo.empty()) {
        OpPtr rel = parse(modulo, algebra, rank);
        mfour_operator* rem = nullptr;
        check(mfour_reduce(e.get(), rel.get(), &rem));
        OpPtr remainder(rem);
        out["relation"] = str(rel.get());
        out["remainder"] = str(remainder.get());
      }
      if (pretty) {
        std::cout << "normal form: " << out["normal_form"].get<std::string>() << "\n";
        if (out.contains("remainder"))
          std::cout << "modulo " << out["relation"].get<std::string>() << ": " << out["remainder"].get<std::string>() << "\n";
      } else {
        emit(out, false);
      }
      return 0;
    }
    if (*mellin) {
      OpPtr e = parse(mellin_expr, inverse ? "shift" : "laurent-weyl", 1);
      mfour_operator* res = nullptr;
      check(inverse ? mfour_inverse_mellin(e.get(), &res) : mfour_mellin(e.get(), &res));
      OpPtr result(res);
      Json out{{"input", str(e.get())}, {inverse ? "inverse_mellin" : "mellin", str(result.get())}};
      if (pretty) std::cout << str(e.get()) << "  ->  " << str(result.get()) << "\n";
      else emit(out, false);
      return 0;
    }
    if (*fourier) {
      OpPtr e = parse(fourier_expr, "weyl", fourier_rank);
      mfour_operator* res = nullptr;
      check(mfour_fourier(e.get(), &res));
      OpPtr result(res);
      Json out{{"rank", fourier_rank}, {"input", str(e.get())}, {"fourier", str(result.get())}};
      if (pretty) std::cout << str(e.get()) << "  ->  " << str(result.get()) << "\n";
      else emit(out, false);
      return 0;
    }
    if (*trace) {
      char* js = nullptr;
      check(mfour_trace(trace_q, object.c_str(), &js));
      Json out = Json::parse(take(js));
      if (pretty) {
        std::cout << object << " on F_" << trace_q << "\n";
        for (const auto& [pt, v] : out["values"].items()) std::cout << "  " << std::setw(12) << std::left << pt << v.get<std::string>() << "\n";
      } else {
        emit(out, false);
      }
      return 0;
    }
    if (*verify) {
      mfour_check_params p;
      mfour_check_params_init(&p);
      auto set = [](int32_t& dst, const std::optional<int>& v) {
        if (v) dst = *v;
      };
      set(p.q, q);
      set(p.d, d);
      set(p.n, n);
      set(p.window, window);
      set(p.ell, ell);
      set(p.r, r);
      set(p.nprime, nprime);
      set(p.m, m);
      p.chi = chi.empty() ? nullptr : chi.c_str();
      p.seed = seed;
      char* js = nullptr;
      mfour_verdict v = MFOUR_FAIL;
      check(mfour_check_run(check_id.c_str(), &p, no_timings ? 0 : 1, &js, &v));
      Json out = Json::parse(take(js));
      if (pretty) {
        print_report_row(out);
        std::cout << "  " << out["citation"].get<std::string>() << "\n" << out["witness"].dump(2) << "\n";
      } else {
        emit(out, false);
      }
      return static_cast<int>(v);
    }
    if (*verify_all) {
      char* js = nullptr;
      int ok = 0;
      check(mfour_run_all(profile.c_str(), all_seed, threads, all_no_timings ? 0 : 1, &js, &ok));
      Json out = Json::parse(take(js));
      if (pretty) {
        for (const auto& rep : out["reports"]) print_report_row(rep);
        const auto& s = out["summary"];
        std::cout << "\n" << s["total"] << " runs: " << s["pass"] << " pass, " << s["fail"] << " fail, " << s["diagnostic"]
                  << " diagnostic\n";
      } else {
        emit(out, false);
      }
      return ok ? 0 : 1;
    }
    if (*checks) {
      Json names = Json::array();
      for (std::size_t i = 0; i < mfour_check_count(); ++i) names.push_back(mfour_check_name(i));
      if (pretty) {
        for (const auto& nm : names) std::cout << nm.get<std::string>() << "\n";
      } else {
        emit(names, false);
      }
      return 0;
    }
  } catch (const Failure& f) {
    Json err{{"error", mfour_status_name(f.status)}, {"message", f.message}};
    if (f.status == MFOUR_E_SYNTAX) err["offset"] = mfour_last_error_offset();
    std::cerr << err.dump() << "\n";
    return kErrorExit;
  }
  return 0;
}
