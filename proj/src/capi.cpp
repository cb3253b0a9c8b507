#include <mfour/checks.hpp>
#include <mfour/error.hpp>
#include <mfour/mfour.h>
#include <mfour/ore.hpp>
#include <mfour/parse.hpp>
#include <mfour/trace.hpp>

#include <cstdlib>
#include <cstring>
#include <new>
#include <variant>

struct mfour_operator {
  mfour::Operator value;
};

namespace {

thread_local std::string g_error;
thread_local std::size_t g_offset = 0;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
mfour_status guarded(F&& f) {
  g_error.clear();
  g_offset = 0;
  try {
    f();
    return MFOUR_OK;
  } catch (const mfour::SyntaxError& e) {
    g_error = e.what();
    g_offset = e.offset();
    return MFOUR_E_SYNTAX;
  } catch (const mfour::Error& e) {
    g_error = e.what();
    return static_cast<mfour_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    g_error = e.what();
    return MFOUR_E_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) mfour::fail(mfour::ErrorCode::invalid_argument, std::string(what) + " is null");
}

mfour_operator* wrap(mfour::Operator op) { return new mfour_operator{std::move(op)}; }

template <class Fn>
mfour::Operator binary(const mfour::Operator& a, const mfour::Operator& b, Fn fn) {
  if (a.index() != b.index()) mfour::fail(mfour::ErrorCode::mismatch, "operators from different algebras");
  return std::visit(
      [&](const auto& x) -> mfour::Operator {
        using T = std::decay_t<decltype(x)>;
        return fn(x, std::get<T>(b));
      },
      a);
}

int rank_of(const mfour::Operator& op) {
  if (const auto* w = std::get_if<mfour::WeylOp>(&op)) return w->rank();
  return 1;
}

mfour::Algebra algebra_of(const mfour::Operator& op) {
  switch (op.index()) {
    case 0: return mfour::Algebra::shift;
    case 1: return mfour::Algebra::weyl;
    default: return mfour::Algebra::laurent_weyl;
  }
}

}  // namespace

extern "C" {

const char* mfour_version(void) { return "1.0.0"; }
const char* mfour_last_error(void) { return g_error.c_str(); }
size_t mfour_last_error_offset(void) { return g_offset; }

const char* mfour_status_name(mfour_status status) {
  if (status == MFOUR_OK) return "ok";
  if (status == MFOUR_E_INTERNAL) return "internal";
  return mfour::error_code_name(static_cast<mfour::ErrorCode>(status));
}

void mfour_string_free(char* s) { std::free(s); }

mfour_status mfour_operator_parse(const char* text, const char* algebra, int rank, mfour_operator** out) {
  return guarded([&] {
    require(text, "text");
    require(algebra, "algebra");
    require(out, "out");
    *out = wrap(mfour::parse_operator(text, mfour::parse_algebra(algebra), rank));
  });
}

void mfour_operator_free(mfour_operator* op) { delete op; }

mfour_status mfour_operator_to_string(const mfour_operator* op, char** out) {
  return guarded([&] {
    require(op, "operator");
    require(out, "out");
    *out = dup(mfour::to_string(op->value));
  });
}

const char* mfour_operator_algebra(const mfour_operator* op) {
  if (!op) return "";
  switch (algebra_of(op->value)) {
    case mfour::Algebra::shift: return "shift";
    case mfour::Algebra::weyl: return "weyl";
    case mfour::Algebra::laurent_weyl: return "laurent-weyl";
  }
  return "";
}

mfour_status mfour_operator_add(const mfour_operator* a, const mfour_operator* b, mfour_operator** out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = wrap(binary(a->value, b->value, [](const auto& x, const auto& y) { return x + y; }));
  });
}

mfour_status mfour_operator_mul(const mfour_operator* a, const mfour_operator* b, mfour_operator** out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = wrap(binary(a->value, b->value, [](const auto& x, const auto& y) { return x * y; }));
  });
}

mfour_status mfour_operator_equal(const mfour_operator* a, const mfour_operator* b, int* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = a->value == b->value ? 1 : 0;
  });
}

mfour_status mfour_reduce(const mfour_operator* elem, const mfour_operator* relation, mfour_operator** out) {
  return guarded([&] {
    require(elem, "elem");
    require(relation, "relation");
    require(out, "out");
    if (elem->value.index() != relation->value.index()) mfour::fail(mfour::ErrorCode::mismatch, "operators from different algebras");
    mfour::CyclicPresentation pres{algebra_of(relation->value), rank_of(relation->value), {relation->value}};
    *out = wrap(mfour::right_reduce(elem->value, pres));
  });
}

mfour_status mfour_mellin(const mfour_operator* op, mfour_operator** out) {
  return guarded([&] {
    require(op, "operator");
    require(out, "out");
    if (const auto* l = std::get_if<mfour::LaurentWeylOp>(&op->value)) {
      *out = wrap(mfour::mellin_op(*l));
    } else if (const auto* w = std::get_if<mfour::WeylOp>(&op->value); w && w->rank() == 1) {
      *out = wrap(mfour::mellin_op(mfour::LaurentWeylOp::from_weyl(*w)));
    } else {
      mfour::fail(mfour::ErrorCode::mismatch, "mellin expects a rank-1 differential operator");
    }
  });
}

mfour_status mfour_inverse_mellin(const mfour_operator* op, mfour_operator** out) {
  return guarded([&] {
    require(op, "operator");
    require(out, "out");
    const auto* sh = std::get_if<mfour::ShiftOp>(&op->value);
    if (!sh) mfour::fail(mfour::ErrorCode::mismatch, "inverse mellin expects a shift operator");
    *out = wrap(mfour::inverse_mellin_op(*sh));
  });
}

mfour_status mfour_fourier(const mfour_operator* op, mfour_operator** out) {
  return guarded([&] {
    require(op, "operator");
    require(out, "out");
    const auto* w = std::get_if<mfour::WeylOp>(&op->value);
    if (!w) mfour::fail(mfour::ErrorCode::mismatch, "fourier expects a Weyl operator");
    *out = wrap(mfour::fourier_auto(*w));
  });
}

mfour_status mfour_trace(int q, const char* object, char** json) {
  return guarded([&] {
    require(object, "object");
    require(json, "json");
    mfour::TraceFunction f = mfour::trace_object(q, object);
    mfour::Json j;
    j["q"] = q;
    j["object"] = object;
    j["values"] = mfour::trace_table(f);
    *json = dup(j.dump());
  });
}

void mfour_check_params_init(mfour_check_params* p) {
  if (!p) return;
  p->q = p->d = p->n = p->window = p->ell = p->r = p->nprime = p->m = MFOUR_UNSET;
  p->chi = nullptr;
  p->seed = 0;
}

size_t mfour_check_count(void) { return mfour::all_checks().size(); }

const char* mfour_check_name(size_t index) {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto id : mfour::all_checks()) v.push_back(mfour::check_name(id));
    return v;
  }();
  return index < names.size() ? names[index].c_str() : nullptr;
}

mfour_status mfour_check_run(const char* check, const mfour_check_params* params, int with_timings, char** json,
                             mfour_verdict* verdict) {
  return guarded([&] {
    require(check, "check");
    require(json, "json");
    auto id = mfour::parse_check_id(check);
    if (!id) mfour::fail(mfour::ErrorCode::invalid_argument, std::string("unknown check '") + check + "'");
    mfour::CheckParams p;
    if (params) {
      auto set = [](std::optional<int>& dst, int32_t v) {
        if (v != MFOUR_UNSET) dst = v;
      };
      set(p.q, params->q);
      set(p.d, params->d);
      set(p.n, params->n);
      set(p.window, params->window);
      set(p.ell, params->ell);
      set(p.r, params->r);
      set(p.nprime, params->nprime);
      set(p.m, params->m);
      if (params->chi) {
        // Parsed with the operator grammar so "-1/2" and "1/3" both work.
        auto c = mfour::parse_shift(params->chi);
        if (c.terms().size() > 1 || (c.terms().size() == 1 && (c.terms().begin()->first != 0 || c.coeff(0).degree() > 0)))
          mfour::fail(mfour::ErrorCode::invalid_argument, std::string("chi must be a rational number, got '") + params->chi + "'");
        p.chi = c.is_zero() ? mfour::Rational(0) : c.coeff(0).lead();
      }
      p.seed = params->seed;
    }
    mfour::CheckReport r = mfour::run_check(*id, p);
    *json = dup(r.to_json(with_timings != 0).dump());
    if (verdict) *verdict = static_cast<mfour_verdict>(mfour::verdict_exit_code(r.verdict));
  });
}

mfour_status mfour_run_all(const char* profile, uint64_t seed, unsigned threads, int with_timings, char** json, int* ok) {
  return guarded([&] {
    require(profile, "profile");
    require(json, "json");
    mfour::AggregateReport agg = mfour::run_all(mfour::parse_profile(profile), seed, threads);
    *json = dup(agg.to_json(with_timings != 0).dump());
    if (ok) *ok = agg.ok() ? 1 : 0;
  });
}

}  // extern "C"
