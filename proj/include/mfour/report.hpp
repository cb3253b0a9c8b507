#pragma once

#include <json.hpp>

#include <string>

namespace mfour {

using Json = nlohmann::ordered_json;

enum class Verdict { pass, fail, diagnostic };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::diagnostic: return "diagnostic";
  }
  return "fail";
}

inline int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return 0;
    case Verdict::fail: return 1;
    case Verdict::diagnostic: return 2;
  }
  return 1;
}

/// Result of one engine-level verification: the verdict and whatever the
/// engine found worth reporting.
struct CheckOutcome {
  Verdict verdict = Verdict::fail;
  Json witness = Json::object();

  static CheckOutcome from_bool(bool ok, Json witness) { return {ok ? Verdict::pass : Verdict::fail, std::move(witness)}; }
};

}  // namespace mfour
