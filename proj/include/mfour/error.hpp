#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mfour {

enum class ErrorCode {
  invalid_argument = 1,
  syntax = 2,
  unsupported_input = 3,
  not_a_morphism = 4,
  window = 5,
  mismatch = 6,
  not_monodromic = 7,
  size_guard = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::syntax, what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::syntax: return "syntax";
    case ErrorCode::unsupported_input: return "unsupported-input";
    case ErrorCode::not_a_morphism: return "not-a-morphism";
    case ErrorCode::window: return "window";
    case ErrorCode::mismatch: return "mismatch";
    case ErrorCode::not_monodromic: return "not-monodromic";
    case ErrorCode::size_guard: return "size-guard";
  }
  return "unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace mfour
