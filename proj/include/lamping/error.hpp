#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace lamping {

enum class ErrorKind {
  Syntax,
  FuelExhausted,
  NotNormal,
  RuleViolation,
  NotACut,
  UnmatchedPair,
  EraserCut,
  IncompatibleLabelling,
  HasCuts,
  NoNFound,
  MalformedStack,
  UnresolvedBinder,
  Input,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "syntax-error";
    case ErrorKind::FuelExhausted: return "fuel-exhausted";
    case ErrorKind::NotNormal: return "not-normal";
    case ErrorKind::RuleViolation: return "rule-violation";
    case ErrorKind::NotACut: return "not-a-cut";
    case ErrorKind::UnmatchedPair: return "unmatched-pair";
    case ErrorKind::EraserCut: return "eraser-cut";
    case ErrorKind::IncompatibleLabelling: return "incompatible-labelling";
    case ErrorKind::HasCuts: return "has-cuts";
    case ErrorKind::NoNFound: return "no-n-found";
    case ErrorKind::MalformedStack: return "malformed-stack";
    case ErrorKind::UnresolvedBinder: return "unresolved-binder";
    case ErrorKind::Input: return "input-error";
  }
  return "error";
}

/// Every failure raised by the engine carries a kind so callers (and the
/// CLI exit-code logic) can tell input problems from internal faults.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t pos, const std::string& what)
      : Error(ErrorKind::Syntax, "at " + std::to_string(pos) + ": " + what), pos_(pos) {}

  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

class RuleViolation : public Error {
 public:
  RuleViolation(std::string path, const std::string& reason)
      : Error(ErrorKind::RuleViolation, (path.empty() ? std::string("root") : path) + ": " + reason),
        path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace lamping
