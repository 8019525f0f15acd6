// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace linrelu {

enum class ErrorKind {
  Config,       // invalid experiment or generator configuration
  Contract,     // caller violated a documented precondition
  Domain,       // argument outside the mathematical domain
  Range,        // index or degree out of the supported range
  Precision,    // requested accuracy unreachable with the given resources
  Numerical,    // solver or factorization failure
  Infeasible,   // no admissible solution exists
  Unsupported,  // dimension/strategy combination not implemented
  Io,
};

const char* error_kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

inline const char* error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Contract: return "contract";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Range: return "range";
    case ErrorKind::Precision: return "precision";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace linrelu
