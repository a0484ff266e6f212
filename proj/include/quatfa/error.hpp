#pragma once

#include <stdexcept>
#include <string>

namespace quatfa {

enum class ErrorCode {
  DivisionByZero,
  InvalidGenerator,
  InvalidBimodule,
  NotIntertwining,
  RankDeficient,
  InvalidSubspace,
  NoSeparator,
  UnsupportedNorm,
  InvalidRepresentation,
  InvalidModule,
  InvalidAlgebra,
  NotCommutative,
  Parse,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `residual()` carries the measured
/// violation when the error comes from a numerical validation, else 0.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double residual = 0.0)
      : std::runtime_error(what), code_(code), residual_(residual) {}

  ErrorCode code() const noexcept { return code_; }
  double residual() const noexcept { return residual_; }

 private:
  ErrorCode code_;
  double residual_;
};

}  // namespace quatfa
