#pragma once

#include <stdexcept>
#include <string>

namespace cvbound {

// Every failure mode the library reports. CLI maps these to exit codes.
enum class Errc {
  NonFiniteLoss,
  EnvelopeViolated,
  EmptyIndexSet,
  BadK,
  IndivisibleBlocks,
  MuTooSmall,
  MissingOracle,
  NoFiniteNorm,
  NoBranch,
  UndefinedAtVarpiOne,
  InfeasibleMixing,
  UnboundedClass,
  InfeasibleWindow,
  ZeroNorm,
  OutOfTableRange,
  BadParams,
  NoFeasibleK,
  InsufficientTrials,
  IoError,
  ConfigError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cvbound
