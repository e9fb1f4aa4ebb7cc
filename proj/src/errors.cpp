#include "cvbound/errors.hpp"

namespace cvbound {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NonFiniteLoss: return "NonFiniteLoss";
    case Errc::EnvelopeViolated: return "EnvelopeViolated";
    case Errc::EmptyIndexSet: return "EmptyIndexSet";
    case Errc::BadK: return "BadK";
    case Errc::IndivisibleBlocks: return "IndivisibleBlocks";
    case Errc::MuTooSmall: return "MuTooSmall";
    case Errc::MissingOracle: return "MissingOracle";
    case Errc::NoFiniteNorm: return "NoFiniteNorm";
    case Errc::NoBranch: return "NoBranch";
    case Errc::UndefinedAtVarpiOne: return "UndefinedAtVarpiOne";
    case Errc::InfeasibleMixing: return "InfeasibleMixing";
    case Errc::UnboundedClass: return "UnboundedClass";
    case Errc::InfeasibleWindow: return "InfeasibleWindow";
    case Errc::ZeroNorm: return "ZeroNorm";
    case Errc::OutOfTableRange: return "OutOfTableRange";
    case Errc::BadParams: return "BadParams";
    case Errc::NoFeasibleK: return "NoFeasibleK";
    case Errc::InsufficientTrials: return "InsufficientTrials";
    case Errc::IoError: return "IoError";
    case Errc::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

}  // namespace cvbound
