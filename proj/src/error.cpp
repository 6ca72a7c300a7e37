#include <cmath>

#include "orthograph/error.hpp"
#include "orthograph/tolerances.hpp"

namespace orthograph {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotProjection: return "NotProjection";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorKind::InfeasibleRank: return "InfeasibleRank";
    case ErrorKind::InvalidElement: return "InvalidElement";
    case ErrorKind::SmallAlgebra: return "SmallAlgebra";
    case ErrorKind::Isolated: return "Isolated";
    case ErrorKind::RightInvertibleEndpoint: return "RightInvertibleEndpoint";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::SplitInfeasible: return "SplitInfeasible";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

void Tolerances::validate() const {
  for (double t : {proj, vec, eig, ker, orth}) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw Error(ErrorKind::ConfigError, "tolerances must be positive and finite");
    }
  }
}

}  // namespace orthograph
