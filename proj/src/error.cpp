#include "ddgpce/error.hpp"

namespace ddgpce {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SizeOverflow: return "SizeOverflow";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NonFiniteMoment: return "NonFiniteMoment";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::InsufficientTail: return "InsufficientTail";
    case ErrorKind::DegenerateLowFidelity: return "DegenerateLowFidelity";
    case ErrorKind::SingularStiffness: return "SingularStiffness";
    case ErrorKind::NoClosedForm: return "NoClosedForm";
    case ErrorKind::ModelEvaluation: return "ModelEvaluation";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace ddgpce
