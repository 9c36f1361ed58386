#include "ionqaoa/error.hpp"

namespace ionqaoa {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kDimension: return "dimension";
    case ErrorKind::kIndex: return "index";
    case ErrorKind::kUnitarity: return "unitarity";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kConsistency: return "consistency";
    case ErrorKind::kSynthesis: return "synthesis";
    case ErrorKind::kConjugation: return "conjugation";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kSingular: return "singular";
    case ErrorKind::kInvalidState: return "invalid-state";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kUsage: return "usage";
    case ErrorKind::kVerification: return "verification";
  }
  return "unknown";
}

}  // namespace ionqaoa
