#include "unigauss/error.hpp"

namespace unigauss {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kTargetNotInSubgroup: return "TargetNotInSubgroup";
    case Errc::kSingularMatrix: return "SingularMatrix";
    case Errc::kInvalidLetter: return "InvalidLetter";
    case Errc::kZeroParameter: return "ZeroParameter";
    case Errc::kNotUnitary: return "NotUnitary";
    case Errc::kNotSpecialUnitary: return "NotSpecialUnitary";
    case Errc::kUnsupportedParity: return "UnsupportedParity";
    case Errc::kDimensionTooSmall: return "DimensionTooSmall";
    case Errc::kInvalidDiagForm: return "InvalidDiagForm";
    case Errc::kNotSimilitude: return "NotSimilitude";
    case Errc::kInvalidCiphertext: return "InvalidCiphertext";
    case Errc::kGeneratorSetMismatch: return "GeneratorSetMismatch";
    case Errc::kInconsistentOracle: return "InconsistentOracle";
    case Errc::kInsufficientData: return "InsufficientData";
    case Errc::kParseError: return "ParseError";
    case Errc::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace unigauss
