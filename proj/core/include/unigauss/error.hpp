#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unigauss {

enum class Errc {
  kInvalidArgument,
  kTargetNotInSubgroup,
  kSingularMatrix,
  kInvalidLetter,
  kZeroParameter,
  kNotUnitary,
  kNotSpecialUnitary,
  kUnsupportedParity,
  kDimensionTooSmall,
  kInvalidDiagForm,
  kNotSimilitude,
  kInvalidCiphertext,
  kGeneratorSetMismatch,
  kInconsistentOracle,
  kInsufficientData,
  kParseError,
  kInternal,
};

std::string_view errc_name(Errc code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace unigauss
