#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ionqaoa {

// Machine-readable error categories. The CLI prints the category name and
// maps it to an exit code.
enum class ErrorKind {
  kDomain,
  kDimension,
  kIndex,
  kUnitarity,
  kCapacity,
  kConsistency,
  kSynthesis,
  kConjugation,
  kDegenerate,
  kSingular,
  kInvalidState,
  kParse,
  kIo,
  kUsage,
  kVerification,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace ionqaoa
