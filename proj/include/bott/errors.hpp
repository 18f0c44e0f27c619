#pragma once

#include <stdexcept>
#include <string>

namespace bott {

/// Base class for every domain error raised by the library.
class BottError : public std::runtime_error {
 public:
  BottError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  /// Stable machine-readable error name, e.g. "ShapeError".
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define BOTT_DEFINE_ERROR(Name)                                              \
  class Name : public BottError {                                            \
   public:                                                                   \
    explicit Name(const std::string& what) : BottError(#Name, what) {}       \
  }

BOTT_DEFINE_ERROR(ShapeError);
BOTT_DEFINE_ERROR(RangeError);
BOTT_DEFINE_ERROR(ContextMismatch);
BOTT_DEFINE_ERROR(NotIntegral);
BOTT_DEFINE_ERROR(NotUnimodular);
BOTT_DEFINE_ERROR(RelationViolated);
BOTT_DEFINE_ERROR(WellOrderFailure);
BOTT_DEFINE_ERROR(ExtractionFailure);
BOTT_DEFINE_ERROR(SwitchBlocked);
BOTT_DEFINE_ERROR(TwistInvalid);
BOTT_DEFINE_ERROR(PreconditionError);
BOTT_DEFINE_ERROR(DecompositionInconsistent);
BOTT_DEFINE_ERROR(OddAtBoundary);
BOTT_DEFINE_ERROR(ContractViolation);
BOTT_DEFINE_ERROR(ProofPathViolation);
BOTT_DEFINE_ERROR(NonTermination);
BOTT_DEFINE_ERROR(FormatError);

#undef BOTT_DEFINE_ERROR

}  // namespace bott
