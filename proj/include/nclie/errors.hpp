#ifndef NCLIE_ERRORS_HPP
#define NCLIE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nclie {

/// Base for all structured library errors.  `kind()` is a stable
/// machine-readable tag; what() carries the human-readable detail.
class error : public std::runtime_error {
 public:
  error(std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define NCLIE_DEFINE_ERROR(name)                              \
  class name : public error {                                 \
   public:                                                    \
    explicit name(const std::string& detail)                  \
        : error(#name, detail) {}                             \
  }

NCLIE_DEFINE_ERROR(JacobiViolation);
NCLIE_DEFINE_ERROR(DimensionMismatch);
NCLIE_DEFINE_ERROR(NotSolvable);
NCLIE_DEFINE_ERROR(NotNilpotent);
NCLIE_DEFINE_ERROR(NotAnIdeal);
NCLIE_DEFINE_ERROR(NotTriangular);
NCLIE_DEFINE_ERROR(IrrationalEigenvalues);
NCLIE_DEFINE_ERROR(AlgebraMismatch);
NCLIE_DEFINE_ERROR(Unsupported);
NCLIE_DEFINE_ERROR(UnknownName);
NCLIE_DEFINE_ERROR(SmoothUnsupported);
NCLIE_DEFINE_ERROR(ModeMismatch);
NCLIE_DEFINE_ERROR(SystemIncomplete);
NCLIE_DEFINE_ERROR(ChainMismatch);
NCLIE_DEFINE_ERROR(OverflowDetected);
NCLIE_DEFINE_ERROR(SingularSolve);
NCLIE_DEFINE_ERROR(NonRealSpectrum);
NCLIE_DEFINE_ERROR(NotCommuting);
NCLIE_DEFINE_ERROR(TruncationBudgetExceeded);
NCLIE_DEFINE_ERROR(NotSubregion);
NCLIE_DEFINE_ERROR(NotACover);
NCLIE_DEFINE_ERROR(Mismatch);
NCLIE_DEFINE_ERROR(DomainMismatch);
NCLIE_DEFINE_ERROR(IllConditionedFit);
NCLIE_DEFINE_ERROR(ParseError);

#undef NCLIE_DEFINE_ERROR

}  // namespace nclie

#endif
