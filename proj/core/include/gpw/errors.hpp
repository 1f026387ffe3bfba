#pragma once

#include <stdexcept>
#include <string>

namespace gpw {

// Root of every error thrown by the library. Each subclass corresponds to one
// failure mode; messages name the offending arrow, unit or line.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GPW_DECLARE_ERROR(Name) \
  class Name : public Error {   \
   public:                      \
    using Error::Error;         \
  }

GPW_DECLARE_ERROR(AxiomViolation);
GPW_DECLARE_ERROR(MalformedSpec);
GPW_DECLARE_ERROR(UndefinedComposition);
GPW_DECLARE_ERROR(NotAUnit);
GPW_DECLARE_ERROR(UnknownArrow);
GPW_DECLARE_ERROR(GroupoidMismatch);
GPW_DECLARE_ERROR(DimensionMismatch);
GPW_DECLARE_ERROR(NotHermitian);
GPW_DECLARE_ERROR(NoConvergence);
GPW_DECLARE_ERROR(SingularMatrix);
GPW_DECLARE_ERROR(SupportOutsideIsotropy);
GPW_DECLARE_ERROR(NotInIsotropy);
GPW_DECLARE_ERROR(BaseUnitMismatch);
GPW_DECLARE_ERROR(InvalidRep);

#undef GPW_DECLARE_ERROR

}  // namespace gpw
