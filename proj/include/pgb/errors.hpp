#pragma once

#include <stdexcept>
#include <string>

namespace pgb {

// Base for all validation and numeric failures. what() always names the
// violated invariant so CLI error output can surface it verbatim.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define PGB_DEFINE_ERROR(NAME)                                        \
  class NAME : public Error {                                         \
   public:                                                            \
    explicit NAME(const std::string& msg) : Error(#NAME ": " + msg) {} \
  }

PGB_DEFINE_ERROR(NotHermitian);
PGB_DEFINE_ERROR(NotPSD);
PGB_DEFINE_ERROR(NoConvergence);
PGB_DEFINE_ERROR(DimensionMismatch);
PGB_DEFINE_ERROR(MissingDims);
PGB_DEFINE_ERROR(BadParams);
PGB_DEFINE_ERROR(LengthMismatch);
PGB_DEFINE_ERROR(CountMismatch);
PGB_DEFINE_ERROR(UnsupportedAlpha);
PGB_DEFINE_ERROR(OutOfRange);
PGB_DEFINE_ERROR(NonCommuting);
PGB_DEFINE_ERROR(BadTable);
PGB_DEFINE_ERROR(ParseError);
PGB_DEFINE_ERROR(IoError);

#undef PGB_DEFINE_ERROR

}  // namespace pgb
