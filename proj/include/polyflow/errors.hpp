#pragma once

#include <stdexcept>
#include <string>

namespace polyflow {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

#define POLYFLOW_DEFINE_ERROR(Name, Base) \
  class Name : public Base {              \
   public:                                \
    using Base::Base;                     \
  };

// Geometry
POLYFLOW_DEFINE_ERROR(DegenerateVertex, Error)
POLYFLOW_DEFINE_ERROR(CollinearVertex, Error)
POLYFLOW_DEFINE_ERROR(DegenerateTriangle, Error)
POLYFLOW_DEFINE_ERROR(ZeroVelocity, Error)

// Integration
POLYFLOW_DEFINE_ERROR(StepLimitExceeded, Error)
POLYFLOW_DEFINE_ERROR(StepUnderflow, Error)
POLYFLOW_DEFINE_ERROR(RangeExceeded, Error)

// Preconditions with their own names
POLYFLOW_DEFINE_ERROR(BetaZero, InvalidArgument)
POLYFLOW_DEFINE_ERROR(NotSymmetric, InvalidArgument)

// Spectral classification
POLYFLOW_DEFINE_ERROR(AmbiguousSpectrum, Error)

#undef POLYFLOW_DEFINE_ERROR

}  // namespace polyflow
