#pragma once

#include <stdexcept>
#include <string>

namespace cones {

/// Base class of every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CONES_DEFINE_ERROR(Name)        \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  };

CONES_DEFINE_ERROR(DimensionMismatch)
CONES_DEFINE_ERROR(EmptySet)
CONES_DEFINE_ERROR(EmptyIntersection)
CONES_DEFINE_ERROR(EmptyLevelSet)
CONES_DEFINE_ERROR(IterationLimit)
CONES_DEFINE_ERROR(ParameterError)
CONES_DEFINE_ERROR(BisectionFailure)
CONES_DEFINE_ERROR(InfeasibleGrid)
CONES_DEFINE_ERROR(InfeasibleAction)
CONES_DEFINE_ERROR(DegenerateFit)
CONES_DEFINE_ERROR(IoError)

#undef CONES_DEFINE_ERROR

}  // namespace cones
