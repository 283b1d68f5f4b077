#pragma once

#include <stdexcept>
#include <string>

namespace landau {

// Base class for every failure the library signals.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateFieldError : public Error { using Error::Error; };
class RangeError : public Error { using Error::Error; };
class ResolutionError : public Error { using Error::Error; };
class ShiftError : public Error { using Error::Error; };
class NoPhaseError : public Error { using Error::Error; };
class IllConditionedError : public Error { using Error::Error; };
class BoundaryError : public Error { using Error::Error; };
class SingularityError : public Error { using Error::Error; };
class FormatError : public Error { using Error::Error; };

}  // namespace landau
