#pragma once

#include <stdexcept>
#include <string>

namespace speclab {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NegativeArgument : Error { using Error::Error; };
struct ZeroState : Error { using Error::Error; };
struct UnsupportedKODimension : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct NotSU2 : Error { using Error::Error; };
struct NonSmoothCutoff : Error { using Error::Error; };
struct NonPositiveInput : Error { using Error::Error; };

// Raised while reading a config file or applying --set overrides.
struct ConfigParseError : Error { using Error::Error; };
// Raised when a parsed config is structurally valid but semantically inconsistent.
struct ValidationError : Error { using Error::Error; };

} // namespace speclab
