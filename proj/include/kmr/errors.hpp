#ifndef KMR_ERRORS_HPP
#define KMR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kmr {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotGCMError : Error {
  explicit NotGCMError(const std::string& msg) : Error("NotGCM: " + msg) {}
};

struct NotAffineError : Error {
  explicit NotAffineError(const std::string& msg) : Error("NotAffine: " + msg) {}
};

struct MultiplicityUnavailableError : Error {
  explicit MultiplicityUnavailableError(const std::string& msg)
      : Error("MultiplicityUnavailable: " + msg) {}
};

struct IndexOutOfRangeError : Error {
  explicit IndexOutOfRangeError(const std::string& msg)
      : Error("IndexOutOfRange: " + msg) {}
};

struct MixedGCMError : Error {
  explicit MixedGCMError(const std::string& msg) : Error("MixedGCM: " + msg) {}
};

struct TruncationOverflowError : Error {
  explicit TruncationOverflowError(const std::string& msg)
      : Error("TruncationOverflow: " + msg) {}
};

struct OutOfTruncationError : Error {
  explicit OutOfTruncationError(const std::string& msg)
      : Error("OutOfTruncation: " + msg) {}
};

struct BadParametersError : Error {
  explicit BadParametersError(const std::string& msg)
      : Error("BadParameters: " + msg) {}
};

struct InconsistentWindowError : Error {
  explicit InconsistentWindowError(const std::string& msg)
      : Error("InconsistentWindow: " + msg) {}
};

struct WindowEdgeError : Error {
  explicit WindowEdgeError(const std::string& msg) : Error("WindowEdge: " + msg) {}
};

struct DepthOverflowError : Error {
  explicit DepthOverflowError(const std::string& msg)
      : Error("DepthOverflow: " + msg) {}
};

struct OutOfDepthError : Error {
  explicit OutOfDepthError(const std::string& msg) : Error("OutOfDepth: " + msg) {}
};

struct RegionMismatchError : Error {
  explicit RegionMismatchError(const std::string& msg)
      : Error("RegionMismatch: " + msg) {}
};

struct WindowTooSmallError : Error {
  explicit WindowTooSmallError(const std::string& msg)
      : Error("WindowTooSmall: " + msg) {}
};

struct ParameterMismatchError : Error {
  explicit ParameterMismatchError(const std::string& msg)
      : Error("ParameterMismatch: " + msg) {}
};

}  // namespace kmr

#endif
