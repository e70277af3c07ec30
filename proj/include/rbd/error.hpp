#pragma once

#include <stdexcept>
#include <string>

namespace rbd {

/// Error classes map one-to-one onto CLI exit codes.
enum class ErrorClass {
  usage = 2,             // bad arguments / argument-domain violations
  parse = 3,             // malformed files, topology defects
  numeric = 4,           // solver failures, rank deficiency
  insufficient_data = 5  // not enough data to satisfy a precondition
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& msg) : std::runtime_error(msg), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }
  int exit_code() const { return static_cast<int>(cls_); }

 private:
  ErrorClass cls_;
};

struct UsageError : Error {
  explicit UsageError(const std::string& msg) : Error(ErrorClass::usage, msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(ErrorClass::parse, msg) {}
};

/// Non-manifold edges, out-of-range indices, degenerate faces.
struct TopologyError : Error {
  explicit TopologyError(const std::string& msg) : Error(ErrorClass::parse, msg) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& msg) : Error(ErrorClass::numeric, msg) {}
};

struct InsufficientDataError : Error {
  explicit InsufficientDataError(const std::string& msg)
      : Error(ErrorClass::insufficient_data, msg) {}
};

inline const char* error_class_name(ErrorClass cls) {
  switch (cls) {
    case ErrorClass::usage: return "usage";
    case ErrorClass::parse: return "parse";
    case ErrorClass::numeric: return "numeric";
    case ErrorClass::insufficient_data: return "insufficient-data";
  }
  return "unknown";
}

}  // namespace rbd
