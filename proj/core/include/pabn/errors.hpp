#pragma once

#include <stdexcept>
#include <string>

namespace pabn {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// geometry
struct InvalidParams : Error { using Error::Error; };
struct NonConformingGrid : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };

// director / energy
struct DegenerateInterior : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };

// topology
struct CorruptEdge : Error { using Error::Error; };
struct ProjectionDegenerate : Error { using Error::Error; };
struct PathTooCoarse : Error { using Error::Error; };
struct SurfaceOpen : Error { using Error::Error; };
struct DegenerateTriangle : Error { using Error::Error; };

// experiments / io
struct EmptySpec : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

struct ParseError : Error {
  std::string key;
  std::string reason;
  ParseError(std::string k, std::string r)
      : Error(k + ": " + r), key(std::move(k)), reason(std::move(r)) {}
};

}  // namespace pabn
