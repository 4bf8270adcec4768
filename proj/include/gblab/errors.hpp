#pragma once

#include <stdexcept>
#include <string>

namespace gblab {

// Base of all geometric/numerical failures raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateChart : Error { using Error::Error; };
struct LeftDomain : Error { using Error::Error; };
struct NotTangent : Error { using Error::Error; };
struct CurveNotRegular : Error { using Error::Error; };
struct NotClosed : Error { using Error::Error; };
struct NearAxis : Error { using Error::Error; };
struct SouthernHemisphere : Error { using Error::Error; };
struct GaussMapDegenerate : Error { using Error::Error; };
struct GeodesicShootingFailed : Error { using Error::Error; };
struct NotClosedSurface : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };

struct MeshError : Error { using Error::Error; };

struct ParseError : MeshError {
    ParseError(int line_, int column_, const std::string& message)
        : MeshError("parse error at line " + std::to_string(line_) + ", column " +
                    std::to_string(column_) + ": " + message),
          line(line_),
          column(column_) {}
    int line;
    int column;
};

struct NonTriangulatable : MeshError { using MeshError::MeshError; };
struct IndexOutOfRange : MeshError { using MeshError::MeshError; };
struct IsolatedVertex : MeshError { using MeshError::MeshError; };
struct OpenStar : MeshError { using MeshError::MeshError; };
struct MeshNotClosed : MeshError { using MeshError::MeshError; };

}  // namespace gblab
