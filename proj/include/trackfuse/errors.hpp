#ifndef TRACKFUSE_ERRORS_HPP
#define TRACKFUSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace trackfuse {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyTrack : Error {
    EmptyTrack() : Error("empty track") {}
};

struct EmptyInput : Error {
    explicit EmptyInput(const std::string& what = "empty input") : Error(what) {}
};

struct FrameRangeExceeded : Error {
    explicit FrameRangeExceeded(double dist_m)
        : Error("point " + std::to_string(dist_m) + " m from frame origin exceeds 500 km planar range") {}
};

struct DegenerateBearing : Error {
    DegenerateBearing() : Error("coincident points, bearing undefined") {}
};

struct FormatError : Error {
    using Error::Error;
};

struct NoOverlap : Error {
    explicit NoOverlap(const std::string& what = "no cross-source pair inside the search window") : Error(what) {}
};

struct FlightMismatch : Error {
    FlightMismatch(const std::string& a, const std::string& b)
        : Error("flight mismatch: '" + a + "' vs '" + b + "'") {}
};

struct InsufficientData : Error {
    explicit InsufficientData(const std::string& what = "insufficient data") : Error(what) {}
};

struct NoGeotags : Error {
    NoGeotags() : Error("no geotags to bracket against") {}
};

struct UnsupportedDate : Error {
    explicit UnsupportedDate(const std::string& what = "instant outside 1950-2100 validity span") : Error(what) {}
};

struct UnknownCamera : Error {
    explicit UnknownCamera(const std::string& name) : Error("unknown camera '" + name + "'") {}
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace trackfuse

#endif
