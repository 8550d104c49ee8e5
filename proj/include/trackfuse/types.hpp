#ifndef TRACKFUSE_TYPES_HPP
#define TRACKFUSE_TYPES_HPP

#include <string>
#include <vector>

#include "trackfuse/time.hpp"

namespace trackfuse {

enum class Source { OGps, IGps, Synthetic };

const char* source_name(Source s);
// Throws FormatError for anything but "ogps" / "igps" / "synthetic".
Source source_from_name(const std::string& name);

// One timestamped geotag.
struct GeoPoint {
    std::string flight_id;
    Source source = Source::OGps;
    Timestamp t = 0;
    double lat = 0.0;  // degrees, [-90, 90]
    double lon = 0.0;  // degrees, [-180, 180]
    double alt = 0.0;  // meters above ellipsoid
};

// ENU tangent-plane origin for one flight.
struct LocalFrame {
    double origin_lat = 0.0;
    double origin_lon = 0.0;
    double origin_alt = 0.0;
};

// East-north-up coordinates in a LocalFrame.
struct LocalPoint {
    double x = 0.0;  // meters east
    double y = 0.0;  // meters north
    double z = 0.0;  // meters up
    Timestamp t = 0;
    Source source = Source::OGps;
};

// Time-ordered per-flight, per-source point sequence.
struct Track {
    std::string flight_id;
    Source source = Source::OGps;
    std::vector<GeoPoint> points;
};

struct FlightBundle {
    std::string flight_id;
    Track o_track;  // Source::OGps
    Track i_track;  // Source::IGps
};

}  // namespace trackfuse

#endif
