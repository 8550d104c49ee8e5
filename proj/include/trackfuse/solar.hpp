#ifndef TRACKFUSE_SOLAR_HPP
#define TRACKFUSE_SOLAR_HPP

#include <string>
#include <utility>
#include <vector>

#include "trackfuse/fuse.hpp"
#include "trackfuse/time.hpp"

namespace trackfuse {

struct SunPosition {
    double azimuth = 0.0;    // degrees clockwise from true north, [0, 360)
    double elevation = 0.0;  // degrees above horizon, [-90, 90]
};

// Topocentric solar position via the NOAA closed-form algorithm (Meeus-based,
// stated accuracy well under 0.1 degrees). No refraction correction.
// Throws UnsupportedDate outside years 1950-2100.
SunPosition sun_position(Timestamp t, double lat_deg, double lon_deg);

// Named camera azimuth offsets relative to aircraft bearing, kept sorted by
// name; offsets normalized to [0, 360).
struct CameraRig {
    std::vector<std::pair<std::string, double>> cameras;

    double offset_of(const std::string& name) const;  // throws UnknownCamera
};

// Parses "name=offset_deg" lines; '#' starts a comment.
CameraRig parse_rig(const std::string& text);

// (bearing + rig offset) mod 360.
double view_azimuth(double bearing_deg, const CameraRig& rig, const std::string& camera);

// Minimal angular separation of view and sun azimuths, [0, 180].
double azimuth_absolute_diff(double view_az_deg, double sun_az_deg);

struct FeatureRow {
    Timestamp t = 0;
    double bearing = 0.0;
    bool carried = false;  // bearing carried forward over a degenerate pair
    double sun_azimuth = 0.0;
    double sun_elevation = 0.0;
    std::vector<double> camera_az_abs_diff;  // aligned with rig.cameras
};

// Per-point orientation features. Bearing at point k uses points (k, k+1);
// the last row carries the previous bearing. Throws InsufficientData for
// fewer than 2 points, DegenerateBearing when every consecutive pair is
// coincident.
std::vector<FeatureRow> feature_rows(const FusedTrack& fused, const CameraRig& rig);

}  // namespace trackfuse

#endif
