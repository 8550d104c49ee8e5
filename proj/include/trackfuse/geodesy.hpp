#ifndef TRACKFUSE_GEODESY_HPP
#define TRACKFUSE_GEODESY_HPP

#include <span>

#include "trackfuse/types.hpp"

namespace trackfuse {

// WGS-84 ellipsoid.
inline constexpr double kWgs84A = 6378137.0;
inline constexpr double kWgs84F = 1.0 / 298.257223563;
inline constexpr double kWgs84E2 = kWgs84F * (2.0 - kWgs84F);

// Planar-approximation safety bound for the tangent frame.
inline constexpr double kFrameRangeM = 500000.0;

struct Ecef {
    double x, y, z;
};

Ecef geodetic_to_ecef(double lat_deg, double lon_deg, double alt_m);
void ecef_to_geodetic(const Ecef& p, double& lat_deg, double& lon_deg, double& alt_m);

// Frame origin at the arithmetic mean of lat, lon, alt. Throws EmptyTrack.
LocalFrame make_frame(std::span<const GeoPoint> points);

// ENU tangent-plane coordinates of p; origin maps to (0,0,0).
// Throws FrameRangeExceeded beyond 500 km of the origin.
LocalPoint to_local(const GeoPoint& p, const LocalFrame& f);

// Inverse of to_local. Throws FrameRangeExceeded for |x| or |y| > 500 km.
GeoPoint from_local(const LocalPoint& p, const LocalFrame& f,
                    const std::string& flight_id = {});

// Clockwise-from-north heading of a->b, degrees in [0, 360).
// Throws DegenerateBearing when the planar distance is <= 1e-6 m.
double bearing(const LocalPoint& a, const LocalPoint& b);

// Minimal absolute angle between two directions, degrees in [0, 180].
double angular_abs_diff(double a_deg, double b_deg);

// Normalizes an angle into [0, 360).
double normalize_deg(double deg);

}  // namespace trackfuse

#endif
