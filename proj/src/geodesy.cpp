#include "trackfuse/geodesy.hpp"

#include <cmath>

#include "trackfuse/errors.hpp"

namespace trackfuse {

namespace {
constexpr double kDeg2Rad = M_PI / 180.0;
constexpr double kRad2Deg = 180.0 / M_PI;

// Prime-vertical radius of curvature.
double normal_radius(double sin_lat) {
    return kWgs84A / std::sqrt(1.0 - kWgs84E2 * sin_lat * sin_lat);
}
}  // namespace

const char* source_name(Source s) {
    switch (s) {
        case Source::OGps: return "ogps";
        case Source::IGps: return "igps";
        case Source::Synthetic: return "synthetic";
    }
    return "?";
}

Source source_from_name(const std::string& name) {
    if (name == "ogps") return Source::OGps;
    if (name == "igps") return Source::IGps;
    if (name == "synthetic") return Source::Synthetic;
    throw FormatError("unknown source '" + name + "'");
}

Ecef geodetic_to_ecef(double lat_deg, double lon_deg, double alt_m) {
    const double lat = lat_deg * kDeg2Rad, lon = lon_deg * kDeg2Rad;
    const double sl = std::sin(lat), cl = std::cos(lat);
    const double n = normal_radius(sl);
    return {(n + alt_m) * cl * std::cos(lon),
            (n + alt_m) * cl * std::sin(lon),
            (n * (1.0 - kWgs84E2) + alt_m) * sl};
}

void ecef_to_geodetic(const Ecef& p, double& lat_deg, double& lon_deg, double& alt_m) {
    const double rho = std::hypot(p.x, p.y);
    double lat = std::atan2(p.z, rho * (1.0 - kWgs84E2));
    for (int i = 0; i < 10; ++i) {
        const double sl = std::sin(lat);
        const double n = normal_radius(sl);
        const double next = std::atan2(p.z + kWgs84E2 * n * sl, rho);
        if (std::abs(next - lat) < 1e-15) {
            lat = next;
            break;
        }
        lat = next;
    }
    const double sl = std::sin(lat);
    const double n = normal_radius(sl);
    const double cl = std::cos(lat);
    alt_m = std::abs(cl) > 1e-8 ? rho / cl - n : p.z / sl - n * (1.0 - kWgs84E2);
    lat_deg = lat * kRad2Deg;
    lon_deg = std::atan2(p.y, p.x) * kRad2Deg;
}

LocalFrame make_frame(std::span<const GeoPoint> points) {
    if (points.empty()) throw EmptyTrack{};
    double lat = 0.0, lon = 0.0, alt = 0.0;
    for (const auto& p : points) {
        lat += p.lat;
        lon += p.lon;
        alt += p.alt;
    }
    const double n = static_cast<double>(points.size());
    return {lat / n, lon / n, alt / n};
}

LocalPoint to_local(const GeoPoint& p, const LocalFrame& f) {
    const Ecef origin = geodetic_to_ecef(f.origin_lat, f.origin_lon, f.origin_alt);
    const Ecef pt = geodetic_to_ecef(p.lat, p.lon, p.alt);
    const double dx = pt.x - origin.x, dy = pt.y - origin.y, dz = pt.z - origin.z;
    const double lat = f.origin_lat * kDeg2Rad, lon = f.origin_lon * kDeg2Rad;
    const double sl = std::sin(lat), cl = std::cos(lat);
    const double so = std::sin(lon), co = std::cos(lon);
    LocalPoint out;
    out.x = -so * dx + co * dy;
    out.y = -sl * co * dx - sl * so * dy + cl * dz;
    out.z = cl * co * dx + cl * so * dy + sl * dz;
    out.t = p.t;
    out.source = p.source;
    const double dist = std::hypot(out.x, out.y);
    if (dist > kFrameRangeM) throw FrameRangeExceeded(dist);
    return out;
}

GeoPoint from_local(const LocalPoint& p, const LocalFrame& f, const std::string& flight_id) {
    if (std::abs(p.x) > kFrameRangeM || std::abs(p.y) > kFrameRangeM) {
        throw FrameRangeExceeded(std::hypot(p.x, p.y));
    }
    const Ecef origin = geodetic_to_ecef(f.origin_lat, f.origin_lon, f.origin_alt);
    const double lat = f.origin_lat * kDeg2Rad, lon = f.origin_lon * kDeg2Rad;
    const double sl = std::sin(lat), cl = std::cos(lat);
    const double so = std::sin(lon), co = std::cos(lon);
    const Ecef pt{origin.x - so * p.x - sl * co * p.y + cl * co * p.z,
                  origin.y + co * p.x - sl * so * p.y + cl * so * p.z,
                  origin.z + cl * p.y + sl * p.z};
    GeoPoint out;
    out.flight_id = flight_id;
    out.source = p.source;
    out.t = p.t;
    ecef_to_geodetic(pt, out.lat, out.lon, out.alt);
    return out;
}

double normalize_deg(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) r += 360.0;
    return r == 360.0 ? 0.0 : r;
}

double bearing(const LocalPoint& a, const LocalPoint& b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    if (std::hypot(dx, dy) <= 1e-6) throw DegenerateBearing{};
    return normalize_deg(std::atan2(dx, dy) * kRad2Deg);
}

double angular_abs_diff(double a_deg, double b_deg) {
    double d = std::abs(normalize_deg(a_deg) - normalize_deg(b_deg));
    return d > 180.0 ? 360.0 - d : d;
}

}  // namespace trackfuse
