#include "trackfuse/solar.hpp"

#include <algorithm>
#include <cmath>

#include "trackfuse/errors.hpp"
#include "trackfuse/geodesy.hpp"

namespace trackfuse {

namespace {

constexpr double kDeg2Rad = M_PI / 180.0;
constexpr double kRad2Deg = 180.0 / M_PI;

// 1950-01-01T00:00:00Z .. 2100-12-31T23:59:59Z
constexpr Timestamp kMinInstant = -631152000;
constexpr Timestamp kMaxInstant = 4133980799;

}  // namespace

SunPosition sun_position(Timestamp t, double lat_deg, double lon_deg) {
    if (t < kMinInstant || t > kMaxInstant) throw UnsupportedDate{};

    const double jd = static_cast<double>(t) / 86400.0 + 2440587.5;
    const double T = (jd - 2451545.0) / 36525.0;

    const double L0 = normalize_deg(280.46646 + T * (36000.76983 + 0.0003032 * T));
    const double M = 357.52911 + T * (35999.05029 - 0.0001537 * T);
    const double e = 0.016708634 - T * (0.000042037 + 0.0000001267 * T);
    const double Mr = M * kDeg2Rad;
    const double C = std::sin(Mr) * (1.914602 - T * (0.004817 + 0.000014 * T)) +
                     std::sin(2 * Mr) * (0.019993 - 0.000101 * T) +
                     std::sin(3 * Mr) * 0.000289;
    const double true_long = L0 + C;
    const double omega = (125.04 - 1934.136 * T) * kDeg2Rad;
    const double lambda = (true_long - 0.00569 - 0.00478 * std::sin(omega)) * kDeg2Rad;

    const double eps0 =
        23.0 + (26.0 + (21.448 - T * (46.815 + T * (0.00059 - T * 0.001813))) / 60.0) / 60.0;
    const double eps = (eps0 + 0.00256 * std::cos(omega)) * kDeg2Rad;

    const double decl = std::asin(std::sin(eps) * std::sin(lambda));

    // Equation of time, minutes.
    const double y = std::tan(eps / 2.0) * std::tan(eps / 2.0);
    const double L0r = L0 * kDeg2Rad;
    const double eot =
        4.0 * kRad2Deg *
        (y * std::sin(2 * L0r) - 2.0 * e * std::sin(Mr) +
         4.0 * e * y * std::sin(Mr) * std::cos(2 * L0r) -
         0.5 * y * y * std::sin(4 * L0r) - 1.25 * e * e * std::sin(2 * Mr));

    double minutes = std::fmod(static_cast<double>(t), 86400.0) / 60.0;
    if (minutes < 0) minutes += 1440.0;
    const double true_solar_min = minutes + eot + 4.0 * lon_deg;
    double hour_angle = true_solar_min / 4.0 - 180.0;
    hour_angle = normalize_deg(hour_angle + 180.0) - 180.0;  // [-180, 180)
    const double H = hour_angle * kDeg2Rad;

    const double lat = lat_deg * kDeg2Rad;
    const double sin_el = std::sin(lat) * std::sin(decl) + std::cos(lat) * std::cos(decl) * std::cos(H);
    SunPosition sp;
    sp.elevation = std::asin(std::clamp(sin_el, -1.0, 1.0)) * kRad2Deg;
    // Azimuth from north, clockwise.
    const double az_south =
        std::atan2(std::sin(H), std::cos(H) * std::sin(lat) - std::tan(decl) * std::cos(lat));
    sp.azimuth = normalize_deg(az_south * kRad2Deg + 180.0);
    return sp;
}

double CameraRig::offset_of(const std::string& name) const {
    for (const auto& [n, off] : cameras) {
        if (n == name) return off;
    }
    throw UnknownCamera(name);
}

CameraRig parse_rig(const std::string& text) {
    CameraRig rig;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t eol = text.find('\n', start);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(start, eol - start);
        start = eol + 1;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t'))
            line.pop_back();
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw FormatError("rig: expected name=offset, got '" + line + "'");
        }
        const std::string name = line.substr(0, eq);
        char* end = nullptr;
        const std::string num = line.substr(eq + 1);
        const double off = std::strtod(num.c_str(), &end);
        if (end != num.c_str() + num.size() || num.empty()) {
            throw FormatError("rig: bad offset in '" + line + "'");
        }
        rig.cameras.emplace_back(name, normalize_deg(off));
    }
    std::sort(rig.cameras.begin(), rig.cameras.end());
    return rig;
}

double view_azimuth(double bearing_deg, const CameraRig& rig, const std::string& camera) {
    return normalize_deg(bearing_deg + rig.offset_of(camera));
}

double azimuth_absolute_diff(double view_az_deg, double sun_az_deg) {
    return angular_abs_diff(view_az_deg, sun_az_deg);
}

std::vector<FeatureRow> feature_rows(const FusedTrack& fused, const CameraRig& rig) {
    const auto& pts = fused.points;
    if (pts.size() < 2) throw InsufficientData("feature extraction needs >= 2 fused points");

    auto local_of = [](const SyntheticPoint& s) {
        LocalPoint p;
        p.x = s.x;
        p.y = s.y;
        p.z = s.z;
        p.t = s.t;
        p.source = Source::Synthetic;
        return p;
    };

    // Forward-differenced bearings; degenerate pairs carry the last valid one.
    std::vector<double> bearings(pts.size(), 0.0);
    std::vector<bool> carried(pts.size(), false);
    double last_valid = 0.0;
    bool have_valid = false;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        try {
            last_valid = bearing(local_of(pts[k]), local_of(pts[k + 1]));
            have_valid = true;
            bearings[k] = last_valid;
        } catch (const DegenerateBearing&) {
            carried[k] = true;
        }
    }
    if (!have_valid) throw DegenerateBearing{};
    bearings.back() = last_valid;
    carried.back() = true;
    // Backfill leading degenerate rows with the first valid bearing.
    double carry = 0.0;
    for (std::size_t k = pts.size(); k-- > 0;) {
        if (!carried[k]) carry = bearings[k];
    }
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (carried[k]) {
            bearings[k] = carry;
        } else {
            carry = bearings[k];
        }
    }

    std::vector<FeatureRow> rows;
    rows.reserve(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const GeoPoint geo = from_local(local_of(pts[k]), fused.frame, fused.flight_id);
        const SunPosition sun = sun_position(pts[k].t, geo.lat, geo.lon);
        FeatureRow row;
        row.t = pts[k].t;
        row.bearing = bearings[k];
        row.carried = carried[k];
        row.sun_azimuth = sun.azimuth;
        row.sun_elevation = sun.elevation;
        row.camera_az_abs_diff.reserve(rig.cameras.size());
        for (const auto& [name, off] : rig.cameras) {
            row.camera_az_abs_diff.push_back(
                azimuth_absolute_diff(normalize_deg(row.bearing + off), sun.azimuth));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace trackfuse
