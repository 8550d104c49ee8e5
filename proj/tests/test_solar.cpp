#include <doctest.h>

#include <cmath>

#include "trackfuse/errors.hpp"
#include "trackfuse/geodesy.hpp"
#include "trackfuse/solar.hpp"

using namespace trackfuse;

namespace {

// PSA solar position algorithm (Blanco-Muriel et al. 2001), used here only
// as an independent cross-check of the primary NOAA implementation.
SunPosition psa_sun_position(Timestamp t, double lat_deg, double lon_deg) {
    const double rad = M_PI / 180.0;
    const double jd = static_cast<double>(t) / 86400.0 + 2440587.5;
    const double elapsed = jd - 2451545.0;

    const double omega = 2.1429 - 0.0010394594 * elapsed;
    const double mean_long = 4.8950630 + 0.017202791698 * elapsed;
    const double mean_anom = 6.2400600 + 0.0172019699 * elapsed;
    const double ecl_long = mean_long + 0.03341607 * std::sin(mean_anom) +
                            0.00034894 * std::sin(2.0 * mean_anom) - 0.0001134 -
                            0.0000203 * std::sin(omega);
    const double obliquity = 0.4090928 - 6.2140e-9 * elapsed + 0.0000396 * std::cos(omega);

    const double sin_ecl = std::sin(ecl_long);
    double ra = std::atan2(std::cos(obliquity) * sin_ecl, std::cos(ecl_long));
    if (ra < 0.0) ra += 2.0 * M_PI;
    const double dec = std::asin(std::sin(obliquity) * sin_ecl);

    double ut_hours = std::fmod(static_cast<double>(t), 86400.0) / 3600.0;
    if (ut_hours < 0.0) ut_hours += 24.0;
    const double gmst = 6.6974243242 + 0.0657098283 * elapsed + ut_hours;
    const double lmst = (gmst * 15.0 + lon_deg) * rad;
    double hour_angle = lmst - ra;

    const double lat = lat_deg * rad;
    const double zenith = std::acos(std::cos(lat) * std::cos(hour_angle) * std::cos(dec) +
                                    std::sin(dec) * std::sin(lat));
    double az = std::atan2(-std::sin(hour_angle),
                           std::tan(dec) * std::cos(lat) - std::sin(lat) * std::cos(hour_angle));
    az = normalize_deg(az / rad);
    const double parallax = 6371.01 / 149597890.0 * std::sin(zenith);
    SunPosition sp;
    sp.elevation = 90.0 - (zenith + parallax) / rad;
    sp.azimuth = az;
    return sp;
}

}  // namespace

TEST_CASE("noon equinox at the equator is near-zenith") {
    // 2018-03-20T12:07:00Z, equator, lon 0: the sun transits close to zenith.
    const Timestamp t = parse_iso8601("2018-03-20T12:07:00Z");
    const SunPosition sp = sun_position(t, 0.0, 0.0);
    CHECK(sp.elevation > 89.0);
}

TEST_CASE("mid-latitude fix matches the PSA oracle within 0.5 degrees") {
    const Timestamp base = parse_iso8601("2018-09-15T12:00:00Z");
    for (int h = 0; h < 24; h += 3) {
        const Timestamp t = base + h * 3600;
        const SunPosition ours = sun_position(t, 45.0, -61.5);
        const SunPosition ref = psa_sun_position(t, 45.0, -61.5);
        CHECK(std::abs(ours.elevation - ref.elevation) < 0.5);
        if (ours.elevation < 85.0) {
            CHECK(angular_abs_diff(ours.azimuth, ref.azimuth) < 0.5);
        }
    }
}

TEST_CASE("local midnight puts the sun below the horizon") {
    // ~04:06 UTC is local solar midnight at lon -61.5
    const Timestamp t = parse_iso8601("2018-09-15T04:06:00Z");
    CHECK(sun_position(t, 45.0, -61.5).elevation < 0.0);
}

TEST_CASE("azimuth continuity away from zenith") {
    const Timestamp base = parse_iso8601("2018-06-10T00:00:00Z");
    SunPosition prev = sun_position(base, 45.0, -61.5);
    for (int m = 1; m <= 24 * 60; ++m) {
        const SunPosition cur = sun_position(base + m * 60, 45.0, -61.5);
        if (cur.elevation < 85.0 && prev.elevation < 85.0) {
            CHECK(angular_abs_diff(cur.azimuth, prev.azimuth) < 1.0);
        }
        prev = cur;
    }
}

TEST_CASE("date validity span") {
    CHECK_THROWS_AS(sun_position(parse_iso8601("1949-12-31T23:59:59Z"), 45.0, -61.5),
                    UnsupportedDate);
    CHECK_THROWS_AS(sun_position(parse_iso8601("2101-01-01T00:00:00Z"), 45.0, -61.5),
                    UnsupportedDate);
    CHECK_NOTHROW(sun_position(parse_iso8601("1950-01-01T00:00:00Z"), 45.0, -61.5));
    CHECK_NOTHROW(sun_position(parse_iso8601("2100-12-31T23:59:59Z"), 45.0, -61.5));
}

TEST_CASE("camera rig parsing and view azimuth") {
    const CameraRig rig = parse_rig("port=270\nstarboard=90 # bubble window\n\ncenter=0\n");
    REQUIRE(rig.cameras.size() == 3);
    CHECK(rig.offset_of("port") == doctest::Approx(270.0));
    CHECK_THROWS_AS(rig.offset_of("nose"), UnknownCamera);
    CHECK_THROWS_AS(parse_rig("bad line\n"), FormatError);
    CHECK(parse_rig("c=-90\n").offset_of("c") == doctest::Approx(270.0));

    CHECK(view_azimuth(0.0, rig, "starboard") == doctest::Approx(90.0));
    CHECK(view_azimuth(350.0, rig, "starboard") == doctest::Approx(80.0));
    for (double b = 0.0; b < 360.0; b += 17.0) {
        CHECK(view_azimuth(b, rig, "center") == doctest::Approx(b));
    }
}

TEST_CASE("azimuth absolute diff basics") {
    CHECK(azimuth_absolute_diff(90, 90) == doctest::Approx(0.0));
    CHECK(azimuth_absolute_diff(0, 180) == doctest::Approx(180.0));
    CHECK(azimuth_absolute_diff(10, 350) == doctest::Approx(20.0));
}

TEST_CASE("feature rows over a straight northbound track") {
    FusedTrack fused;
    fused.flight_id = "f";
    fused.frame = {45.0, -61.5, 0.0};
    const Timestamp base = parse_iso8601("2018-09-15T15:00:00Z");
    for (int k = 0; k < 4; ++k) {
        SyntheticPoint p;
        p.t = base + 5 * k;
        p.x = 0.0;
        p.y = 250.0 * k;
        p.kind = PointKind::Fused;
        p.contributors = 1;
        fused.points.push_back(p);
    }
    const CameraRig rig = parse_rig("right=90\n");
    const auto rows = feature_rows(fused, rig);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
        CHECK(r.bearing == doctest::Approx(0.0).epsilon(1e-6));
        // view azimuth is 90; diff against the sun folds into [0, 180]
        const double expect = angular_abs_diff(90.0, r.sun_azimuth);
        CHECK(r.camera_az_abs_diff[0] == doctest::Approx(expect).epsilon(1e-9));
    }
    CHECK(!rows[0].carried);
    CHECK(rows[3].carried);  // last row reuses the previous bearing
}

TEST_CASE("degenerate consecutive points carry the bearing forward") {
    FusedTrack fused;
    fused.flight_id = "f";
    fused.frame = {45.0, -61.5, 0.0};
    const Timestamp base = parse_iso8601("2018-09-15T15:00:00Z");
    const double xs[] = {0.0, 100.0, 100.0, 300.0};
    for (int k = 0; k < 4; ++k) {
        SyntheticPoint p;
        p.t = base + 5 * k;
        p.x = xs[k];
        p.y = 0.0;
        fused.points.push_back(p);
    }
    const CameraRig rig = parse_rig("center=0\n");
    const auto rows = feature_rows(fused, rig);
    CHECK(!rows[0].carried);
    CHECK(rows[1].carried);
    CHECK(rows[1].bearing == doctest::Approx(90.0));
    CHECK(!rows[2].carried);

    // translation invariance of bearings
    FusedTrack moved = fused;
    for (auto& p : moved.points) {
        p.x += 1234.5;
        p.y -= 987.0;
    }
    const auto rows2 = feature_rows(moved, rig);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(rows2[k].bearing == doctest::Approx(rows[k].bearing).epsilon(1e-9));
    }

    FusedTrack tiny;
    tiny.flight_id = "f";
    tiny.frame = fused.frame;
    tiny.points.assign(1, fused.points[0]);
    CHECK_THROWS_AS(feature_rows(tiny, rig), InsufficientData);

    FusedTrack flat = fused;
    for (auto& p : flat.points) p.x = 0.0;
    CHECK_THROWS_AS(feature_rows(flat, rig), DegenerateBearing);
}
