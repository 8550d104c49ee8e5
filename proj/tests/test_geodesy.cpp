#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "trackfuse/errors.hpp"
#include "trackfuse/geodesy.hpp"

using namespace trackfuse;

namespace {

GeoPoint geo(double lat, double lon, double alt = 0.0) {
    GeoPoint p;
    p.flight_id = "t";
    p.lat = lat;
    p.lon = lon;
    p.alt = alt;
    return p;
}

LocalPoint lp(double x, double y) {
    LocalPoint p;
    p.x = x;
    p.y = y;
    return p;
}

// Meridian arc length between two latitudes by Simpson quadrature of the
// meridional radius of curvature. Independent of the ENU conversion path.
double meridian_arc_m(double lat0_deg, double lat1_deg) {
    auto m_radius = [](double lat_rad) {
        const double s = std::sin(lat_rad);
        return kWgs84A * (1.0 - kWgs84E2) / std::pow(1.0 - kWgs84E2 * s * s, 1.5);
    };
    const double a = lat0_deg * M_PI / 180.0, b = lat1_deg * M_PI / 180.0;
    const int n = 200;  // even
    const double h = (b - a) / n;
    double sum = m_radius(a) + m_radius(b);
    for (int i = 1; i < n; ++i) sum += m_radius(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Parallel arc length at a fixed latitude.
double parallel_arc_m(double lat_deg, double dlon_deg) {
    const double lat = lat_deg * M_PI / 180.0;
    const double n = kWgs84A / std::sqrt(1.0 - kWgs84E2 * std::sin(lat) * std::sin(lat));
    return dlon_deg * M_PI / 180.0 * n * std::cos(lat);
}

}  // namespace

TEST_CASE("make_frame centroids") {
    std::vector<GeoPoint> one{geo(45.0, -60.0)};
    LocalFrame f = make_frame(one);
    CHECK(f.origin_lat == doctest::Approx(45.0));
    CHECK(f.origin_lon == doctest::Approx(-60.0));

    std::vector<GeoPoint> two{geo(44.0, -60.0), geo(46.0, -60.0)};
    f = make_frame(two);
    CHECK(f.origin_lat == doctest::Approx(45.0));

    // survey-box corners
    std::vector<GeoPoint> corners{geo(41, -55), geo(41, -68), geo(49, -55), geo(49, -68)};
    f = make_frame(corners);
    CHECK(f.origin_lat == doctest::Approx(45.0));
    CHECK(f.origin_lon == doctest::Approx(-61.5));

    CHECK_THROWS_AS(make_frame(std::vector<GeoPoint>{}), EmptyTrack);
}

TEST_CASE("to_local maps origin to zero and matches arc oracles") {
    const LocalFrame f{45.0, -60.0, 0.0};
    const LocalPoint at_origin = to_local(geo(45.0, -60.0), f);
    CHECK(std::abs(at_origin.x) < 1e-9);
    CHECK(std::abs(at_origin.y) < 1e-9);
    CHECK(std::abs(at_origin.z) < 1e-9);

    // 0.01 deg north: y close to the meridian arc (oracle: 1111.3188 m).
    const LocalPoint north = to_local(geo(45.01, -60.0), f);
    CHECK(north.y == doctest::Approx(meridian_arc_m(45.0, 45.01)).epsilon(1e-4));
    CHECK(std::abs(north.x) < 1e-6);

    // 0.01 deg east: x close to the parallel arc (oracle: 788.4684 m).
    const LocalPoint east = to_local(geo(45.0, -59.99), f);
    CHECK(east.x == doctest::Approx(parallel_arc_m(45.0, 0.01)).epsilon(1e-4));
    CHECK(std::abs(east.y) < 0.05);  // small normal-section curvature drop only

    CHECK_THROWS_AS(to_local(geo(50.0, -60.0), f), FrameRangeExceeded);
}

TEST_CASE("from_local inverse and sign conventions") {
    const LocalFrame f{45.0, -60.0, 0.0};
    const GeoPoint back = from_local(lp(0.0, 0.0), f);
    CHECK(back.lat == doctest::Approx(45.0).epsilon(1e-12));
    CHECK(back.lon == doctest::Approx(-60.0).epsilon(1e-12));

    const GeoPoint east = from_local(lp(1000.0, 0.0), f);
    CHECK(east.lon > -60.0);
    // the tangent plane dips below the ellipsoid off-origin, so the latitude
    // moves only at second order (~x^2 / 2R expressed in degrees)
    CHECK(std::abs(east.lat - 45.0) < 1e-5);

    LocalPoint far;
    far.x = 600000.0;
    CHECK_THROWS_AS(from_local(far, f), FrameRangeExceeded);
}

TEST_CASE("round-trip over the survey box stays below 1e-9 degrees") {
    const LocalFrame f{45.0, -61.5, 0.0};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> lat(41.0, 49.0);
    std::uniform_real_distribution<double> lon(-68.0, -55.0);
    std::uniform_real_distribution<double> alt(0.0, 3000.0);
    for (int i = 0; i < 2000; ++i) {
        const GeoPoint p = geo(lat(rng), lon(rng), alt(rng));
        GeoPoint q;
        try {
            q = from_local(to_local(p, f), f);
        } catch (const FrameRangeExceeded&) {
            continue;  // box corners can exceed the 500 km bound
        }
        CHECK(std::abs(q.lat - p.lat) < 1e-9);
        CHECK(std::abs(q.lon - p.lon) < 1e-9);
        CHECK(std::abs(q.alt - p.alt) < 1e-3);
    }
}

TEST_CASE("bearing basics") {
    CHECK(bearing(lp(0, 0), lp(0, 100)) == doctest::Approx(0.0));
    CHECK(bearing(lp(0, 0), lp(100, 0)) == doctest::Approx(90.0));
    CHECK(bearing(lp(0, 0), lp(-100, -100)) == doctest::Approx(225.0));
    CHECK_THROWS_AS(bearing(lp(1, 1), lp(1, 1)), DegenerateBearing);
}

TEST_CASE("bearing properties") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> coord(-5000.0, 5000.0);
    std::uniform_real_distribution<double> theta(0.0, 360.0);
    for (int i = 0; i < 500; ++i) {
        const LocalPoint a = lp(coord(rng), coord(rng));
        LocalPoint b = lp(coord(rng), coord(rng));
        if (std::hypot(b.x - a.x, b.y - a.y) <= 1e-6) continue;
        const double fwd = bearing(a, b);
        // reverse differs by exactly 180 mod 360
        CHECK(angular_abs_diff(fwd, bearing(b, a)) == doctest::Approx(180.0).epsilon(1e-9));
        // translation invariance
        const double dx = coord(rng), dy = coord(rng);
        CHECK(bearing(lp(a.x + dx, a.y + dy), lp(b.x + dx, b.y + dy)) ==
              doctest::Approx(fwd).epsilon(1e-9));
        // rotating both points by theta adds theta (mod 360)
        const double th = theta(rng) * M_PI / 180.0;
        auto rot = [&](const LocalPoint& p) {
            // clockwise rotation adds to a clockwise-from-north bearing
            return lp(p.x * std::cos(th) + p.y * std::sin(th),
                      -p.x * std::sin(th) + p.y * std::cos(th));
        };
        const double rotated = bearing(rot(a), rot(b));
        CHECK(angular_abs_diff(rotated, fwd + th * 180.0 / M_PI) < 1e-6);
    }
}

TEST_CASE("angular_abs_diff") {
    CHECK(angular_abs_diff(10, 350) == doctest::Approx(20.0));
    CHECK(angular_abs_diff(90, 90) == doctest::Approx(0.0));
    CHECK(angular_abs_diff(0, 180) == doctest::Approx(180.0));
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> deg(-720.0, 720.0);
    for (int i = 0; i < 500; ++i) {
        const double a = deg(rng), b = deg(rng);
        const double d = angular_abs_diff(a, b);
        CHECK(d >= 0.0);
        CHECK(d <= 180.0);
        CHECK(d == doctest::Approx(angular_abs_diff(b, a)));
        CHECK(angular_abs_diff(a, a + 360.0) < 1e-9);
    }
}
