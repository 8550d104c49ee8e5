#include <doctest.h>

#include <random>

#include "trackfuse/errors.hpp"
#include "trackfuse/time.hpp"

using namespace trackfuse;

TEST_CASE("iso8601 parse and format") {
    CHECK(parse_iso8601("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_iso8601("2018-09-15T12:00:00Z") == 1537012800);
    CHECK(format_iso8601(1537012800) == "2018-09-15T12:00:00Z");
    CHECK(parse_iso8601("2016-02-29T23:59:59Z") == 1456790399);
}

TEST_CASE("iso8601 rejects malformed input") {
    CHECK_THROWS_AS(parse_iso8601(""), FormatError);
    CHECK_THROWS_AS(parse_iso8601("2018-09-15 12:00:00Z"), FormatError);
    CHECK_THROWS_AS(parse_iso8601("2018-09-15T12:00:00"), FormatError);
    CHECK_THROWS_AS(parse_iso8601("2018-13-15T12:00:00Z"), FormatError);
    CHECK_THROWS_AS(parse_iso8601("2018-02-30T12:00:00Z"), FormatError);
    CHECK_THROWS_AS(parse_iso8601("2018-09-15T24:00:00Z"), FormatError);
    CHECK_THROWS_AS(parse_iso8601("2018-09-15Txx:00:00Z"), FormatError);
}

TEST_CASE("iso8601 round-trips random instants") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Timestamp> dist(-631152000, 4133980799);
    for (int i = 0; i < 2000; ++i) {
        const Timestamp t = dist(rng);
        CHECK(parse_iso8601(format_iso8601(t)) == t);
    }
}
