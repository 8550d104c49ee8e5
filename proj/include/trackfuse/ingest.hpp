#ifndef TRACKFUSE_INGEST_HPP
#define TRACKFUSE_INGEST_HPP

#include <optional>
#include <string>
#include <vector>

#include "trackfuse/types.hpp"

namespace trackfuse {

// One rejected row, carrying enough to print `row=<n> field=<name> reason=<text>`.
struct RowDiagnostic {
    std::size_t row = 0;  // 1-based data-row index (header is row 0)
    std::string field;
    std::string reason;
};

struct ParseResult {
    std::vector<Track> tracks;            // one per flight_id, points time-sorted
    std::vector<RowDiagnostic> rejected;  // malformed or duplicate-timestamp rows
};

// Parses the canonical track CSV (header `flight_id,source,timestamp,lat,lon,alt`).
// When declared_source is set, a row whose source differs is rejected.
// Throws FormatError on a missing/garbled header, EmptyInput on an empty file.
ParseResult parse_track_file(const std::string& text,
                             std::optional<Source> declared_source = std::nullopt);

// Canonical serialization; parse_track_file of the output reproduces the track.
std::string serialize_tracks(const std::vector<Track>& tracks);

struct BundleResult {
    std::vector<FlightBundle> bundles;        // sorted by flight_id
    std::vector<std::string> single_source;   // flights excluded for lacking a counterpart
};

// Pairs O-GPS and I-GPS tracks by flight_id.
BundleResult bundle(const std::vector<Track>& tracks);

std::string format_diagnostic(const RowDiagnostic& d);

}  // namespace trackfuse

#endif
