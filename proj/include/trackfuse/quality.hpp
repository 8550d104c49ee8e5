#ifndef TRACKFUSE_QUALITY_HPP
#define TRACKFUSE_QUALITY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trackfuse/types.hpp"

namespace trackfuse {

// Row-major bit grid, 1 = land. Row 0 starts at lat_min, column 0 at lon_min.
struct LandSeaMask {
    double lat_min = 0.0, lat_max = 0.0;
    double lon_min = 0.0, lon_max = 0.0;
    double cell_deg = 1.0;
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint8_t> cells;

    bool in_bounds(double lat, double lon) const;
    bool is_land(double lat, double lon) const;  // pre: in_bounds
};

// Mask file format: one text header line `TFMASK1 lat_min lat_max lon_min
// lon_max cell_deg` then rows*cols raw bytes (0x00 sea, 0x01 land).
LandSeaMask load_mask(const std::string& bytes);
std::string save_mask(const LandSeaMask& mask);

// All-sea mask covering the given bounds.
LandSeaMask sea_mask(double lat_min, double lat_max, double lon_min, double lon_max,
                     double cell_deg);

struct LandFilterResult {
    std::vector<GeoPoint> retained;
    std::vector<GeoPoint> removed;
    std::size_t out_of_bounds = 0;  // treated as sea and retained
};

LandFilterResult land_filter(std::span<const GeoPoint> points, const LandSeaMask& mask);

struct GapFilterResult {
    std::vector<Timestamp> retained;
    std::vector<Timestamp> removed;
};

// A query is removed iff the geotags bracketing it (nearest at-or-before and
// nearest at-or-after, any source) are more than threshold_s apart, or no
// bracket exists. When exclude_equal is set, one geotag exactly equal to the
// query is skipped, so a geotag can be tested against the rest of the set.
GapFilterResult gap_filter(std::span<const Timestamp> query_times,
                           std::span<const Timestamp> geotag_times,
                           double threshold_s = 43.75, bool exclude_equal = false);

struct QualityReport {
    std::string flight_id;
    std::size_t total = 0;
    std::size_t removed_land = 0;
    std::size_t removed_gap = 0;
    std::size_t retained = 0;
};

struct NeighborCounts {
    Timestamp t = 0;
    std::size_t n_ogps = 0;  // within +/- half_window_s, inclusive
    std::size_t n_igps = 0;
};

std::vector<NeighborCounts> neighbor_counts(std::span<const Timestamp> query_times,
                                            std::span<const Timestamp> o_times,
                                            std::span<const Timestamp> i_times,
                                            double half_window_s = 30.0);

// Five-number summary; quartiles by Tukey's inclusive hinges.
struct FiveNumberSummary {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

FiveNumberSummary five_number_summary(std::vector<double> values);

struct CountSummary {
    FiveNumberSummary ogps;
    FiveNumberSummary igps;
};

CountSummary count_summary(std::span<const NeighborCounts> counts);

}  // namespace trackfuse

#endif
