#include "trackfuse/quality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "trackfuse/errors.hpp"

namespace trackfuse {

namespace {

std::size_t cell_index(double v, double v_min, double v_max, double cell_deg, std::size_t n) {
    auto idx = static_cast<std::ptrdiff_t>(std::floor((v - v_min) / cell_deg));
    if (idx < 0) idx = 0;
    if (idx >= static_cast<std::ptrdiff_t>(n)) idx = static_cast<std::ptrdiff_t>(n) - 1;
    (void)v_max;
    return static_cast<std::size_t>(idx);
}

double median_of(std::span<const double> sorted) {
    const std::size_t n = sorted.size();
    return (sorted[(n - 1) / 2] + sorted[n / 2]) / 2.0;
}

}  // namespace

bool LandSeaMask::in_bounds(double lat, double lon) const {
    return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
}

bool LandSeaMask::is_land(double lat, double lon) const {
    const std::size_t r = cell_index(lat, lat_min, lat_max, cell_deg, rows);
    const std::size_t c = cell_index(lon, lon_min, lon_max, cell_deg, cols);
    return cells[r * cols + c] != 0;
}

LandSeaMask load_mask(const std::string& bytes) {
    const std::size_t eol = bytes.find('\n');
    if (eol == std::string::npos) throw FormatError("mask: missing header line");
    const std::string header = bytes.substr(0, eol);
    LandSeaMask m;
    char tag[16];
    if (std::sscanf(header.c_str(), "%15s %lf %lf %lf %lf %lf", tag, &m.lat_min, &m.lat_max,
                    &m.lon_min, &m.lon_max, &m.cell_deg) != 6 ||
        std::string(tag) != "TFMASK1") {
        throw FormatError("mask: malformed header '" + header + "'");
    }
    if (m.cell_deg <= 0 || m.lat_max <= m.lat_min || m.lon_max <= m.lon_min) {
        throw FormatError("mask: inconsistent bounds");
    }
    m.rows = static_cast<std::size_t>(std::ceil((m.lat_max - m.lat_min) / m.cell_deg - 1e-9));
    m.cols = static_cast<std::size_t>(std::ceil((m.lon_max - m.lon_min) / m.cell_deg - 1e-9));
    const std::size_t expect = m.rows * m.cols;
    if (bytes.size() - eol - 1 != expect) {
        throw FormatError("mask: expected " + std::to_string(expect) + " cells, got " +
                          std::to_string(bytes.size() - eol - 1));
    }
    m.cells.assign(bytes.begin() + static_cast<std::ptrdiff_t>(eol) + 1, bytes.end());
    for (auto& c : m.cells) {
        if (c != 0 && c != 1) throw FormatError("mask: cell byte must be 0 or 1");
    }
    return m;
}

std::string save_mask(const LandSeaMask& mask) {
    char header[160];
    std::snprintf(header, sizeof header, "TFMASK1 %.9g %.9g %.9g %.9g %.9g\n", mask.lat_min,
                  mask.lat_max, mask.lon_min, mask.lon_max, mask.cell_deg);
    std::string out = header;
    out.append(mask.cells.begin(), mask.cells.end());
    return out;
}

LandSeaMask sea_mask(double lat_min, double lat_max, double lon_min, double lon_max,
                     double cell_deg) {
    LandSeaMask m;
    m.lat_min = lat_min;
    m.lat_max = lat_max;
    m.lon_min = lon_min;
    m.lon_max = lon_max;
    m.cell_deg = cell_deg;
    m.rows = static_cast<std::size_t>(std::ceil((lat_max - lat_min) / cell_deg - 1e-9));
    m.cols = static_cast<std::size_t>(std::ceil((lon_max - lon_min) / cell_deg - 1e-9));
    m.cells.assign(m.rows * m.cols, 0);
    return m;
}

LandFilterResult land_filter(std::span<const GeoPoint> points, const LandSeaMask& mask) {
    LandFilterResult out;
    for (const auto& p : points) {
        if (!mask.in_bounds(p.lat, p.lon)) {
            ++out.out_of_bounds;
            out.retained.push_back(p);
        } else if (mask.is_land(p.lat, p.lon)) {
            out.removed.push_back(p);
        } else {
            out.retained.push_back(p);
        }
    }
    return out;
}

GapFilterResult gap_filter(std::span<const Timestamp> query_times,
                           std::span<const Timestamp> geotag_times, double threshold_s,
                           bool exclude_equal) {
    if (geotag_times.empty()) throw NoGeotags{};
    GapFilterResult out;
    for (const Timestamp q : query_times) {
        const auto lb = std::lower_bound(geotag_times.begin(), geotag_times.end(), q);
        const auto ub = std::upper_bound(geotag_times.begin(), geotag_times.end(), q);
        std::size_t eq = static_cast<std::size_t>(ub - lb);
        if (exclude_equal && eq > 0) --eq;
        bool keep;
        if (eq > 0) {
            keep = true;  // a geotag sits exactly at the query instant
        } else {
            const bool has_before = lb != geotag_times.begin();
            const bool has_after = ub != geotag_times.end();
            if (!has_before || !has_after) {
                keep = false;
            } else {
                const Timestamp before = *(lb - 1);
                const Timestamp after = *ub;
                keep = static_cast<double>(after - before) <= threshold_s;
            }
        }
        (keep ? out.retained : out.removed).push_back(q);
    }
    return out;
}

std::vector<NeighborCounts> neighbor_counts(std::span<const Timestamp> query_times,
                                            std::span<const Timestamp> o_times,
                                            std::span<const Timestamp> i_times,
                                            double half_window_s) {
    auto count_in = [half_window_s](std::span<const Timestamp> times, Timestamp q) {
        const auto lo_t = static_cast<Timestamp>(std::ceil(static_cast<double>(q) - half_window_s));
        const auto hi_t = static_cast<Timestamp>(std::floor(static_cast<double>(q) + half_window_s));
        const auto lo = std::lower_bound(times.begin(), times.end(), lo_t);
        const auto hi = std::upper_bound(times.begin(), times.end(), hi_t);
        return static_cast<std::size_t>(hi - lo);
    };
    std::vector<NeighborCounts> out;
    out.reserve(query_times.size());
    for (const Timestamp q : query_times) {
        out.push_back({q, count_in(o_times, q), count_in(i_times, q)});
    }
    return out;
}

FiveNumberSummary five_number_summary(std::vector<double> values) {
    if (values.empty()) throw EmptyInput("five-number summary of nothing");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    FiveNumberSummary s;
    s.min = values.front();
    s.max = values.back();
    s.median = median_of(values);
    // Tukey hinges: halves include the median element for odd n.
    const std::size_t half = (n + 1) / 2;
    s.q1 = median_of(std::span<const double>(values.data(), half));
    s.q3 = median_of(std::span<const double>(values.data() + (n - half), half));
    return s;
}

CountSummary count_summary(std::span<const NeighborCounts> counts) {
    if (counts.empty()) throw EmptyInput("count summary of nothing");
    std::vector<double> o, i;
    o.reserve(counts.size());
    i.reserve(counts.size());
    for (const auto& c : counts) {
        o.push_back(static_cast<double>(c.n_ogps));
        i.push_back(static_cast<double>(c.n_igps));
    }
    return {five_number_summary(std::move(o)), five_number_summary(std::move(i))};
}

}  // namespace trackfuse
