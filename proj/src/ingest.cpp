#include "trackfuse/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>

#include "trackfuse/errors.hpp"

namespace trackfuse {

namespace {

const char* kHeader = "flight_id,source,timestamp,lat,lon,alt";

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

bool parse_double(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::string fmt_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

struct NumberedPoint {
    GeoPoint p;
    std::size_t row;
};

}  // namespace

ParseResult parse_track_file(const std::string& text, std::optional<Source> declared_source) {
    if (text.empty()) throw EmptyInput("empty track file");

    std::vector<std::string> lines;
    {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t pos = text.find('\n', start);
            if (pos == std::string::npos) {
                if (start < text.size()) lines.push_back(text.substr(start));
                break;
            }
            std::string line = text.substr(start, pos - start);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(std::move(line));
            start = pos + 1;
        }
    }
    if (lines.empty()) throw EmptyInput("empty track file");
    if (lines[0] != kHeader) {
        throw FormatError("missing or malformed header, expected '" + std::string(kHeader) + "'");
    }

    ParseResult result;
    std::map<std::pair<std::string, Source>, std::vector<NumberedPoint>> groups;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty()) continue;
        const std::size_t row = i;  // header is row 0
        auto reject = [&](const char* field, std::string reason) {
            result.rejected.push_back({row, field, std::move(reason)});
        };

        auto fields = split(line, ',');
        if (fields.size() != 6) {
            reject("-", "expected 6 fields, got " + std::to_string(fields.size()));
            continue;
        }
        GeoPoint p;
        p.flight_id = fields[0];
        if (p.flight_id.empty()) {
            reject("flight_id", "empty");
            continue;
        }
        try {
            p.source = source_from_name(fields[1]);
        } catch (const FormatError& e) {
            reject("source", e.what());
            continue;
        }
        if (declared_source && p.source != *declared_source) {
            reject("source", std::string("row source '") + source_name(p.source) +
                                 "' conflicts with declared '" + source_name(*declared_source) + "'");
            continue;
        }
        try {
            p.t = parse_iso8601(fields[2]);
        } catch (const FormatError& e) {
            reject("timestamp", e.what());
            continue;
        }
        if (!parse_double(fields[3], p.lat)) {
            reject("lat", "not a number: '" + fields[3] + "'");
            continue;
        }
        if (p.lat < -90.0 || p.lat > 90.0) {
            reject("lat", "out of range [-90,90]: " + fields[3]);
            continue;
        }
        if (!parse_double(fields[4], p.lon)) {
            reject("lon", "not a number: '" + fields[4] + "'");
            continue;
        }
        if (p.lon < -180.0 || p.lon > 180.0) {
            reject("lon", "out of range [-180,180]: " + fields[4]);
            continue;
        }
        if (fields[5].empty()) {
            p.alt = 0.0;
        } else if (!parse_double(fields[5], p.alt)) {
            reject("alt", "not a number: '" + fields[5] + "'");
            continue;
        }
        groups[{p.flight_id, p.source}].push_back({std::move(p), row});
    }

    for (auto& [key, pts] : groups) {
        std::stable_sort(pts.begin(), pts.end(),
                         [](const NumberedPoint& a, const NumberedPoint& b) { return a.p.t < b.p.t; });
        Track track;
        track.flight_id = key.first;
        track.source = key.second;
        for (auto& np : pts) {
            if (!track.points.empty() && track.points.back().t == np.p.t) {
                // duplicate timestamp within one source/flight: keep the first
                result.rejected.push_back(
                    {np.row, "timestamp", "duplicate timestamp " + format_iso8601(np.p.t)});
                continue;
            }
            track.points.push_back(std::move(np.p));
        }
        result.tracks.push_back(std::move(track));
    }
    return result;
}

std::string serialize_tracks(const std::vector<Track>& tracks) {
    std::string out = kHeader;
    out += '\n';
    for (const auto& track : tracks) {
        for (const auto& p : track.points) {
            out += p.flight_id;
            out += ',';
            out += source_name(p.source);
            out += ',';
            out += format_iso8601(p.t);
            out += ',';
            out += fmt_g9(p.lat);
            out += ',';
            out += fmt_g9(p.lon);
            out += ',';
            out += fmt_g9(p.alt);
            out += '\n';
        }
    }
    return out;
}

BundleResult bundle(const std::vector<Track>& tracks) {
    std::map<std::string, FlightBundle> by_flight;
    std::map<std::string, int> have;  // bit 1 = O, bit 2 = I
    for (const auto& t : tracks) {
        if (t.points.empty()) continue;
        auto& b = by_flight[t.flight_id];
        b.flight_id = t.flight_id;
        if (t.source == Source::OGps) {
            b.o_track = t;
            have[t.flight_id] |= 1;
        } else if (t.source == Source::IGps) {
            b.i_track = t;
            have[t.flight_id] |= 2;
        }
    }
    BundleResult out;
    for (auto& [flight, b] : by_flight) {
        if (have[flight] == 3) {
            out.bundles.push_back(std::move(b));
        } else {
            out.single_source.push_back(flight);
        }
    }
    return out;
}

std::string format_diagnostic(const RowDiagnostic& d) {
    return "row=" + std::to_string(d.row) + " field=" + d.field + " reason=" + d.reason;
}

}  // namespace trackfuse
