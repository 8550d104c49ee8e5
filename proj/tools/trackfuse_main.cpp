// trackfuse: batch front-end for two-source GPS track fusion.
//
// Subcommands: offsets, fuse, filter, features, reject-stats, simulate,
// evaluate, pipeline. Exit codes: 0 success, 1 data error, 2 usage error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trackfuse/align.hpp"
#include "trackfuse/errors.hpp"
#include "trackfuse/fuse.hpp"
#include "trackfuse/geodesy.hpp"
#include "trackfuse/ingest.hpp"
#include "trackfuse/quality.hpp"
#include "trackfuse/sim.hpp"
#include "trackfuse/solar.hpp"

namespace fs = std::filesystem;
using namespace trackfuse;

namespace {

std::string g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

int verbosity() {
    const char* v = std::getenv("TRACKFUSE_VERBOSE");
    return v ? std::atoi(v) : 0;
}

void report_diagnostics(const ParseResult& res, const std::string& path) {
    for (const auto& d : res.rejected) {
        std::cerr << path << ": " << format_diagnostic(d) << "\n";
    }
    if (verbosity() > 0) {
        std::cerr << path << ": " << res.tracks.size() << " track(s) parsed, "
                  << res.rejected.size() << " row(s) rejected\n";
    }
}

// Track inputs shared by several subcommands: either one combined CSV or a
// per-source pair with declared sources.
struct TrackInputs {
    std::string combined;
    std::string ogps;
    std::string igps;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--input", combined, "combined track CSV (both sources)");
        cmd->add_option("--ogps", ogps, "O-GPS track CSV");
        cmd->add_option("--igps", igps, "I-GPS track CSV");
    }

    std::vector<Track> load() const {
        std::vector<Track> tracks;
        auto take = [&](const std::string& path, std::optional<Source> declared) {
            auto res = parse_track_file(read_file(path), declared);
            report_diagnostics(res, path);
            for (auto& t : res.tracks) tracks.push_back(std::move(t));
        };
        if (!combined.empty()) {
            take(combined, std::nullopt);
        } else {
            if (ogps.empty() || igps.empty()) {
                throw Error("provide --input, or both --ogps and --igps");
            }
            take(ogps, Source::OGps);
            take(igps, Source::IGps);
        }
        return tracks;
    }
};

std::vector<FlightBundle> load_bundles(const TrackInputs& in) {
    const BundleResult res = bundle(in.load());
    for (const auto& f : res.single_source) {
        std::cerr << "flight " << f << ": single source only, excluded from fusion\n";
    }
    return res.bundles;
}

struct FuseFlags {
    WeightParams params;
    AlignOptions align;

    void add_flags(CLI::App* cmd, bool with_align) {
        cmd->add_option("--w-ogps", params.w_ogps, "O-GPS source weight")->capture_default_str();
        cmd->add_option("--w-igps", params.w_igps, "I-GPS source weight")->capture_default_str();
        cmd->add_option("--w-synth", params.w_synth, "synthetic source weight")->capture_default_str();
        cmd->add_option("--w-temporal", params.w_temporal, "temporal weight per second")
            ->capture_default_str();
        cmd->add_option("--window", params.window_s, "fusion neighbor window, seconds")
            ->capture_default_str();
        cmd->add_option("--spacing", params.seed_spacing_s, "seed spacing, seconds")
            ->capture_default_str();
        if (with_align) {
            cmd->add_option("--offset-window", align.window_s, "offset search window, seconds")
                ->capture_default_str();
            cmd->add_option("--robust-k", align.robust_k,
                            "median offset of the k best pairs (0 = single best pair)")
                ->capture_default_str();
        }
    }
};

std::string offsets_csv(const std::vector<FlightBundle>& bundles, const AlignOptions& opts) {
    std::string out = "flight_id,min_distance_m,offset_seconds\n";
    for (const auto& b : bundles) {
        std::vector<GeoPoint> all = b.o_track.points;
        all.insert(all.end(), b.i_track.points.begin(), b.i_track.points.end());
        const OffsetEstimate est = estimate_offset(b, make_frame(all), opts);
        out += b.flight_id + "," + g9(est.min_distance_m) + "," +
               std::to_string(est.offset_seconds) + "\n";
    }
    return out;
}

std::string fused_csv(const std::vector<FusedTrack>& fused) {
    std::string out = "flight_id,timestamp,lat,lon,contributors\n";
    for (const auto& track : fused) {
        for (const auto& p : track.points) {
            LocalPoint lp;
            lp.x = p.x;
            lp.y = p.y;
            lp.z = p.z;
            lp.t = p.t;
            const GeoPoint geo = from_local(lp, track.frame, track.flight_id);
            out += track.flight_id + "," + format_iso8601(p.t) + "," + g9(geo.lat) + "," +
                   g9(geo.lon) + "," + std::to_string(p.contributors) + "\n";
        }
    }
    return out;
}

std::vector<FusedTrack> run_fusion(const std::vector<FlightBundle>& bundles,
                                   const FuseFlags& flags) {
    std::vector<FusedTrack> out;
    for (const auto& b : bundles) {
        std::vector<GeoPoint> all = b.o_track.points;
        all.insert(all.end(), b.i_track.points.begin(), b.i_track.points.end());
        const OffsetEstimate est = estimate_offset(b, make_frame(all), flags.align);
        out.push_back(fuse_track(b, est, flags.params));
    }
    return out;
}

// Parses a fused-track CSV back into per-flight FusedTracks.
std::vector<FusedTrack> parse_fused_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "flight_id,timestamp,lat,lon,contributors") {
        throw FormatError("fused CSV: bad header");
    }
    std::map<std::string, std::vector<GeoPoint>> by_flight;
    std::map<std::string, std::vector<int>> contribs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string flight, ts, lat, lon, contr;
        if (!std::getline(row, flight, ',') || !std::getline(row, ts, ',') ||
            !std::getline(row, lat, ',') || !std::getline(row, lon, ',') ||
            !std::getline(row, contr)) {
            throw FormatError("fused CSV: bad row '" + line + "'");
        }
        GeoPoint p;
        p.flight_id = flight;
        p.source = Source::Synthetic;
        p.t = parse_iso8601(ts);
        p.lat = std::stod(lat);
        p.lon = std::stod(lon);
        by_flight[flight].push_back(p);
        contribs[flight].push_back(std::stoi(contr));
    }
    std::vector<FusedTrack> out;
    for (auto& [flight, pts] : by_flight) {
        FusedTrack t;
        t.flight_id = flight;
        t.frame = make_frame(pts);
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const LocalPoint lp = to_local(pts[k], t.frame);
            SyntheticPoint sp;
            sp.t = lp.t;
            sp.x = lp.x;
            sp.y = lp.y;
            sp.z = lp.z;
            sp.kind = PointKind::Fused;
            sp.contributors = contribs[flight][k];
            t.points.push_back(sp);
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::string features_csv(const std::vector<FusedTrack>& fused, const CameraRig& rig) {
    std::string out = "flight_id,timestamp,bearing,carried,sun_azimuth,sun_elevation";
    for (const auto& [name, off] : rig.cameras) out += "," + name + "_az_abs_diff";
    out += "\n";
    for (const auto& track : fused) {
        for (const auto& row : feature_rows(track, rig)) {
            out += track.flight_id + "," + format_iso8601(row.t) + "," + g9(row.bearing) + "," +
                   (row.carried ? "1" : "0") + "," + g9(row.sun_azimuth) + "," +
                   g9(row.sun_elevation);
            for (const double d : row.camera_az_abs_diff) out += "," + g9(d);
            out += "\n";
        }
    }
    return out;
}

struct FilterOutputs {
    std::string retained_csv;
    std::string report_csv;
};

// Land filter then gap filter over one flight's points; first failing filter
// gets the attribution.
FilterOutputs run_filter(const std::vector<Track>& tracks, const LandSeaMask* mask,
                         double gap_threshold) {
    std::map<std::string, std::vector<GeoPoint>> by_flight;
    for (const auto& t : tracks) {
        auto& v = by_flight[t.flight_id];
        v.insert(v.end(), t.points.begin(), t.points.end());
    }
    std::vector<Track> retained_tracks;
    std::string report = "flight_id,total,removed_land,removed_gap,retained\n";
    for (auto& [flight, pts] : by_flight) {
        QualityReport rep;
        rep.flight_id = flight;
        rep.total = pts.size();

        std::vector<GeoPoint> after_land;
        if (mask) {
            auto res = land_filter(pts, *mask);
            rep.removed_land = res.removed.size();
            if (res.out_of_bounds > 0) {
                std::cerr << "flight " << flight << ": " << res.out_of_bounds
                          << " point(s) outside the mask bounds, treated as sea\n";
            }
            after_land = std::move(res.retained);
        } else {
            after_land = pts;
        }

        std::vector<Timestamp> geotags;
        for (const auto& p : pts) geotags.push_back(p.t);
        std::sort(geotags.begin(), geotags.end());
        std::vector<Timestamp> queries;
        for (const auto& p : after_land) queries.push_back(p.t);
        const GapFilterResult gap = gap_filter(queries, geotags, gap_threshold, true);
        rep.removed_gap = gap.removed.size();

        std::vector<GeoPoint> kept;
        {
            auto removed = gap.removed;
            std::sort(removed.begin(), removed.end());
            for (const auto& p : after_land) {
                const auto it = std::lower_bound(removed.begin(), removed.end(), p.t);
                if (it != removed.end() && *it == p.t) {
                    removed.erase(it);  // one removal per rejected query instant
                } else {
                    kept.push_back(p);
                }
            }
        }
        rep.retained = kept.size();

        report += flight + "," + std::to_string(rep.total) + "," +
                  std::to_string(rep.removed_land) + "," + std::to_string(rep.removed_gap) + "," +
                  std::to_string(rep.retained) + "\n";

        std::map<Source, Track> split;
        for (const auto& p : kept) {
            Track& t = split[p.source];
            t.flight_id = flight;
            t.source = p.source;
            t.points.push_back(p);
        }
        for (auto& [src, t] : split) {
            std::stable_sort(t.points.begin(), t.points.end(),
                             [](const GeoPoint& a, const GeoPoint& b) { return a.t < b.t; });
            retained_tracks.push_back(std::move(t));
        }
    }
    return {serialize_tracks(retained_tracks), report};
}

std::string truth_csv(const TruthTrack& truth, const std::string& flight_id) {
    std::string out = "flight_id,timestamp,lat,lon,bearing\n";
    for (const auto& s : truth.samples) {
        LocalPoint lp;
        lp.x = s.x;
        lp.y = s.y;
        lp.t = s.t;
        const GeoPoint geo = from_local(lp, truth.frame, flight_id);
        out += flight_id + "," + format_iso8601(s.t) + "," + g9(geo.lat) + "," + g9(geo.lon) +
               "," + g9(s.heading_deg) + "\n";
    }
    return out;
}

TruthTrack parse_truth_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "flight_id,timestamp,lat,lon,bearing") {
        throw FormatError("truth CSV: bad header");
    }
    std::vector<GeoPoint> pts;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string flight, ts, lat, lon, brg;
        if (!std::getline(row, flight, ',') || !std::getline(row, ts, ',') ||
            !std::getline(row, lat, ',') || !std::getline(row, lon, ',') ||
            !std::getline(row, brg)) {
            throw FormatError("truth CSV: bad row '" + line + "'");
        }
        GeoPoint p;
        p.flight_id = flight;
        p.t = parse_iso8601(ts);
        p.lat = std::stod(lat);
        p.lon = std::stod(lon);
        pts.push_back(p);
    }
    if (pts.empty()) throw EmptyInput("truth CSV has no rows");
    TruthTrack truth;
    truth.frame = make_frame(pts);
    for (const auto& p : pts) {
        const LocalPoint lp = to_local(p, truth.frame);
        truth.samples.push_back({lp.t, lp.x, lp.y, 0.0});
    }
    std::sort(truth.samples.begin(), truth.samples.end(),
              [](const TruthSample& a, const TruthSample& b) { return a.t < b.t; });
    return truth;
}

// Every parameter of a run, written as sorted key=value lines.
struct Manifest {
    std::map<std::string, std::string> entries;

    void set(const std::string& key, const std::string& v) { entries[key] = v; }
    void set(const std::string& key, double v) { entries[key] = g9(v); }
    void set(const std::string& key, std::int64_t v) { entries[key] = std::to_string(v); }

    void add_weights(const WeightParams& p) {
        set("w_ogps", p.w_ogps);
        set("w_igps", p.w_igps);
        set("w_synth", p.w_synth);
        set("w_temporal", p.w_temporal);
        set("fuse_window_s", p.window_s);
        set("seed_spacing_s", p.seed_spacing_s);
    }
    void add_align(const AlignOptions& a) {
        set("offset_window_s", static_cast<std::int64_t>(a.window_s));
        set("robust_k", static_cast<std::int64_t>(a.robust_k));
    }

    std::string text() const {
        std::string out;
        for (const auto& [k, v] : entries) out += k + "=" + v + "\n";
        return out;
    }
};

void maybe_write_manifest(const std::string& path, const Manifest& m) {
    if (!path.empty()) write_file(path, m.text());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-source GPS track fusion toolkit"};
    app.require_subcommand(1);

    // --- offsets ---
    auto* offsets_cmd = app.add_subcommand("offsets", "estimate per-flight clock offsets");
    TrackInputs offsets_in;
    offsets_in.add_flags(offsets_cmd);
    AlignOptions offsets_opts;
    offsets_cmd->add_option("--window", offsets_opts.window_s, "search window, seconds")
        ->capture_default_str();
    offsets_cmd->add_option("--robust-k", offsets_opts.robust_k,
                            "median offset of the k best pairs (0 = single best pair)")
        ->capture_default_str();
    std::string offsets_out, offsets_manifest;
    offsets_cmd->add_option("--output,-o", offsets_out, "output CSV path")->required();
    offsets_cmd->add_option("--manifest", offsets_manifest, "run manifest path");

    // --- fuse ---
    auto* fuse_cmd = app.add_subcommand("fuse", "weighted moving-average fusion");
    TrackInputs fuse_in;
    fuse_in.add_flags(fuse_cmd);
    FuseFlags fuse_flags;
    fuse_flags.add_flags(fuse_cmd, true);
    std::string fuse_out, fuse_manifest;
    fuse_cmd->add_option("--output,-o", fuse_out, "output fused CSV path")->required();
    fuse_cmd->add_option("--manifest", fuse_manifest, "run manifest path");

    // --- filter ---
    auto* filter_cmd = app.add_subcommand("filter", "land and gap quality filters");
    std::string filter_input, filter_mask, filter_retained, filter_report, filter_manifest;
    double filter_gap = 43.75;
    filter_cmd->add_option("--input", filter_input, "track CSV")->required();
    filter_cmd->add_option("--mask", filter_mask, "land-sea mask file");
    filter_cmd->add_option("--gap-threshold", filter_gap, "bracket gap threshold, seconds")
        ->capture_default_str();
    filter_cmd->add_option("--retained", filter_retained, "retained track CSV path")->required();
    filter_cmd->add_option("--report", filter_report, "quality report CSV path")->required();
    filter_cmd->add_option("--manifest", filter_manifest, "run manifest path");

    // --- features ---
    auto* features_cmd = app.add_subcommand("features", "orientation and sun features");
    std::string features_fused, features_rig, features_out, features_manifest;
    features_cmd->add_option("--fused", features_fused, "fused track CSV")->required();
    features_cmd->add_option("--rig", features_rig, "camera rig config (name=offset lines)");
    features_cmd->add_option("--output,-o", features_out, "output feature CSV path")->required();
    features_cmd->add_option("--manifest", features_manifest, "run manifest path");

    // --- reject-stats ---
    auto* reject_cmd = app.add_subcommand("reject-stats", "neighbor-count five-number summaries");
    std::string reject_input, reject_queries, reject_out;
    double reject_half_window = 30.0;
    reject_cmd->add_option("--input", reject_input, "track CSV")->required();
    reject_cmd->add_option("--queries", reject_queries,
                           "file of ISO-8601 query instants, one per line (default: all points)");
    reject_cmd->add_option("--half-window", reject_half_window, "half window, seconds")
        ->capture_default_str();
    reject_cmd->add_option("--output,-o", reject_out, "output CSV path")->required();

    // --- simulate ---
    auto* sim_cmd = app.add_subcommand("simulate", "generate a ground-truth flight");
    SimConfig sim_cfg;
    std::string sim_out_dir, sim_start = "2018-09-15T12:00:00Z";
    sim_cmd->add_option("--seed", sim_cfg.seed)->capture_default_str();
    sim_cmd->add_option("--flight-id", sim_cfg.flight_id)->capture_default_str();
    sim_cmd->add_option("--start", sim_start, "first timestamp, ISO-8601")->capture_default_str();
    sim_cmd->add_option("--duration", sim_cfg.duration_s, "seconds")->capture_default_str();
    sim_cmd->add_option("--speed", sim_cfg.speed_mps, "m/s")->capture_default_str();
    sim_cmd->add_option("--origin-lat", sim_cfg.origin_lat)->capture_default_str();
    sim_cmd->add_option("--origin-lon", sim_cfg.origin_lon)->capture_default_str();
    sim_cmd->add_option("--initial-bearing", sim_cfg.initial_bearing_deg)->capture_default_str();
    sim_cmd->add_option("--turn-rate", sim_cfg.turn_rate_deg_s, "deg/s; 0 = straight flight")
        ->capture_default_str();
    sim_cmd->add_option("--mean-straight", sim_cfg.mean_straight_s, "mean straight-leg seconds")
        ->capture_default_str();
    sim_cmd->add_option("--turn-min", sim_cfg.turn_min_deg)->capture_default_str();
    sim_cmd->add_option("--turn-max", sim_cfg.turn_max_deg)->capture_default_str();
    sim_cmd->add_option("--ogps-rate", sim_cfg.ogps_rate_s)->capture_default_str();
    sim_cmd->add_option("--ogps-noise", sim_cfg.ogps_noise_m)->capture_default_str();
    sim_cmd->add_option("--igps-rate", sim_cfg.igps_mean_rate_s)->capture_default_str();
    sim_cmd->add_option("--igps-jitter", sim_cfg.igps_jitter_s)->capture_default_str();
    sim_cmd->add_option("--igps-noise", sim_cfg.igps_noise_m)->capture_default_str();
    sim_cmd->add_option("--igps-noise-df", sim_cfg.igps_noise_df)->capture_default_str();
    sim_cmd->add_option("--bias-prob", sim_cfg.bias_prob)->capture_default_str();
    sim_cmd->add_option("--bias-mag", sim_cfg.bias_mag_m)->capture_default_str();
    sim_cmd->add_option("--bias-duration", sim_cfg.bias_duration_s)->capture_default_str();
    sim_cmd->add_option("--clock-offset", sim_cfg.clock_offset_s, "seconds added to I-GPS clocks")
        ->capture_default_str();
    sim_cmd->add_option("--out-dir", sim_out_dir)->required();

    // --- evaluate ---
    auto* eval_cmd = app.add_subcommand("evaluate", "bearing error metrics against truth");
    std::string eval_truth, eval_fused, eval_out;
    eval_cmd->add_option("--truth", eval_truth, "truth CSV")->required();
    eval_cmd->add_option("--fused", eval_fused, "fused CSV")->required();
    eval_cmd->add_option("--output,-o", eval_out, "metrics CSV path")->required();

    // --- pipeline ---
    auto* pipe_cmd = app.add_subcommand("pipeline", "offsets -> fuse -> filter -> features");
    TrackInputs pipe_in;
    pipe_in.add_flags(pipe_cmd);
    FuseFlags pipe_flags;
    pipe_flags.add_flags(pipe_cmd, true);
    std::string pipe_mask, pipe_rig, pipe_out_dir;
    double pipe_gap = 43.75;
    pipe_cmd->add_option("--mask", pipe_mask, "land-sea mask file");
    pipe_cmd->add_option("--rig", pipe_rig, "camera rig config");
    pipe_cmd->add_option("--gap-threshold", pipe_gap)->capture_default_str();
    pipe_cmd->add_option("--out-dir", pipe_out_dir)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*offsets_cmd) {
            const auto bundles = load_bundles(offsets_in);
            write_file(offsets_out, offsets_csv(bundles, offsets_opts));
            Manifest m;
            m.set("subcommand", "offsets");
            m.add_align(offsets_opts);
            maybe_write_manifest(offsets_manifest, m);
        } else if (*fuse_cmd) {
            const auto bundles = load_bundles(fuse_in);
            write_file(fuse_out, fused_csv(run_fusion(bundles, fuse_flags)));
            Manifest m;
            m.set("subcommand", "fuse");
            m.add_weights(fuse_flags.params);
            m.add_align(fuse_flags.align);
            maybe_write_manifest(fuse_manifest, m);
        } else if (*filter_cmd) {
            auto parsed = parse_track_file(read_file(filter_input));
            report_diagnostics(parsed, filter_input);
            LandSeaMask mask;
            const bool have_mask = !filter_mask.empty();
            if (have_mask) mask = load_mask(read_file(filter_mask));
            const FilterOutputs out =
                run_filter(parsed.tracks, have_mask ? &mask : nullptr, filter_gap);
            write_file(filter_retained, out.retained_csv);
            write_file(filter_report, out.report_csv);
            Manifest m;
            m.set("subcommand", "filter");
            m.set("gap_threshold_s", filter_gap);
            m.set("mask", have_mask ? filter_mask : "(none)");
            maybe_write_manifest(filter_manifest, m);
        } else if (*features_cmd) {
            const auto fused = parse_fused_csv(read_file(features_fused));
            const CameraRig rig =
                features_rig.empty() ? parse_rig("center=0\n") : parse_rig(read_file(features_rig));
            write_file(features_out, features_csv(fused, rig));
            Manifest m;
            m.set("subcommand", "features");
            for (const auto& [name, off] : rig.cameras) m.set("camera_" + name, off);
            maybe_write_manifest(features_manifest, m);
        } else if (*reject_cmd) {
            auto parsed = parse_track_file(read_file(reject_input));
            report_diagnostics(parsed, reject_input);
            std::map<std::string, std::pair<std::vector<Timestamp>, std::vector<Timestamp>>> times;
            for (const auto& t : parsed.tracks) {
                for (const auto& p : t.points) {
                    if (p.source == Source::OGps) times[t.flight_id].first.push_back(p.t);
                    if (p.source == Source::IGps) times[t.flight_id].second.push_back(p.t);
                }
            }
            std::vector<Timestamp> explicit_queries;
            if (!reject_queries.empty()) {
                std::istringstream qin(read_file(reject_queries));
                std::string line;
                while (std::getline(qin, line)) {
                    if (!line.empty() && line.back() == '\r') line.pop_back();
                    if (!line.empty()) explicit_queries.push_back(parse_iso8601(line));
                }
                std::sort(explicit_queries.begin(), explicit_queries.end());
            }
            std::string out = "flight_id,source,min,q1,median,q3,max\n";
            for (auto& [flight, ts] : times) {
                auto& [o_times, i_times] = ts;
                std::sort(o_times.begin(), o_times.end());
                std::sort(i_times.begin(), i_times.end());
                std::vector<Timestamp> queries = explicit_queries;
                if (queries.empty()) {
                    queries = o_times;
                    queries.insert(queries.end(), i_times.begin(), i_times.end());
                    std::sort(queries.begin(), queries.end());
                }
                const auto counts = neighbor_counts(queries, o_times, i_times, reject_half_window);
                const CountSummary s = count_summary(counts);
                auto line = [&](const char* src, const FiveNumberSummary& f) {
                    return flight + "," + src + "," + g9(f.min) + "," + g9(f.q1) + "," +
                           g9(f.median) + "," + g9(f.q3) + "," + g9(f.max) + "\n";
                };
                out += line("ogps", s.ogps);
                out += line("igps", s.igps);
            }
            write_file(reject_out, out);
        } else if (*sim_cmd) {
            sim_cfg.start_t = parse_iso8601(sim_start);
            const SimResult sim = generate(sim_cfg);
            fs::create_directories(sim_out_dir);
            const fs::path dir(sim_out_dir);
            write_file((dir / "ogps.csv").string(), serialize_tracks({sim.bundle.o_track}));
            write_file((dir / "igps.csv").string(), serialize_tracks({sim.bundle.i_track}));
            write_file((dir / "truth.csv").string(), truth_csv(sim.truth, sim_cfg.flight_id));
            Manifest m;
            m.set("subcommand", "simulate");
            m.set("seed", static_cast<std::int64_t>(sim_cfg.seed));
            m.set("flight_id", sim_cfg.flight_id);
            m.set("start", sim_start);
            m.set("duration_s", sim_cfg.duration_s);
            m.set("speed_mps", sim_cfg.speed_mps);
            m.set("origin_lat", sim_cfg.origin_lat);
            m.set("origin_lon", sim_cfg.origin_lon);
            m.set("initial_bearing_deg", sim_cfg.initial_bearing_deg);
            m.set("turn_rate_deg_s", sim_cfg.turn_rate_deg_s);
            m.set("mean_straight_s", sim_cfg.mean_straight_s);
            m.set("turn_min_deg", sim_cfg.turn_min_deg);
            m.set("turn_max_deg", sim_cfg.turn_max_deg);
            m.set("ogps_rate_s", sim_cfg.ogps_rate_s);
            m.set("ogps_noise_m", sim_cfg.ogps_noise_m);
            m.set("igps_mean_rate_s", sim_cfg.igps_mean_rate_s);
            m.set("igps_jitter_s", sim_cfg.igps_jitter_s);
            m.set("igps_noise_m", sim_cfg.igps_noise_m);
            m.set("igps_noise_df", sim_cfg.igps_noise_df);
            m.set("bias_prob", sim_cfg.bias_prob);
            m.set("bias_mag_m", sim_cfg.bias_mag_m);
            m.set("bias_duration_s", sim_cfg.bias_duration_s);
            m.set("clock_offset_s", static_cast<std::int64_t>(sim_cfg.clock_offset_s));
            write_file((dir / "manifest.txt").string(), m.text());
        } else if (*eval_cmd) {
            const TruthTrack truth = parse_truth_csv(read_file(eval_truth));
            const auto fused = parse_fused_csv(read_file(eval_fused));
            std::string out = "flight_id,median_abs_err_deg,p90_abs_err_deg,rmse_deg\n";
            for (const auto& track : fused) {
                const BearingMetrics bm = evaluate_bearing(truth, track);
                out += track.flight_id + "," + g9(bm.median_abs_err_deg) + "," +
                       g9(bm.p90_abs_err_deg) + "," + g9(bm.rmse_deg) + "\n";
            }
            write_file(eval_out, out);
        } else if (*pipe_cmd) {
            fs::create_directories(pipe_out_dir);
            const fs::path dir(pipe_out_dir);
            const auto bundles = load_bundles(pipe_in);

            write_file((dir / "offsets.csv").string(), offsets_csv(bundles, pipe_flags.align));
            const auto fused = run_fusion(bundles, pipe_flags);
            const std::string fused_text = fused_csv(fused);
            write_file((dir / "fused.csv").string(), fused_text);

            LandSeaMask mask;
            const bool have_mask = !pipe_mask.empty();
            if (have_mask) mask = load_mask(read_file(pipe_mask));
            // filter the fused points against the raw geotag record
            auto reparsed = parse_fused_csv(fused_text);
            std::map<std::string, std::vector<Timestamp>> geotags;
            for (const auto& b : bundles) {
                auto& v = geotags[b.flight_id];
                for (const auto& p : b.o_track.points) v.push_back(p.t);
                for (const auto& p : b.i_track.points) v.push_back(p.t);
                std::sort(v.begin(), v.end());
            }
            std::string report = "flight_id,total,removed_land,removed_gap,retained\n";
            std::string retained_csv = "flight_id,timestamp,lat,lon,contributors\n";
            std::vector<FusedTrack> retained_tracks;
            for (const auto& track : reparsed) {
                QualityReport rep;
                rep.flight_id = track.flight_id;
                rep.total = track.points.size();
                FusedTrack kept;
                kept.flight_id = track.flight_id;
                kept.frame = track.frame;
                std::vector<SyntheticPoint> after_land;
                for (const auto& p : track.points) {
                    bool on_land = false;
                    if (have_mask) {
                        LocalPoint lp;
                        lp.x = p.x;
                        lp.y = p.y;
                        lp.z = p.z;
                        lp.t = p.t;
                        const GeoPoint geo = from_local(lp, track.frame, track.flight_id);
                        on_land = mask.in_bounds(geo.lat, geo.lon) && mask.is_land(geo.lat, geo.lon);
                    }
                    if (on_land) {
                        ++rep.removed_land;
                    } else {
                        after_land.push_back(p);
                    }
                }
                std::vector<Timestamp> queries;
                for (const auto& p : after_land) queries.push_back(p.t);
                const GapFilterResult gap =
                    gap_filter(queries, geotags[track.flight_id], pipe_gap);
                rep.removed_gap = gap.removed.size();
                auto removed = gap.removed;
                std::sort(removed.begin(), removed.end());
                for (const auto& p : after_land) {
                    const auto it = std::lower_bound(removed.begin(), removed.end(), p.t);
                    if (it != removed.end() && *it == p.t) {
                        removed.erase(it);
                    } else {
                        kept.points.push_back(p);
                    }
                }
                rep.retained = kept.points.size();
                report += track.flight_id + "," + std::to_string(rep.total) + "," +
                          std::to_string(rep.removed_land) + "," + std::to_string(rep.removed_gap) +
                          "," + std::to_string(rep.retained) + "\n";
                retained_csv += fused_csv({kept}).substr(
                    std::string("flight_id,timestamp,lat,lon,contributors\n").size());
                if (kept.points.size() >= 2) retained_tracks.push_back(std::move(kept));
            }
            write_file((dir / "report.csv").string(), report);
            write_file((dir / "retained.csv").string(), retained_csv);

            const CameraRig rig =
                pipe_rig.empty() ? parse_rig("center=0\n") : parse_rig(read_file(pipe_rig));
            write_file((dir / "features.csv").string(), features_csv(retained_tracks, rig));

            Manifest m;
            m.set("subcommand", "pipeline");
            m.add_weights(pipe_flags.params);
            m.add_align(pipe_flags.align);
            m.set("gap_threshold_s", pipe_gap);
            m.set("mask", have_mask ? pipe_mask : "(none)");
            m.set("rig", pipe_rig.empty() ? "(builtin center=0)" : pipe_rig);
            write_file((dir / "manifest.txt").string(), m.text());
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
