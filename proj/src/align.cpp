#include "trackfuse/align.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "trackfuse/errors.hpp"

namespace trackfuse {

namespace {

struct Candidate {
    double dist;
    int offset;
    Timestamp t_o;
    Timestamp t_i;
};

// Better-candidate ordering: distance, then |offset|, then earlier O timestamp.
bool better(const Candidate& a, const Candidate& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (std::abs(a.offset) != std::abs(b.offset)) return std::abs(a.offset) < std::abs(b.offset);
    if (a.t_o != b.t_o) return a.t_o < b.t_o;
    return a.t_i < b.t_i;
}

}  // namespace

OffsetEstimate estimate_offset(const FlightBundle& bundle, const LocalFrame& frame,
                               const AlignOptions& opts) {
    if (bundle.o_track.points.empty() || bundle.i_track.points.empty()) {
        throw EmptyTrack{};
    }
    if (opts.window_s <= 0) throw ConfigError("window_s must be positive");

    std::vector<LocalPoint> o_pts, i_pts;
    o_pts.reserve(bundle.o_track.points.size());
    i_pts.reserve(bundle.i_track.points.size());
    for (const auto& p : bundle.o_track.points) o_pts.push_back(to_local(p, frame));
    for (const auto& p : bundle.i_track.points) i_pts.push_back(to_local(p, frame));

    std::vector<Candidate> kept;
    bool have_best = false;
    Candidate best{};

    // Both tracks are time-sorted; slide the I window along the O track.
    std::size_t lo = 0;
    for (const auto& o : o_pts) {
        while (lo < i_pts.size() && i_pts[lo].t < o.t - opts.window_s) ++lo;
        for (std::size_t j = lo; j < i_pts.size() && i_pts[j].t <= o.t + opts.window_s; ++j) {
            const auto& ip = i_pts[j];
            Candidate c{std::hypot(o.x - ip.x, o.y - ip.y),
                        static_cast<int>(o.t - ip.t), o.t, ip.t};
            if (!have_best || better(c, best)) {
                best = c;
                have_best = true;
            }
            if (opts.robust_k > 0) kept.push_back(c);
        }
    }
    if (!have_best) throw NoOverlap{};

    OffsetEstimate est;
    est.flight_id = bundle.flight_id;
    est.min_distance_m = best.dist;
    est.pair_t_o = best.t_o;
    est.pair_t_i = best.t_i;
    est.offset_seconds = best.offset;

    if (opts.robust_k > 0) {
        const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(opts.robust_k), kept.size());
        std::partial_sort(kept.begin(), kept.begin() + static_cast<std::ptrdiff_t>(k), kept.end(), better);
        std::vector<int> offs;
        offs.reserve(k);
        for (std::size_t i = 0; i < k; ++i) offs.push_back(kept[i].offset);
        std::sort(offs.begin(), offs.end());
        est.offset_seconds = offs[(offs.size() - 1) / 2];  // lower median, deterministic
    }
    return est;
}

Track apply_offset(const Track& track, const OffsetEstimate& est) {
    if (track.flight_id != est.flight_id) {
        throw FlightMismatch(track.flight_id, est.flight_id);
    }
    Track out = track;
    for (auto& p : out.points) p.t += est.offset_seconds;
    return out;
}

}  // namespace trackfuse
