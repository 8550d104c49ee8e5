#include "trackfuse/fuse.hpp"

#include <algorithm>
#include <cmath>

#include "trackfuse/errors.hpp"

namespace trackfuse {

double neighbor_weight(Source source, double t_diff_s, const WeightParams& params) {
    double w_source = 0.0;
    switch (source) {
        case Source::OGps: w_source = params.w_ogps; break;
        case Source::IGps: w_source = params.w_igps; break;
        case Source::Synthetic: w_source = params.w_synth; break;
    }
    return w_source / (params.w_temporal * std::abs(t_diff_s) + 1.0);
}

std::vector<SyntheticPoint> linear_seed(std::span<const LocalPoint> o_track, double spacing_s) {
    if (o_track.size() < 2) throw InsufficientData("linear seed needs at least 2 O-GPS points");
    const auto spacing = static_cast<Timestamp>(std::llround(spacing_s));
    if (spacing < 1) throw ConfigError("seed spacing must be >= 1 second");

    std::vector<SyntheticPoint> seeds;
    const Timestamp t0 = o_track.front().t;
    const Timestamp t1 = o_track.back().t;
    std::size_t seg = 0;  // o_track[seg].t <= t < o_track[seg+1].t
    for (Timestamp t = t0; t <= t1; t += spacing) {
        while (seg + 2 < o_track.size() && o_track[seg + 1].t <= t) ++seg;
        const LocalPoint& a = o_track[seg];
        const LocalPoint& b = o_track[seg + 1];
        SyntheticPoint s;
        s.t = t;
        s.kind = PointKind::Seed;
        if (t == a.t) {
            s.x = a.x;
            s.y = a.y;
            s.z = a.z;
        } else if (t == b.t) {
            s.x = b.x;
            s.y = b.y;
            s.z = b.z;
        } else {
            const double u = static_cast<double>(t - a.t) / static_cast<double>(b.t - a.t);
            s.x = a.x + u * (b.x - a.x);
            s.y = a.y + u * (b.y - a.y);
            s.z = a.z + u * (b.z - a.z);
        }
        seeds.push_back(s);
    }
    return seeds;
}

SyntheticPoint fuse_point(const SyntheticPoint& seed, std::span<const Neighbor> neighbors,
                          const WeightParams& params) {
    double wx = 0.0, wy = 0.0, wsum = 0.0;
    for (const auto& n : neighbors) {
        const double w = neighbor_weight(n.source, static_cast<double>(n.t - seed.t), params);
        wx += w * n.x;
        wy += w * n.y;
        wsum += w;
    }
    SyntheticPoint out;
    out.t = seed.t;
    out.kind = PointKind::Fused;
    out.x = wx / wsum;
    out.y = wy / wsum;
    out.z = seed.z;
    out.contributors = static_cast<int>(neighbors.size());
    return out;
}

FusedTrack fuse_track(const FlightBundle& bundle, const OffsetEstimate& est,
                      const WeightParams& params) {
    if (bundle.o_track.points.empty() || bundle.i_track.points.empty()) throw EmptyTrack{};
    const Track i_shifted = apply_offset(bundle.i_track, est);

    std::vector<GeoPoint> all;
    all.reserve(bundle.o_track.points.size() + i_shifted.points.size());
    all.insert(all.end(), bundle.o_track.points.begin(), bundle.o_track.points.end());
    all.insert(all.end(), i_shifted.points.begin(), i_shifted.points.end());
    const LocalFrame frame = make_frame(all);

    std::vector<LocalPoint> o_local;
    o_local.reserve(bundle.o_track.points.size());
    for (const auto& p : bundle.o_track.points) o_local.push_back(to_local(p, frame));

    const auto seeds = linear_seed(o_local, params.seed_spacing_s);

    std::vector<Neighbor> pool;
    pool.reserve(all.size() + seeds.size());
    for (const auto& p : o_local) pool.push_back({p.x, p.y, p.t, Source::OGps});
    for (const auto& p : i_shifted.points) {
        const LocalPoint lp = to_local(p, frame);
        pool.push_back({lp.x, lp.y, lp.t, Source::IGps});
    }
    for (const auto& s : seeds) pool.push_back({s.x, s.y, s.t, Source::Synthetic});
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Neighbor& a, const Neighbor& b) { return a.t < b.t; });

    const auto window = static_cast<Timestamp>(std::llround(params.window_s));
    FusedTrack fused;
    fused.flight_id = bundle.flight_id;
    fused.frame = frame;
    fused.points.reserve(seeds.size());

    std::size_t lo = 0;
    for (const auto& seed : seeds) {
        while (lo < pool.size() && pool[lo].t < seed.t - window) ++lo;
        std::size_t hi = lo;
        while (hi < pool.size() && pool[hi].t <= seed.t + window) ++hi;
        fused.points.push_back(
            fuse_point(seed, std::span<const Neighbor>(pool.data() + lo, hi - lo), params));
    }
    return fused;
}

}  // namespace trackfuse
