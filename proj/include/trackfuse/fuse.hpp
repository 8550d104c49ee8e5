#ifndef TRACKFUSE_FUSE_HPP
#define TRACKFUSE_FUSE_HPP

#include <span>
#include <vector>

#include "trackfuse/align.hpp"
#include "trackfuse/geodesy.hpp"
#include "trackfuse/types.hpp"

namespace trackfuse {

struct WeightParams {
    double w_ogps = 8.0;
    double w_igps = 5.0;
    double w_synth = 5.0;
    double w_temporal = 0.5;  // per second
    double window_s = 40.0;   // inclusive neighbor window
    double seed_spacing_s = 5.0;
};

enum class PointKind { Seed, Fused };

struct SyntheticPoint {
    Timestamp t = 0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;  // carried from the seed, excluded from weighting
    PointKind kind = PointKind::Seed;
    int contributors = 0;  // neighbors used; the seed itself always counts
};

struct FusedTrack {
    std::string flight_id;
    LocalFrame frame;
    std::vector<SyntheticPoint> points;  // uniform seed_spacing_s spacing
};

// W_source / (W_temporal * |t_diff| + 1).
double neighbor_weight(Source source, double t_diff_s, const WeightParams& params);

// Linear interpolation of the O-GPS track at fixed spacing, first to last
// O timestamp. Throws InsufficientData for fewer than 2 points.
std::vector<SyntheticPoint> linear_seed(std::span<const LocalPoint> o_track,
                                        double spacing_s);

// A weighting participant: any O-GPS, offset-applied I-GPS, or seed point.
struct Neighbor {
    double x = 0.0;
    double y = 0.0;
    Timestamp t = 0;
    Source source = Source::OGps;
};

// Weighted centroid of the neighbors; the caller guarantees the seed itself
// is among them.
SyntheticPoint fuse_point(const SyntheticPoint& seed, std::span<const Neighbor> neighbors,
                          const WeightParams& params);

// Full per-flight fusion: offset-apply I-GPS, convert to the flight frame,
// seed along O-GPS, fuse every seed against all in-window points.
FusedTrack fuse_track(const FlightBundle& bundle, const OffsetEstimate& est,
                      const WeightParams& params = {});

}  // namespace trackfuse

#endif
