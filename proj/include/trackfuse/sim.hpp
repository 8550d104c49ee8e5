#ifndef TRACKFUSE_SIM_HPP
#define TRACKFUSE_SIM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "trackfuse/fuse.hpp"
#include "trackfuse/types.hpp"

namespace trackfuse {

struct SimConfig {
    std::uint64_t seed = 1;
    std::string flight_id = "sim";
    Timestamp start_t = 1537012800;  // 2018-09-15T12:00:00Z
    double duration_s = 600.0;
    double speed_mps = 60.0;
    double origin_lat = 45.0;
    double origin_lon = -61.5;
    double initial_bearing_deg = 90.0;

    // Random-turn schedule: straight legs of mean_straight_s, then a turn of
    // uniform magnitude in [turn_min_deg, turn_max_deg] (random sign) at
    // turn_rate_deg_s. turn_rate 0 disables turning entirely.
    double turn_rate_deg_s = 45.0 / 43.75;  // the canonical 45-degree turn preset
    double mean_straight_s = 120.0;
    double turn_min_deg = 30.0;
    double turn_max_deg = 90.0;

    double ogps_rate_s = 5.0;    // fixed sampling interval
    double ogps_noise_m = 0.5;   // Gaussian sigma per axis

    double igps_mean_rate_s = 2.0;  // mean interval
    double igps_jitter_s = 1.0;     // uniform +/- jitter on the interval
    double igps_noise_m = 3.0;      // Student-t scale per axis (multipath)
    double igps_noise_df = 3.0;     // Student-t degrees of freedom
    double bias_prob = 0.05;        // per sampled point, chance a sustained bias segment starts
    double bias_mag_m = 20.0;       // bias vector magnitude
    double bias_duration_s = 60.0;  // sustained multipath segment length

    int clock_offset_s = 0;  // added to reported I-GPS timestamps
};

struct TruthSample {
    Timestamp t = 0;
    double x = 0.0;
    double y = 0.0;
    double heading_deg = 0.0;  // exact heading from the motion model
};

struct TruthTrack {
    LocalFrame frame;
    std::vector<TruthSample> samples;  // 1-second grid from t = 0
};

struct SimResult {
    TruthTrack truth;
    FlightBundle bundle;
};

// Deterministic for a fixed config (including seed). Throws ConfigError on
// non-positive rates or durations.
SimResult generate(const SimConfig& config);

struct BearingMetrics {
    double median_abs_err_deg = 0.0;
    double p90_abs_err_deg = 0.0;
    double rmse_deg = 0.0;
};

// Absolute angular error between chord bearings of the sample sequence and
// chord bearings of the truth path over the same timestamp pairs, both
// expressed in the given frame. Throws NoOverlap when fewer than 2 samples
// fall inside the truth span.
BearingMetrics evaluate_bearing(const TruthTrack& truth, const LocalFrame& frame,
                                std::span<const LocalPoint> samples);
BearingMetrics evaluate_bearing(const TruthTrack& truth, const FusedTrack& fused);

}  // namespace trackfuse

#endif
