#include "trackfuse/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "trackfuse/errors.hpp"
#include "trackfuse/geodesy.hpp"

namespace trackfuse {

namespace {

constexpr double kDeg2Rad = M_PI / 180.0;

// One constant-turn-rate (possibly zero) leg of the truth trajectory.
struct Leg {
    double t0, t1;
    double x0, y0;        // position at t0
    double heading0_deg;  // heading at t0
    double rate_deg_s;
};

struct Motion {
    std::vector<Leg> legs;

    void position_at(double t, double& x, double& y, double speed) const {
        auto it = std::upper_bound(legs.begin(), legs.end(), t,
                                   [](double v, const Leg& l) { return v < l.t1; });
        const Leg& leg = it == legs.end() ? legs.back() : *it;
        const double tau = std::min(t, leg.t1) - leg.t0;
        const double h0 = leg.heading0_deg * kDeg2Rad;
        if (leg.rate_deg_s == 0.0) {
            x = leg.x0 + speed * tau * std::sin(h0);
            y = leg.y0 + speed * tau * std::cos(h0);
        } else {
            const double w = leg.rate_deg_s * kDeg2Rad;
            const double h1 = h0 + w * tau;
            x = leg.x0 + speed / w * (std::cos(h0) - std::cos(h1));
            y = leg.y0 + speed / w * (std::sin(h1) - std::sin(h0));
        }
    }

    double heading_at(double t) const {
        auto it = std::upper_bound(legs.begin(), legs.end(), t,
                                   [](double v, const Leg& l) { return v < l.t1; });
        const Leg& leg = it == legs.end() ? legs.back() : *it;
        const double tau = std::min(t, leg.t1) - leg.t0;
        return normalize_deg(leg.heading0_deg + leg.rate_deg_s * tau);
    }
};

Motion build_motion(const SimConfig& cfg, std::mt19937_64& rng) {
    Motion m;
    double t = 0.0, x = 0.0, y = 0.0, heading = cfg.initial_bearing_deg;
    std::uniform_real_distribution<double> leg_scale(0.5, 1.5);
    std::uniform_real_distribution<double> angle(cfg.turn_min_deg, cfg.turn_max_deg);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    bool turning = false;
    while (t < cfg.duration_s) {
        Leg leg;
        leg.t0 = t;
        leg.x0 = x;
        leg.y0 = y;
        leg.heading0_deg = heading;
        double dur;
        if (turning && cfg.turn_rate_deg_s > 0.0) {
            const double ang = angle(rng);
            const double sign = coin(rng) < 0.5 ? -1.0 : 1.0;
            leg.rate_deg_s = sign * cfg.turn_rate_deg_s;
            dur = ang / cfg.turn_rate_deg_s;
        } else {
            leg.rate_deg_s = 0.0;
            dur = leg_scale(rng) * cfg.mean_straight_s;
        }
        leg.t1 = std::min(t + dur, cfg.duration_s);
        m.legs.push_back(leg);
        m.position_at(leg.t1, x, y, cfg.speed_mps);
        heading = m.heading_at(leg.t1);
        t = leg.t1;
        turning = !turning && cfg.turn_rate_deg_s > 0.0;
    }
    // Open-ended tail so queries at exactly duration_s resolve.
    m.legs.back().t1 = cfg.duration_s;
    return m;
}

}  // namespace

SimResult generate(const SimConfig& cfg) {
    if (cfg.duration_s <= 0 || cfg.speed_mps <= 0 || cfg.ogps_rate_s <= 0 ||
        cfg.igps_mean_rate_s <= 0) {
        throw ConfigError("rates, speed and duration must be positive");
    }
    if (cfg.igps_jitter_s < 0 || cfg.igps_noise_m < 0 || cfg.ogps_noise_m < 0 ||
        cfg.bias_prob < 0 || cfg.bias_prob > 1) {
        throw ConfigError("noise parameters out of range");
    }

    std::mt19937_64 rng(cfg.seed);
    const Motion motion = build_motion(cfg, rng);

    SimResult out;
    out.truth.frame = {cfg.origin_lat, cfg.origin_lon, 0.0};
    const auto last_t = static_cast<Timestamp>(std::floor(cfg.duration_s));
    out.truth.samples.reserve(static_cast<std::size_t>(last_t) + 1);
    for (Timestamp t = 0; t <= last_t; ++t) {
        TruthSample s;
        s.t = cfg.start_t + t;
        motion.position_at(static_cast<double>(t), s.x, s.y, cfg.speed_mps);
        s.heading_deg = motion.heading_at(static_cast<double>(t));
        out.truth.samples.push_back(s);
    }

    auto to_geo = [&](double x, double y, Timestamp t, Source src) {
        LocalPoint lp;
        lp.x = x;
        lp.y = y;
        lp.z = 0.0;
        lp.t = t;
        lp.source = src;
        return from_local(lp, out.truth.frame, cfg.flight_id);
    };

    std::normal_distribution<double> o_noise(0.0, cfg.ogps_noise_m);
    out.bundle.flight_id = cfg.flight_id;
    out.bundle.o_track.flight_id = cfg.flight_id;
    out.bundle.o_track.source = Source::OGps;
    const auto o_rate = std::max<Timestamp>(1, static_cast<Timestamp>(std::llround(cfg.ogps_rate_s)));
    for (Timestamp t = 0; t <= last_t; t += o_rate) {
        double x, y;
        motion.position_at(static_cast<double>(t), x, y, cfg.speed_mps);
        if (cfg.ogps_noise_m > 0.0) {
            x += o_noise(rng);
            y += o_noise(rng);
        }
        out.bundle.o_track.points.push_back(to_geo(x, y, cfg.start_t + t, Source::OGps));
    }

    std::student_t_distribution<double> i_noise(cfg.igps_noise_df);
    std::uniform_real_distribution<double> jitter(-cfg.igps_jitter_s, cfg.igps_jitter_s);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<double> bias_dir(0.0, 2.0 * M_PI);
    out.bundle.i_track.flight_id = cfg.flight_id;
    out.bundle.i_track.source = Source::IGps;
    double bias_until = -1.0, bias_x = 0.0, bias_y = 0.0;
    Timestamp t = 1;
    while (t <= last_t) {
        double x, y;
        motion.position_at(static_cast<double>(t), x, y, cfg.speed_mps);
        if (cfg.igps_noise_m > 0.0) {
            x += cfg.igps_noise_m * i_noise(rng);
            y += cfg.igps_noise_m * i_noise(rng);
        }
        if (cfg.bias_prob > 0.0) {
            if (static_cast<double>(t) > bias_until && coin(rng) < cfg.bias_prob) {
                const double dir = bias_dir(rng);
                bias_x = cfg.bias_mag_m * std::sin(dir);
                bias_y = cfg.bias_mag_m * std::cos(dir);
                bias_until = static_cast<double>(t) + cfg.bias_duration_s;
            }
            if (static_cast<double>(t) <= bias_until) {
                x += bias_x;
                y += bias_y;
            }
        }
        out.bundle.i_track.points.push_back(
            to_geo(x, y, cfg.start_t + t + cfg.clock_offset_s, Source::IGps));
        const double step = cfg.igps_mean_rate_s + (cfg.igps_jitter_s > 0.0 ? jitter(rng) : 0.0);
        t += std::max<Timestamp>(1, static_cast<Timestamp>(std::llround(step)));
    }
    return out;
}

namespace {

std::vector<double> bearing_errors(const TruthTrack& truth, const LocalFrame& frame,
                                   std::span<const LocalPoint> samples) {
    if (truth.samples.empty()) throw NoOverlap("empty truth track");
    const Timestamp t0 = truth.samples.front().t;
    const Timestamp t1 = truth.samples.back().t;

    // Truth positions re-expressed in the evaluation frame, cached by index.
    std::vector<LocalPoint> truth_in_frame(truth.samples.size());
    std::vector<bool> ready(truth.samples.size(), false);
    auto find_truth = [&](Timestamp t) -> const LocalPoint* {
        const auto it = std::lower_bound(
            truth.samples.begin(), truth.samples.end(), t,
            [](const TruthSample& s, Timestamp v) { return s.t < v; });
        if (it == truth.samples.end() || it->t != t) return nullptr;
        const auto idx = static_cast<std::size_t>(it - truth.samples.begin());
        if (!ready[idx]) {
            LocalPoint lp;
            lp.x = it->x;
            lp.y = it->y;
            lp.t = t;
            const GeoPoint geo = from_local(lp, truth.frame);
            truth_in_frame[idx] = to_local(geo, frame);
            ready[idx] = true;
        }
        return &truth_in_frame[idx];
    };

    std::vector<double> errs;
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
        const auto& a = samples[k];
        const auto& b = samples[k + 1];
        if (a.t < t0 || b.t > t1) continue;
        const LocalPoint* ta = find_truth(a.t);
        const LocalPoint* tb = find_truth(b.t);
        if (!ta || !tb) continue;
        double chord, truth_chord;
        try {
            chord = bearing(a, b);
            truth_chord = bearing(*ta, *tb);
        } catch (const DegenerateBearing&) {
            continue;
        }
        errs.push_back(angular_abs_diff(chord, truth_chord));
    }
    if (errs.empty()) throw NoOverlap("no sample pairs inside the truth span");
    return errs;
}

}  // namespace

BearingMetrics evaluate_bearing(const TruthTrack& truth, const LocalFrame& frame,
                                std::span<const LocalPoint> samples) {
    std::vector<double> errs = bearing_errors(truth, frame, samples);
    std::sort(errs.begin(), errs.end());
    const std::size_t n = errs.size();
    BearingMetrics m;
    m.median_abs_err_deg = (errs[(n - 1) / 2] + errs[n / 2]) / 2.0;
    m.p90_abs_err_deg = errs[std::min(n - 1, static_cast<std::size_t>(std::ceil(0.9 * n)) - 1)];
    double ss = 0.0;
    for (double e : errs) ss += e * e;
    m.rmse_deg = std::sqrt(ss / static_cast<double>(n));
    return m;
}

BearingMetrics evaluate_bearing(const TruthTrack& truth, const FusedTrack& fused) {
    std::vector<LocalPoint> pts;
    pts.reserve(fused.points.size());
    for (const auto& s : fused.points) {
        LocalPoint p;
        p.x = s.x;
        p.y = s.y;
        p.z = s.z;
        p.t = s.t;
        p.source = Source::Synthetic;
        pts.push_back(p);
    }
    return evaluate_bearing(truth, fused.frame, pts);
}

}  // namespace trackfuse
