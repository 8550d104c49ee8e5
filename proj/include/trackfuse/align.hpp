#ifndef TRACKFUSE_ALIGN_HPP
#define TRACKFUSE_ALIGN_HPP

#include "trackfuse/geodesy.hpp"
#include "trackfuse/types.hpp"

namespace trackfuse {

// Per-flight clock offset between the two sources, applied to I-GPS timestamps.
struct OffsetEstimate {
    std::string flight_id;
    int offset_seconds = 0;       // t_o - t_i of the minimum-distance pair
    double min_distance_m = 0.0;  // planar distance of that pair
    Timestamp pair_t_o = 0;
    Timestamp pair_t_i = 0;
};

struct AlignOptions {
    int window_s = 60;  // pair search bound on |t_o - t_i|
    int robust_k = 0;   // 0 = single best pair (default); k>0 = median offset of k best pairs
};

// Scans all cross-source pairs with |t_o - t_i| <= window_s for the smallest
// planar euclidean distance in the given frame. Ties break toward smaller
// |offset|, then earlier O-GPS timestamp. Throws NoOverlap when no pair
// falls inside the window.
OffsetEstimate estimate_offset(const FlightBundle& bundle, const LocalFrame& frame,
                               const AlignOptions& opts = {});

// Shifts every I-GPS timestamp by est.offset_seconds; positions untouched.
// Throws FlightMismatch when ids differ.
Track apply_offset(const Track& track, const OffsetEstimate& est);

}  // namespace trackfuse

#endif
