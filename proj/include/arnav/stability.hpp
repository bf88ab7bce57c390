#pragma once

#include <string>
#include <vector>

#include "arnav/frames.hpp"
#include "arnav/geometry.hpp"

namespace arnav {

/// Repeatability of one static marker across frames.
struct MarkerStability {
    std::string label;
    Point3 per_axis_sd;   // sample SD per axis, mm
    double rms_sd = 0.0;  // sqrt(sdx^2 + sdy^2 + sdz^2), mm
    int n_frames = 0;
};

/// Constancy of one inter-marker distance across frames.
struct PairDistanceStats {
    std::string label_a;
    std::string label_b;
    double mean = 0.0;      // mm
    double sd = 0.0;        // mm
    double variance = 0.0;  // mm^2 (reported alongside sd; see StabilityReport)
    int n_frames = 0;
};

struct StabilityReport {
    std::vector<MarkerStability> per_marker;
    int n_frames = 0;
    std::vector<PairDistanceStats> pairwise;
    // Both the max SD (mm) and max variance (mm^2) are reported because
    // published figures of this kind are quoted in either unit.
    double max_pairwise_sd = 0.0;
    double max_pairwise_variance = 0.0;
};

/// Per-axis sample SD (n-1 denominator) of each requested marker.
/// An empty `labels` means every label in the stream. Throws
/// InsufficientFrames when a requested label appears in fewer than 2 frames.
std::vector<MarkerStability> static_marker_sd(const MarkerFrameStream& frames,
                                              const std::vector<std::string>& labels = {});

/// Mean/SD/variance of every unordered pair distance of a rigid body's
/// markers across frames. With explicit `body_labels`, each pair must be
/// co-visible in >= 2 frames or InsufficientFrames is thrown; with an empty
/// set, all pairs co-visible in >= 2 frames are reported.
std::vector<PairDistanceStats> rigid_body_distance_spread(
    const MarkerFrameStream& frames, const std::vector<std::string>& body_labels = {});

StabilityReport analyze_stability(const MarkerFrameStream& frames,
                                  const std::vector<std::string>& labels = {},
                                  const std::vector<std::string>& body_labels = {});

}  // namespace arnav
