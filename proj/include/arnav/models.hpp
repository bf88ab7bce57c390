#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arnav/frames.hpp"
#include "arnav/geometry.hpp"
#include "arnav/registration.hpp"

namespace arnav {

/// Tracked probe as reconstructed from its CT scan: marker-sphere centers
/// plus the tip vertex, all in the probe's CT frame.
struct ProbeModel {
    LabeledPointSet markers_ct;
    Point3 tip_ct;
    // Frames with fewer matched markers than this are rejected. The paper's
    // probe carries 5 spheres; 3 is the geometric floor.
    int min_markers = 3;
};

/// Head phantom in its CT frame: tracked markers and the target fiducials.
struct PhantomModel {
    LabeledPointSet markers_ct;
    LabeledPointSet fiducials_ct;
};

/// Probe tip localized in the lab frame for one tracker frame.
struct TipObservation {
    std::int64_t frame_id = 0;
    Point3 tip_lab;
    double registration_fre = 0.0;  // fre_mean of this frame's probe registration
};

/// Registers the probe's CT markers onto the frame's observations (matched
/// by label) and transports tip_ct into the lab frame. Frames may contain
/// non-probe markers; they are ignored. Propagates
/// InsufficientCorrespondence / DegenerateConfiguration from the solver.
TipObservation locate_tip(const Frame& frame, const ProbeModel& probe);

/// Bump detector for ground_truth_fiducials: a marker whose mean position
/// over the leading `window` frames differs from its mean over the trailing
/// `window` frames by more than multiplier * noise_sd has moved, so the
/// phantom was not static during acquisition.
struct StaticGuard {
    double noise_sd = 0.0;    // configured tracker noise, mm (0 = exact data)
    double multiplier = 5.0;
    int window = 10;
};

/// Lab-frame ground truth: per-frame phantom registration applied to every
/// CT fiducial, averaged across frames.
struct GroundTruth {
    LabeledPointSet fiducials_lab;  // across-frame mean positions
    // 3D RMS sample SD of each transformed fiducial across frames
    // (zero when only one frame is given).
    std::vector<std::pair<std::string, double>> uncertainty;
    double max_uncertainty = 0.0;
    double fre_mean = 0.0;  // phantom registration FRE averaged over frames
    int n_frames = 0;

    double uncertainty_for(const std::string& label) const;
};

GroundTruth ground_truth_fiducials(const MarkerFrameStream& frames,
                                   const PhantomModel& phantom,
                                   const StaticGuard& guard = {});

}  // namespace arnav
