#pragma once

#include <vector>

#include "arnav/geometry.hpp"

namespace arnav {

/// The hologram-to-anchor relation captured at registration time. Both are
/// rigidly fixed in the room, so this transform is conserved no matter how
/// the device's world frame drifts.
struct AnchorBinding {
    RigidTransform hologram_in_anchor;
};

/// Records the relative transform: hologram_in_anchor = anchor^-1 * hologram.
AnchorBinding bind(const RigidTransform& anchor_in_world,
                   const RigidTransform& hologram_in_world);

/// Restores the hologram's world pose from a fresh anchor observation:
/// hologram_in_world_now = anchor_in_world_now * hologram_in_anchor.
RigidTransform relocalize(const AnchorBinding& binding,
                          const RigidTransform& anchor_in_world_now);

enum class PoseEventKind { anchor_detected, drift_step };

/// One step of a drift trace. For drift_step the transform is a world-frame
/// perturbation (composed on the left of the accumulated drift); for
/// anchor_detected it is the observed anchor pose in the current (drifted)
/// world frame.
struct PoseEvent {
    double time_s = 0.0;
    PoseEventKind kind = PoseEventKind::drift_step;
    RigidTransform pose_or_perturbation;
};

/// Hologram-vs-truth displacement after one trace event.
struct DriftSample {
    double time_s = 0.0;
    PoseEventKind kind = PoseEventKind::drift_step;
    double translation_mm = 0.0;
    double rotation_deg = 0.0;
};

/// Replays a drift trace and reports, per event, the displacement between
/// the hologram pose the device holds and the true pose (the physical
/// anchor, wherever it currently appears in the drifted world frame,
/// composed with true_hologram_in_anchor).
///
/// Convention: the anchor's true pose at bind time is the world origin, so
/// a noiseless trace carries anchor_detected poses equal to the accumulated
/// drift. Events must be time-ordered (UnorderedEvents otherwise).
std::vector<DriftSample> run_drift_trace(const std::vector<PoseEvent>& events,
                                         const AnchorBinding& binding,
                                         const RigidTransform& true_hologram_in_anchor);

}  // namespace arnav
