#include "arnav/drift.hpp"

namespace arnav {

namespace {
constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;
}

AnchorBinding bind(const RigidTransform& anchor_in_world,
                   const RigidTransform& hologram_in_world) {
    return {compose(invert(anchor_in_world), hologram_in_world)};
}

RigidTransform relocalize(const AnchorBinding& binding,
                          const RigidTransform& anchor_in_world_now) {
    return compose(anchor_in_world_now, binding.hologram_in_anchor);
}

std::vector<DriftSample> run_drift_trace(const std::vector<PoseEvent>& events,
                                         const AnchorBinding& binding,
                                         const RigidTransform& true_hologram_in_anchor) {
    for (std::size_t i = 1; i < events.size(); ++i)
        if (events[i].time_s < events[i - 1].time_s)
            throw UnorderedEvents("drift trace event " + std::to_string(i) +
                                  " goes back in time");

    RigidTransform drift;  // accumulated world-frame drift since bind
    // The hologram starts where the bind put it (anchor at the origin).
    RigidTransform hologram = binding.hologram_in_anchor;

    std::vector<DriftSample> samples;
    samples.reserve(events.size());
    for (const auto& event : events) {
        if (event.kind == PoseEventKind::drift_step) {
            drift = compose(event.pose_or_perturbation, drift);
        } else {
            hologram = relocalize(binding, event.pose_or_perturbation);
        }
        // Where the hologram should be: the physical anchor as currently
        // expressed in the drifted world frame, times the true relation.
        const RigidTransform truth = compose(drift, true_hologram_in_anchor);

        DriftSample s;
        s.time_s = event.time_s;
        s.kind = event.kind;
        s.translation_mm = (hologram.translation() - truth.translation()).norm();
        s.rotation_deg = rotation_distance(hologram, truth) * kRadToDeg;
        samples.push_back(s);
    }
    return samples;
}

}  // namespace arnav
