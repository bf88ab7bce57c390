#include "arnav/pipeline.hpp"

#include "arnav/models.hpp"

namespace arnav {

TrialDocument assess_session(const SceneConfig& scene,
                             const MarkerFrameStream& frames,
                             const std::vector<Annotation>& annotations,
                             ExperimentKind kind, const std::string& trial_id,
                             const AssessOptions& options) {
    if (annotations.empty())
        throw ValidationError("assess: no annotations given");

    StaticGuard guard;
    guard.noise_sd = scene.marker_noise_sd;
    guard.multiplier = scene.guard_multiplier;
    const GroundTruth gt = ground_truth_fiducials(frames, scene.phantom, guard);

    TrialDocument doc;
    double fre_sum = 0.0;
    std::size_t fre_count = 0;
    for (const auto& annotation : annotations) {
        const Point3* target = gt.fiducials_lab.find(annotation.fiducial_label);
        if (!target)
            throw ValidationError("annotation references unknown fiducial '" +
                                  annotation.fiducial_label + "'");

        std::vector<TipObservation> window;
        for (const auto& frame : frames.frames) {
            if (frame.frame_id < annotation.start_frame ||
                frame.frame_id > annotation.end_frame)
                continue;
            window.push_back(locate_tip(frame, scene.probe));
        }
        if (window.empty())
            throw EmptyWindow("no frames in window [" +
                              std::to_string(annotation.start_frame) + ", " +
                              std::to_string(annotation.end_frame) +
                              "] for fiducial '" + annotation.fiducial_label + "'");
        for (const auto& obs : window) fre_sum += obs.registration_fre;
        fre_count += window.size();

        doc.measurements.push_back(
            measure_fiducial(window, annotation.fiducial_label, *target));
    }

    doc.result = summarize_trial(doc.measurements, gt.max_uncertainty, trial_id,
                                 kind, options.tip_aggregate);
    doc.probe_fre_mean = fre_count > 0 ? fre_sum / fre_count : 0.0;
    doc.gt_fre_mean = gt.fre_mean;
    return doc;
}

}  // namespace arnav
