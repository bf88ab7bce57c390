#pragma once

#include <string>
#include <vector>

#include "arnav/assessment.hpp"
#include "arnav/frames.hpp"
#include "arnav/session_io.hpp"
#include "arnav/synthetic.hpp"

namespace arnav {

struct AssessOptions {
    TipErrorAggregate tip_aggregate = TipErrorAggregate::maximum;
};

/// The full per-session pipeline: phantom ground truth from every frame,
/// probe tip per frame inside each annotation window, one measurement per
/// fiducial, one Table-2-style row out. The trial's gt_error is the maximum
/// per-fiducial ground-truth uncertainty.
TrialDocument assess_session(const SceneConfig& scene,
                             const MarkerFrameStream& frames,
                             const std::vector<Annotation>& annotations,
                             ExperimentKind kind, const std::string& trial_id,
                             const AssessOptions& options = {});

}  // namespace arnav
