#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arnav/geometry.hpp"
#include "arnav/models.hpp"

namespace arnav {

/// The three annotation conditions a session can be run under.
enum class ExperimentKind { no_feedback, holographic_feedback, physical_feedback };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& s);

/// Frame window (inclusive) during which the user held the probe on one
/// fiducial. Windows are explicit session data, not inferred from dwell.
struct Annotation {
    std::string fiducial_label;
    std::int64_t start_frame = 0;
    std::int64_t end_frame = 0;
};

/// One fiducial's outcome: where the user's tip sat, how still it was,
/// and how far it landed from ground truth (the target error).
struct FiducialMeasurement {
    std::string fiducial_label;
    Point3 tip_mean_lab;
    double tip_sd = 0.0;        // 3D RMS sample SD of the tip over the window
    double target_error = 0.0;  // |tip_mean_lab - ground truth|
    int n_observations = 0;
    bool single_observation = false;  // tip_sd has zero degrees of freedom
};

enum class TipErrorAggregate { maximum, mean };

struct TrialResult {
    std::string trial_id;
    ExperimentKind kind = ExperimentKind::no_feedback;
    double error_mean = 0.0;  // mean target error over fiducials
    double error_sd = 0.0;    // sample SD of target errors
    double tip_error = 0.0;   // aggregated tip_sd (max by default)
    double gt_error = 0.0;    // ground-truth localization uncertainty
    int n_fiducials = 0;
    // Raw per-fiducial target errors, kept so experiments can pool exactly.
    std::vector<double> fiducial_errors;
};

struct ExperimentAverages {
    double error = 0.0;      // arithmetic mean of trial error_means
    double sd_pooled = 0.0;  // sqrt(mean of trial variances) - the table's SD cell
    double sd_arithmetic = 0.0;
    double tip_error = 0.0;
    double gt_error = 0.0;
};

struct PooledStats {
    double mean = 0.0;
    double sd = 0.0;
    int n = 0;
};

struct ExperimentSummary {
    ExperimentKind kind = ExperimentKind::no_feedback;
    std::vector<TrialResult> trials;
    ExperimentAverages averages;
    // Fiducial-level pooling for the Z-tests. Exact when every trial carries
    // its raw errors; otherwise approximated from the summaries (mean of
    // trial means, RMS of trial SDs) and flagged via pooled_from_raw.
    PooledStats pooled;
    bool pooled_from_raw = false;
};

/// Aggregates the tip observations of one annotation window against the
/// ground-truth position of that fiducial. Throws EmptyWindow when no
/// observation falls in the window; a single observation yields tip_sd = 0
/// and sets single_observation.
FiducialMeasurement measure_fiducial(const std::vector<TipObservation>& window,
                                     const std::string& fiducial_label,
                                     const Point3& ground_truth);

/// Collapses one session's fiducial measurements into a Table-2-style row.
/// Throws InsufficientMeasurements with fewer than 2 measurements.
TrialResult summarize_trial(const std::vector<FiducialMeasurement>& measurements,
                            double gt_uncertainty, const std::string& trial_id,
                            ExperimentKind kind,
                            TipErrorAggregate aggregate = TipErrorAggregate::maximum);

/// Column averages plus pooled fiducial-level statistics across trials of a
/// single experiment kind. Throws MixedExperimentKinds otherwise.
ExperimentSummary summarize_experiment(const std::vector<TrialResult>& trials);

}  // namespace arnav
