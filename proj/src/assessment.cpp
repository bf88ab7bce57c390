#include "arnav/assessment.hpp"

#include <algorithm>
#include <cmath>

namespace arnav {

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::no_feedback: return "no_feedback";
        case ExperimentKind::holographic_feedback: return "holographic_feedback";
        case ExperimentKind::physical_feedback: return "physical_feedback";
    }
    throw ValidationError("unknown experiment kind");
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
    if (s == "no_feedback") return ExperimentKind::no_feedback;
    if (s == "holographic_feedback") return ExperimentKind::holographic_feedback;
    if (s == "physical_feedback") return ExperimentKind::physical_feedback;
    throw ValidationError("unknown experiment kind '" + s +
                          "' (expected no_feedback, holographic_feedback or "
                          "physical_feedback)");
}

FiducialMeasurement measure_fiducial(const std::vector<TipObservation>& window,
                                     const std::string& fiducial_label,
                                     const Point3& ground_truth) {
    if (window.empty())
        throw EmptyWindow("no tip observations in the window for fiducial '" +
                          fiducial_label + "'");

    const double n = static_cast<double>(window.size());
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& o : window) mean += o.tip_lab.vec();
    mean /= n;

    FiducialMeasurement m;
    m.fiducial_label = fiducial_label;
    m.tip_mean_lab = Point3::of(mean);
    m.n_observations = static_cast<int>(window.size());
    m.single_observation = window.size() == 1;
    if (window.size() >= 2) {
        Eigen::Vector3d ssq = Eigen::Vector3d::Zero();
        for (const auto& o : window) {
            const Eigen::Vector3d d = o.tip_lab.vec() - mean;
            ssq += d.cwiseProduct(d);
        }
        m.tip_sd = std::sqrt(ssq.sum() / (n - 1.0));
    }
    m.target_error = (mean - ground_truth.vec()).norm();
    return m;
}

TrialResult summarize_trial(const std::vector<FiducialMeasurement>& measurements,
                            double gt_uncertainty, const std::string& trial_id,
                            ExperimentKind kind, TipErrorAggregate aggregate) {
    if (measurements.size() < 2)
        throw InsufficientMeasurements("trial '" + trial_id + "' has " +
                                       std::to_string(measurements.size()) +
                                       " measurements; need >= 2");

    TrialResult trial;
    trial.trial_id = trial_id;
    trial.kind = kind;
    trial.n_fiducials = static_cast<int>(measurements.size());
    trial.gt_error = gt_uncertainty;

    const double n = static_cast<double>(measurements.size());
    double sum = 0.0;
    for (const auto& m : measurements) {
        trial.fiducial_errors.push_back(m.target_error);
        sum += m.target_error;
    }
    trial.error_mean = sum / n;
    double ssq = 0.0;
    for (const auto& m : measurements) {
        const double d = m.target_error - trial.error_mean;
        ssq += d * d;
    }
    trial.error_sd = std::sqrt(ssq / (n - 1.0));

    if (aggregate == TipErrorAggregate::maximum) {
        for (const auto& m : measurements)
            trial.tip_error = std::max(trial.tip_error, m.tip_sd);
    } else {
        double tip_sum = 0.0;
        for (const auto& m : measurements) tip_sum += m.tip_sd;
        trial.tip_error = tip_sum / n;
    }
    return trial;
}

ExperimentSummary summarize_experiment(const std::vector<TrialResult>& trials) {
    if (trials.empty())
        throw ValidationError("summarize_experiment: no trials given");
    for (const auto& t : trials)
        if (t.kind != trials.front().kind)
            throw MixedExperimentKinds("trial '" + t.trial_id + "' is " +
                                       to_string(t.kind) + " but the experiment is " +
                                       to_string(trials.front().kind));

    ExperimentSummary summary;
    summary.kind = trials.front().kind;
    summary.trials = trials;

    const double k = static_cast<double>(trials.size());
    double var_sum = 0.0;
    for (const auto& t : trials) {
        summary.averages.error += t.error_mean / k;
        summary.averages.sd_arithmetic += t.error_sd / k;
        summary.averages.tip_error += t.tip_error / k;
        summary.averages.gt_error += t.gt_error / k;
        var_sum += t.error_sd * t.error_sd;
    }
    summary.averages.sd_pooled = std::sqrt(var_sum / k);

    // Exact pooling over the raw fiducial errors when every trial kept them.
    bool have_raw = true;
    for (const auto& t : trials)
        have_raw = have_raw &&
                   t.fiducial_errors.size() == static_cast<std::size_t>(t.n_fiducials) &&
                   t.n_fiducials > 0;
    int total = 0;
    for (const auto& t : trials) total += t.n_fiducials;
    summary.pooled.n = total;
    if (have_raw && total >= 2) {
        double sum = 0.0;
        for (const auto& t : trials)
            for (double e : t.fiducial_errors) sum += e;
        summary.pooled.mean = sum / total;
        double ssq = 0.0;
        for (const auto& t : trials)
            for (double e : t.fiducial_errors) {
                const double d = e - summary.pooled.mean;
                ssq += d * d;
            }
        summary.pooled.sd = std::sqrt(ssq / (total - 1.0));
        summary.pooled_from_raw = true;
    } else {
        summary.pooled.mean = summary.averages.error;
        summary.pooled.sd = summary.averages.sd_pooled;
        summary.pooled_from_raw = false;
    }
    return summary;
}

}  // namespace arnav
