#include "arnav/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "arnav/log.hpp"

namespace arnav {

TipObservation locate_tip(const Frame& frame, const ProbeModel& probe) {
    const RegistrationResult reg = solve_rigid(probe.markers_ct, frame.observations);
    const auto matched = reg.n_correspondences();
    if (matched < static_cast<std::size_t>(probe.min_markers))
        throw InsufficientCorrespondence(
            "frame " + std::to_string(frame.frame_id) + " matches only " +
            std::to_string(matched) + " probe markers (minimum " +
            std::to_string(probe.min_markers) + ")");
    if (matched < probe.markers_ct.size())
        log_warn("frame " + std::to_string(frame.frame_id) + ": only " +
                 std::to_string(matched) + "/" +
                 std::to_string(probe.markers_ct.size()) + " probe markers visible");

    TipObservation obs;
    obs.frame_id = frame.frame_id;
    obs.tip_lab = apply(reg.transform, probe.tip_ct);
    obs.registration_fre = reg.fre_mean;
    return obs;
}

double GroundTruth::uncertainty_for(const std::string& label) const {
    for (const auto& [l, u] : uncertainty)
        if (l == label) return u;
    throw ValidationError("no ground-truth uncertainty for fiducial '" + label + "'");
}

namespace {

// Mean positions of the first and last `window` frames of a marker's track.
void check_static(const std::string& label, const std::vector<Eigen::Vector3d>& track,
                  const StaticGuard& guard) {
    if (track.size() < 2) return;
    const std::size_t w = std::min<std::size_t>(
        std::max(1, guard.window), track.size() / 2 == 0 ? 1 : track.size() / 2);
    Eigen::Vector3d head = Eigen::Vector3d::Zero();
    Eigen::Vector3d tail = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < w; ++i) {
        head += track[i];
        tail += track[track.size() - 1 - i];
    }
    const double moved = (tail - head).norm() / static_cast<double>(w);
    const double threshold = guard.multiplier * guard.noise_sd;
    if (moved > threshold)
        throw NonStaticPhantom("phantom marker '" + label + "' moved " +
                               std::to_string(moved) + " mm during acquisition " +
                               "(threshold " + std::to_string(threshold) + " mm)");
}

}  // namespace

GroundTruth ground_truth_fiducials(const MarkerFrameStream& frames,
                                   const PhantomModel& phantom,
                                   const StaticGuard& guard) {
    if (frames.empty())
        throw ValidationError("ground_truth_fiducials: empty frame stream");
    validate_point_set(phantom.markers_ct, "phantom markers");
    validate_point_set(phantom.fiducials_ct, "phantom fiducials");

    // Static-phantom guard runs first so a bumped acquisition is reported as
    // such rather than as inflated uncertainty.
    for (const auto& marker : phantom.markers_ct.entries) {
        std::vector<Eigen::Vector3d> track;
        track.reserve(frames.size());
        for (const auto& f : frames.frames)
            if (const Point3* p = f.observations.find(marker.label))
                track.push_back(p->vec());
        check_static(marker.label, track, guard);
    }

    const std::size_t n_fid = phantom.fiducials_ct.size();
    std::vector<Eigen::Vector3d> sum(n_fid, Eigen::Vector3d::Zero());
    std::vector<Eigen::Vector3d> sum_sq(n_fid, Eigen::Vector3d::Zero());
    double fre_sum = 0.0;

    for (const auto& frame : frames.frames) {
        const RegistrationResult reg = solve_rigid(phantom.markers_ct, frame.observations);
        fre_sum += reg.fre_mean;
        for (std::size_t i = 0; i < n_fid; ++i) {
            const Eigen::Vector3d q =
                apply(reg.transform, phantom.fiducials_ct.entries[i].point.vec());
            sum[i] += q;
            sum_sq[i] += q.cwiseProduct(q);
        }
    }

    GroundTruth gt;
    gt.n_frames = static_cast<int>(frames.size());
    gt.fre_mean = fre_sum / frames.size();
    const double n = static_cast<double>(frames.size());
    for (std::size_t i = 0; i < n_fid; ++i) {
        const std::string& label = phantom.fiducials_ct.entries[i].label;
        const Eigen::Vector3d mean = sum[i] / n;
        gt.fiducials_lab.add(label, Point3::of(mean));
        double sd = 0.0;
        if (frames.size() >= 2) {
            // Per-axis sample variance from moments; 3D RMS SD.
            const Eigen::Vector3d var =
                (sum_sq[i] - n * mean.cwiseProduct(mean)).cwiseMax(0.0) / (n - 1.0);
            sd = std::sqrt(var.sum());
        }
        gt.uncertainty.emplace_back(label, sd);
        gt.max_uncertainty = std::max(gt.max_uncertainty, sd);
    }
    return gt;
}

}  // namespace arnav
