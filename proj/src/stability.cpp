#include "arnav/stability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace arnav {

namespace {

// Two-pass sample statistics: mean first, then squared deviations. Keeps
// cancellation error negligible over 1400+ frame streams.
struct TwoPass {
    static double mean(const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    }
    static double sample_variance(const std::vector<double>& v, double m) {
        double s = 0.0;
        for (double x : v) s += (x - m) * (x - m);
        return s / static_cast<double>(v.size() - 1);
    }
};

std::vector<std::string> all_labels(const MarkerFrameStream& frames) {
    std::set<std::string> seen;
    for (const auto& f : frames.frames)
        for (const auto& e : f.observations.entries) seen.insert(e.label);
    return {seen.begin(), seen.end()};
}

std::vector<Eigen::Vector3d> track_of(const MarkerFrameStream& frames,
                                      const std::string& label) {
    std::vector<Eigen::Vector3d> track;
    for (const auto& f : frames.frames)
        if (const Point3* p = f.observations.find(label)) track.push_back(p->vec());
    return track;
}

}  // namespace

std::vector<MarkerStability> static_marker_sd(const MarkerFrameStream& frames,
                                              const std::vector<std::string>& labels) {
    const std::vector<std::string> wanted = labels.empty() ? all_labels(frames) : labels;
    std::vector<MarkerStability> out;
    out.reserve(wanted.size());
    for (const auto& label : wanted) {
        const auto track = track_of(frames, label);
        if (track.size() < 2)
            throw InsufficientFrames("marker '" + label + "' appears in " +
                                     std::to_string(track.size()) +
                                     " frames; need >= 2");
        MarkerStability ms;
        ms.label = label;
        ms.n_frames = static_cast<int>(track.size());
        double rms_sq = 0.0;
        double sd_axis[3];
        for (int axis = 0; axis < 3; ++axis) {
            std::vector<double> coords;
            coords.reserve(track.size());
            for (const auto& p : track) coords.push_back(p(axis));
            const double m = TwoPass::mean(coords);
            const double var = TwoPass::sample_variance(coords, m);
            sd_axis[axis] = std::sqrt(var);
            rms_sq += var;
        }
        ms.per_axis_sd = Point3(sd_axis[0], sd_axis[1], sd_axis[2]);
        ms.rms_sd = std::sqrt(rms_sq);
        out.push_back(ms);
    }
    return out;
}

std::vector<PairDistanceStats> rigid_body_distance_spread(
    const MarkerFrameStream& frames, const std::vector<std::string>& body_labels) {
    const bool strict = !body_labels.empty();
    const std::vector<std::string> wanted =
        strict ? body_labels : all_labels(frames);

    std::vector<PairDistanceStats> out;
    for (std::size_t i = 0; i < wanted.size(); ++i) {
        for (std::size_t j = i + 1; j < wanted.size(); ++j) {
            std::vector<double> dists;
            for (const auto& f : frames.frames) {
                const Point3* a = f.observations.find(wanted[i]);
                const Point3* b = f.observations.find(wanted[j]);
                if (a && b) dists.push_back(distance(*a, *b));
            }
            if (dists.size() < 2) {
                if (strict)
                    throw InsufficientFrames("pair (" + wanted[i] + ", " + wanted[j] +
                                             ") co-visible in " +
                                             std::to_string(dists.size()) +
                                             " frames; need >= 2");
                continue;
            }
            PairDistanceStats ps;
            ps.label_a = wanted[i];
            ps.label_b = wanted[j];
            ps.n_frames = static_cast<int>(dists.size());
            ps.mean = TwoPass::mean(dists);
            ps.variance = TwoPass::sample_variance(dists, ps.mean);
            ps.sd = std::sqrt(ps.variance);
            out.push_back(ps);
        }
    }
    return out;
}

StabilityReport analyze_stability(const MarkerFrameStream& frames,
                                  const std::vector<std::string>& labels,
                                  const std::vector<std::string>& body_labels) {
    StabilityReport report;
    report.n_frames = static_cast<int>(frames.size());
    report.per_marker = static_marker_sd(frames, labels);
    report.pairwise = rigid_body_distance_spread(frames, body_labels);
    for (const auto& p : report.pairwise) {
        report.max_pairwise_sd = std::max(report.max_pairwise_sd, p.sd);
        report.max_pairwise_variance = std::max(report.max_pairwise_variance, p.variance);
    }
    return report;
}

}  // namespace arnav
