#include "arnav/registration.hpp"

#include <Eigen/Dense>

#include <unordered_map>

namespace arnav {

namespace {

constexpr double kCollinearRatio = 1e-10;

// Second singular value of the centered coordinate matrix vanishes iff the
// points lie on a line (or coincide).
bool is_collinear(const std::vector<Eigen::Vector3d>& pts) {
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& p : pts) mean += p;
    mean /= static_cast<double>(pts.size());

    Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
    for (const auto& p : pts) {
        const Eigen::Vector3d q = p - mean;
        scatter += q * q.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(scatter);
    const auto& ev = eig.eigenvalues();  // ascending
    const double largest = ev(2);
    if (largest <= 0.0) return true;  // all points coincide
    return ev(1) / largest < kCollinearRatio;
}

}  // namespace

RegistrationResult solve_rigid(const LabeledPointSet& source,
                               const LabeledPointSet& target) {
    validate_point_set(source, "registration source");
    validate_point_set(target, "registration target");

    std::unordered_map<std::string, Eigen::Vector3d> target_by_label;
    for (const auto& e : target.entries) target_by_label.emplace(e.label, e.point.vec());

    RegistrationResult result;
    std::vector<std::string> labels;
    std::vector<Eigen::Vector3d> src, dst;
    for (const auto& e : source.entries) {
        auto it = target_by_label.find(e.label);
        if (it == target_by_label.end()) {
            result.unmatched_source.push_back(e.label);
            continue;
        }
        labels.push_back(e.label);
        src.push_back(e.point.vec());
        dst.push_back(it->second);
    }
    for (const auto& e : target.entries)
        if (source.find(e.label) == nullptr) result.unmatched_target.push_back(e.label);

    if (labels.size() < 3)
        throw InsufficientCorrespondence(
            "rigid registration needs >= 3 common labels, found " +
            std::to_string(labels.size()));
    if (is_collinear(src) || is_collinear(dst))
        throw DegenerateConfiguration(
            "rigid registration is degenerate: common points are collinear");

    const auto n = static_cast<double>(labels.size());
    Eigen::Vector3d src_mean = Eigen::Vector3d::Zero();
    Eigen::Vector3d dst_mean = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        src_mean += src[i];
        dst_mean += dst[i];
    }
    src_mean /= n;
    dst_mean /= n;

    Eigen::Matrix3d cross = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < labels.size(); ++i)
        cross += (src[i] - src_mean) * (dst[i] - dst_mean).transpose();

    // R = V * diag(1, 1, det(V U^T)) * U^T; the sign flip on the smallest
    // singular value keeps the result a proper rotation.
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(cross,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d u = svd.matrixU();
    Eigen::Matrix3d v = svd.matrixV();
    Eigen::Matrix3d rotation = v * u.transpose();
    if (rotation.determinant() < 0.0) {
        v.col(2) *= -1.0;
        rotation = v * u.transpose();
    }
    const Eigen::Vector3d translation = dst_mean - rotation * src_mean;

    result.transform = RigidTransform::make(rotation, translation);

    double sum = 0.0, sum_sq = 0.0;
    result.per_point_residuals.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double r = (rotation * src[i] + translation - dst[i]).norm();
        result.per_point_residuals.emplace_back(labels[i], r);
        sum += r;
        sum_sq += r * r;
    }
    result.fre_mean = sum / n;
    result.fre_rms = std::sqrt(sum_sq / n);
    // Power-mean inequality; a violation would mean the residuals are corrupt.
    if (result.fre_rms < result.fre_mean - 1e-12)
        throw NumericalError("registration residuals violate rms >= mean");

    return result;
}

}  // namespace arnav
