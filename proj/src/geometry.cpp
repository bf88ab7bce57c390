#include "arnav/geometry.hpp"

#include <unordered_set>

namespace arnav {

void validate_point_set(const LabeledPointSet& set, const std::string& what) {
    if (set.empty()) throw ValidationError(what + ": point set is empty");
    std::unordered_set<std::string> seen;
    for (const auto& e : set.entries) {
        if (!seen.insert(e.label).second)
            throw ValidationError(what + ": duplicate label '" + e.label + "'");
        if (!e.point.finite())
            throw ValidationError(what + ": non-finite coordinate at label '" +
                                  e.label + "'");
    }
}

namespace {

void check_rigid(const Eigen::Matrix3d& r, const Eigen::Vector3d& t) {
    const double ortho =
        (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    if (!(ortho <= kRigidTol))
        throw ValidationError("rotation is not orthonormal (deviation " +
                              std::to_string(ortho) + ")");
    const double det = r.determinant();
    if (!(std::abs(det - 1.0) <= kRigidTol))
        throw ValidationError("rotation determinant is " + std::to_string(det) +
                              ", expected +1 (reflections are not rigid motions)");
    if (!t.allFinite() || !r.allFinite())
        throw ValidationError("transform has non-finite entries");
}

}  // namespace

RigidTransform RigidTransform::make(const Eigen::Matrix3d& rotation,
                                    const Eigen::Vector3d& translation) {
    check_rigid(rotation, translation);
    return RigidTransform(rotation, translation);
}

RigidTransform RigidTransform::from_approximate(const Eigen::Matrix3d& rotation,
                                                const Eigen::Vector3d& translation) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(rotation,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d u = svd.matrixU();
    Eigen::Matrix3d v = svd.matrixV();
    Eigen::Matrix3d r = u * v.transpose();
    if (r.determinant() < 0.0) {
        u.col(2) *= -1.0;
        r = u * v.transpose();
    }
    return make(r, translation);
}

bool RigidTransform::is_identity(double tol) const {
    return (rotation_ - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= tol &&
           translation_.cwiseAbs().maxCoeff() <= tol;
}

Eigen::Vector3d apply(const RigidTransform& t, const Eigen::Vector3d& p) {
    return t.rotation() * p + t.translation();
}

Point3 apply(const RigidTransform& t, const Point3& p) {
    return Point3::of(apply(t, p.vec()));
}

LabeledPointSet apply(const RigidTransform& t, const LabeledPointSet& points) {
    LabeledPointSet out;
    out.entries.reserve(points.entries.size());
    for (const auto& e : points.entries) out.add(e.label, apply(t, e.point));
    return out;
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
    return RigidTransform::make(a.rotation() * b.rotation(),
                                a.rotation() * b.translation() + a.translation());
}

RigidTransform invert(const RigidTransform& t) {
    const Eigen::Matrix3d rt = t.rotation().transpose();
    return RigidTransform::make(rt, -(rt * t.translation()));
}

double rotation_angle(const Eigen::Matrix3d& r) {
    const double c = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
    return std::acos(c);
}

double rotation_distance(const RigidTransform& a, const RigidTransform& b) {
    return rotation_angle(a.rotation().transpose() * b.rotation());
}

}  // namespace arnav
