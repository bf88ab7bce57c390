#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "arnav/errors.hpp"

namespace arnav {

/// Tolerance for exact rigid-motion algebra (orthonormality, group laws).
/// Measurement tolerances live in the consuming modules.
inline constexpr double kRigidTol = 1e-9;

/// A position in millimeters. All lengths in this codebase are mm.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Point3() = default;
    Point3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Eigen::Vector3d vec() const { return {x, y, z}; }
    static Point3 of(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Point3 operator+(const Point3& a, const Point3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Point3 operator-(const Point3& a, const Point3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Point3 operator*(double s, const Point3& p) {
    return {s * p.x, s * p.y, s * p.z};
}

inline double norm(const Point3& p) {
    return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
}
inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }

struct LabeledPoint {
    std::string label;
    Point3 point;
};

/// Marker/fiducial positions keyed by their physical labels.
/// Labels must be unique within a set; solvers additionally require
/// non-empty sets (validate_point_set checks both).
struct LabeledPointSet {
    std::vector<LabeledPoint> entries;

    LabeledPointSet() = default;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }

    void add(const std::string& label, const Point3& p) {
        entries.push_back({label, p});
    }

    /// Returns nullptr when the label is absent.
    const Point3* find(const std::string& label) const {
        for (const auto& e : entries)
            if (e.label == label) return &e.point;
        return nullptr;
    }

    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        out.reserve(entries.size());
        for (const auto& e : entries) out.push_back(e.label);
        return out;
    }
};

/// Throws ValidationError unless the set is non-empty, labels are unique,
/// and every coordinate is finite. `what` names the set in messages.
void validate_point_set(const LabeledPointSet& set, const std::string& what);

/// Proper rigid motion p -> R*p + t.
/// R is orthonormal with det(R) = +1, checked to kRigidTol on construction
/// and re-checked after compose/invert.
class RigidTransform {
public:
    /// Identity transform.
    RigidTransform()
        : rotation_(Eigen::Matrix3d::Identity()),
          translation_(Eigen::Vector3d::Zero()) {}

    /// Validates the rotation invariants; throws ValidationError on a
    /// non-orthonormal matrix or a reflection.
    static RigidTransform make(const Eigen::Matrix3d& rotation,
                               const Eigen::Vector3d& translation);

    static RigidTransform identity() { return RigidTransform(); }

    /// Re-orthonormalizes an approximately-rigid matrix via SVD, then
    /// validates. For constructing transforms from noisy numeric sources.
    static RigidTransform from_approximate(const Eigen::Matrix3d& rotation,
                                           const Eigen::Vector3d& translation);

    const Eigen::Matrix3d& rotation() const { return rotation_; }
    const Eigen::Vector3d& translation() const { return translation_; }

    bool is_identity(double tol = kRigidTol) const;

private:
    RigidTransform(const Eigen::Matrix3d& r, const Eigen::Vector3d& t)
        : rotation_(r), translation_(t) {}

    Eigen::Matrix3d rotation_;
    Eigen::Vector3d translation_;
};

Eigen::Vector3d apply(const RigidTransform& t, const Eigen::Vector3d& p);
Point3 apply(const RigidTransform& t, const Point3& p);
LabeledPointSet apply(const RigidTransform& t, const LabeledPointSet& points);

/// compose(a, b) acts as a after b: apply(compose(a,b), p) == apply(a, apply(b, p)).
RigidTransform compose(const RigidTransform& a, const RigidTransform& b);

RigidTransform invert(const RigidTransform& t);

/// Geodesic rotation angle of R in radians, arccos((trace(R) - 1) / 2).
double rotation_angle(const Eigen::Matrix3d& r);

/// Geodesic angle between the rotation parts of two transforms, radians.
double rotation_distance(const RigidTransform& a, const RigidTransform& b);

}  // namespace arnav
