#pragma once

// Test-only reference implementations, deliberately independent of the
// library's solver paths:
//   - Horn's closed-form quaternion absolute orientation (vs Kabsch/SVD),
//   - a fixed-point geometric sphere fit (vs algebraic + Gauss-Newton),
//   - std::mt19937_64-based samplers (vs the counter-based stream),
//   - a two-sample Kolmogorov-Smirnov statistic.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <random>
#include <vector>

#include "arnav/geometry.hpp"

namespace oracle {

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Quaterniond q(normal(rng), normal(rng), normal(rng), normal(rng));
    q.normalize();
    return q.toRotationMatrix();
}

inline arnav::RigidTransform random_transform(std::mt19937_64& rng,
                                              double translation_extent) {
    std::uniform_real_distribution<double> uni(-translation_extent,
                                               translation_extent);
    const Eigen::Matrix3d r = random_rotation(rng);
    const Eigen::Vector3d t(uni(rng), uni(rng), uni(rng));
    return arnav::RigidTransform::from_approximate(r, t);
}

inline Eigen::Vector3d random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Vector3d v(normal(rng), normal(rng), normal(rng));
    while (v.norm() < 1e-9) v = {normal(rng), normal(rng), normal(rng)};
    return v.normalized();
}

/// Horn (1987): the optimal rotation is the eigenvector of the 4x4 moment
/// matrix with the largest eigenvalue, read as a unit quaternion.
inline arnav::RigidTransform horn_registration(
    const std::vector<Eigen::Vector3d>& src,
    const std::vector<Eigen::Vector3d>& dst) {
    const auto n = static_cast<double>(src.size());
    Eigen::Vector3d src_mean = Eigen::Vector3d::Zero();
    Eigen::Vector3d dst_mean = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < src.size(); ++i) {
        src_mean += src[i];
        dst_mean += dst[i];
    }
    src_mean /= n;
    dst_mean /= n;

    Eigen::Matrix3d s = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < src.size(); ++i)
        s += (src[i] - src_mean) * (dst[i] - dst_mean).transpose();

    Eigen::Matrix4d m;
    m(0, 0) = s(0, 0) + s(1, 1) + s(2, 2);
    m(0, 1) = s(1, 2) - s(2, 1);
    m(0, 2) = s(2, 0) - s(0, 2);
    m(0, 3) = s(0, 1) - s(1, 0);
    m(1, 1) = s(0, 0) - s(1, 1) - s(2, 2);
    m(1, 2) = s(0, 1) + s(1, 0);
    m(1, 3) = s(2, 0) + s(0, 2);
    m(2, 2) = -s(0, 0) + s(1, 1) - s(2, 2);
    m(2, 3) = s(1, 2) + s(2, 1);
    m(3, 3) = -s(0, 0) - s(1, 1) + s(2, 2);
    for (int i = 1; i < 4; ++i)
        for (int j = 0; j < i; ++j) m(i, j) = m(j, i);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(m);
    const Eigen::Vector4d q = eig.eigenvectors().col(3);  // largest eigenvalue
    const Eigen::Matrix3d r =
        Eigen::Quaterniond(q(0), q(1), q(2), q(3)).toRotationMatrix();
    return arnav::RigidTransform::from_approximate(r, dst_mean - r * src_mean);
}

struct SphereEstimate {
    Eigen::Vector3d center;
    double radius;
};

/// Fixed-point iteration on the stationarity conditions of the geometric
/// objective: r = mean|p - c|, c = centroid + r * mean((c - p)/|c - p|).
inline SphereEstimate fixed_point_sphere(const std::vector<Eigen::Vector3d>& pts,
                                         int iterations = 500) {
    const auto n = static_cast<double>(pts.size());
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& p : pts) centroid += p;
    centroid /= n;

    Eigen::Vector3d c = centroid + Eigen::Vector3d(0.1, 0.1, 0.1);
    double r = 1.0;
    for (int it = 0; it < iterations; ++it) {
        Eigen::Vector3d dir_mean = Eigen::Vector3d::Zero();
        double dist_mean = 0.0;
        for (const auto& p : pts) {
            const Eigen::Vector3d d = c - p;
            const double len = d.norm();
            if (len < 1e-12) continue;
            dir_mean += d / len;
            dist_mean += len;
        }
        dir_mean /= n;
        r = dist_mean / n;
        c = centroid + r * dir_mean;
    }
    return {c, r};
}

/// Uniform sphere-surface samples (full or +Z polar cap) with isotropic
/// Gaussian noise, drawn from mt19937.
inline std::vector<Eigen::Vector3d> sphere_cloud(std::mt19937_64& rng,
                                                 const Eigen::Vector3d& center,
                                                 double radius, int n,
                                                 double cap_cos_min,
                                                 double noise_sd) {
    std::uniform_real_distribution<double> uz(cap_cos_min, 1.0);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * 3.14159265358979323846);
    std::normal_distribution<double> noise(0.0, noise_sd);
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double z = uz(rng);
        const double phi = uphi(rng);
        const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
        Eigen::Vector3d p =
            center + radius * Eigen::Vector3d(rad * std::cos(phi),
                                              rad * std::sin(phi), z);
        if (noise_sd > 0.0) p += Eigen::Vector3d(noise(rng), noise(rng), noise(rng));
        pts.push_back(p);
    }
    return pts;
}

/// Two-sample Kolmogorov-Smirnov statistic (max CDF gap).
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        const double fa = static_cast<double>(i) / a.size();
        const double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace oracle
