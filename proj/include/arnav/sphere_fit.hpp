#pragma once

#include <vector>

#include "arnav/geometry.hpp"

namespace arnav {

/// A sphere estimated from surface samples of a CT-reconstructed marker.
struct SphereFit {
    Point3 center;
    double radius = 0.0;        // mm, > 0
    double rms_residual = 0.0;  // RMS of (|p_i - center| - radius), mm
    int n_points = 0;
};

/// Linear least-squares sphere (Coope formulation): one linear solve for the
/// center and radius minimizing sum((|p - c|^2 - r^2)^2). Points are centered
/// on their centroid before building the normal equations.
///
/// Throws DegenerateInput when fewer than 4 points are given or when the
/// 4x4 normal-equation matrix has condition number > 1e12 (coplanar or
/// collinear samples cannot determine a sphere).
SphereFit fit_sphere_algebraic(const std::vector<Point3>& points);

/// Gauss-Newton refinement of the geometric objective
/// sum((|p_i - c| - r)^2), with step halving (max 20) on residual increase.
/// The returned rms_residual never exceeds init.rms_residual + 1e-12.
///
/// Throws NoConvergence when the step norm is still above 1e-10 mm after
/// 100 iterations; callers fall back to the algebraic fit.
SphereFit refine_sphere_geometric(const std::vector<Point3>& points,
                                  const SphereFit& init);

/// Algebraic fit followed by geometric refinement; falls back to the
/// algebraic result if refinement does not converge.
SphereFit fit_sphere(const std::vector<Point3>& points);

}  // namespace arnav
