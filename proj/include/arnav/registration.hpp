#pragma once

#include <string>
#include <utility>
#include <vector>

#include "arnav/geometry.hpp"

namespace arnav {

/// Solution of a labeled point-to-point rigid registration plus its
/// fiducial registration error (FRE).
struct RegistrationResult {
    RigidTransform transform;  // maps source-frame points into the target frame
    double fre_mean = 0.0;     // mean corresponding-point distance after alignment
    double fre_rms = 0.0;
    std::vector<std::pair<std::string, double>> per_point_residuals;
    // Labels present on one side only. They are excluded from the solve but
    // reported so a mislabeled marker cannot vanish silently.
    std::vector<std::string> unmatched_source;
    std::vector<std::string> unmatched_target;

    std::size_t n_correspondences() const { return per_point_residuals.size(); }
};

/// Least-squares proper rigid transform between labeled point sets
/// (Kabsch: SVD of the cross-covariance of centered points, with the
/// smallest-singular-value column sign flip so a reflection is never
/// returned). Correspondence is by label only.
///
/// Throws InsufficientCorrespondence with fewer than 3 common labels and
/// DegenerateConfiguration when the common points are collinear (rotation
/// about the line is unobservable).
RegistrationResult solve_rigid(const LabeledPointSet& source,
                               const LabeledPointSet& target);

}  // namespace arnav
