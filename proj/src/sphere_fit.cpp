#include "arnav/sphere_fit.hpp"

#include <Eigen/Dense>

namespace arnav {

namespace {

constexpr double kConditionLimit = 1e12;
constexpr int kMaxIterations = 100;
constexpr int kMaxHalvings = 20;
constexpr double kStepTol = 1e-10;  // mm

double geometric_rss(const std::vector<Point3>& points, const Eigen::Vector3d& c,
                     double r) {
    double rss = 0.0;
    for (const auto& p : points) {
        const double d = (p.vec() - c).norm() - r;
        rss += d * d;
    }
    return rss;
}

}  // namespace

SphereFit fit_sphere_algebraic(const std::vector<Point3>& points) {
    const int n = static_cast<int>(points.size());
    if (n < 4) throw DegenerateInput("sphere fit needs at least 4 points, got " +
                                     std::to_string(n));

    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& p : points) centroid += p.vec();
    centroid /= n;

    // Coope's linearization on centered coordinates q = p - centroid:
    //   |q|^2 = 2 q . c' + t,  t = r^2 - |c'|^2
    Eigen::Matrix4d normal = Eigen::Matrix4d::Zero();
    Eigen::Vector4d rhs = Eigen::Vector4d::Zero();
    for (const auto& p : points) {
        const Eigen::Vector3d q = p.vec() - centroid;
        Eigen::Vector4d row;
        row << 2.0 * q.x(), 2.0 * q.y(), 2.0 * q.z(), 1.0;
        normal += row * row.transpose();
        rhs += row * q.squaredNorm();
    }

    Eigen::JacobiSVD<Eigen::Matrix4d> svd(normal,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 0.0 || sv(0) / sv(3) > kConditionLimit)
        throw DegenerateInput(
            "sphere fit is degenerate: points are coplanar or collinear "
            "(normal-equation condition number exceeds 1e12)");

    const Eigen::Vector4d sol = svd.solve(rhs);
    const Eigen::Vector3d center_local = sol.head<3>();
    const double r2 = sol(3) + center_local.squaredNorm();
    if (!(r2 > 0.0))
        throw DegenerateInput("sphere fit produced a non-positive radius");

    SphereFit fit;
    const Eigen::Vector3d center = center_local + centroid;
    fit.center = Point3::of(center);
    fit.radius = std::sqrt(r2);
    fit.n_points = n;
    fit.rms_residual = std::sqrt(geometric_rss(points, center, fit.radius) / n);
    return fit;
}

SphereFit refine_sphere_geometric(const std::vector<Point3>& points,
                                  const SphereFit& init) {
    const int n = static_cast<int>(points.size());
    if (n < 4) throw DegenerateInput("sphere fit needs at least 4 points, got " +
                                     std::to_string(n));
    if (!(init.radius > 0.0))
        throw ValidationError("refine_sphere_geometric: init.radius must be > 0");

    Eigen::Vector3d c = init.center.vec();
    double r = init.radius;
    double rss = geometric_rss(points, c, r);

    bool converged = false;
    for (int iter = 0; iter < kMaxIterations && !converged; ++iter) {
        Eigen::Matrix4d jtj = Eigen::Matrix4d::Zero();
        Eigen::Vector4d jtf = Eigen::Vector4d::Zero();
        for (const auto& p : points) {
            const Eigen::Vector3d d = p.vec() - c;
            const double len = d.norm();
            if (len < 1e-12) continue;  // sample coincides with the center
            Eigen::Vector4d row;
            row << -d.x() / len, -d.y() / len, -d.z() / len, -1.0;
            jtj += row * row.transpose();
            jtf += row * (len - r);
        }

        const Eigen::Vector4d step = jtj.ldlt().solve(-jtf);
        if (!step.allFinite())
            throw NoConvergence("sphere refinement produced a non-finite step");

        // Step halving: accept the first scale that does not increase the RSS.
        double scale = 1.0;
        bool accepted = false;
        for (int h = 0; h <= kMaxHalvings; ++h, scale *= 0.5) {
            const Eigen::Vector3d c_try = c + scale * step.head<3>();
            const double r_try = r + scale * step(3);
            if (!(r_try > 0.0)) continue;
            const double rss_try = geometric_rss(points, c_try, r_try);
            if (rss_try <= rss) {
                const double moved = scale * step.norm();
                c = c_try;
                r = r_try;
                rss = rss_try;
                accepted = true;
                if (moved <= kStepTol) converged = true;
                break;
            }
        }
        // No productive direction left: the iterate is at a local minimum.
        if (!accepted) converged = true;
    }

    if (!converged)
        throw NoConvergence("sphere refinement did not converge in " +
                            std::to_string(kMaxIterations) + " iterations");

    SphereFit fit;
    fit.center = Point3::of(c);
    fit.radius = r;
    fit.n_points = n;
    fit.rms_residual = std::sqrt(rss / n);
    return fit;
}

SphereFit fit_sphere(const std::vector<Point3>& points) {
    const SphereFit algebraic = fit_sphere_algebraic(points);
    try {
        return refine_sphere_geometric(points, algebraic);
    } catch (const NoConvergence&) {
        return algebraic;
    }
}

}  // namespace arnav
