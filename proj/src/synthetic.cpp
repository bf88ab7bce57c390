#include "arnav/synthetic.hpp"

#include <cmath>

namespace arnav {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;

// Split-stream tags; fixed constants are part of the reproducibility contract.
enum StreamTag : std::uint64_t {
    kScenePose = 11,
    kMarkerNoise = 21,
    kUserError = 22,
    kTremor = 23,
    kProbeRoll = 24,
};

/// i-th of n points of a Fibonacci sphere (unit radius) — an even,
/// deterministic spread with no two points close together.
Eigen::Vector3d fibonacci_dir(int i, int n) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    return {r * std::cos(phi), r * std::sin(phi), z};
}

/// Shortest rotation taking +Z onto `dir` (unit), then rolling about dir.
Eigen::Matrix3d align_z_to(const Eigen::Vector3d& dir, double roll_rad) {
    const Eigen::Vector3d z(0.0, 0.0, 1.0);
    Eigen::Matrix3d align;
    const double c = z.dot(dir);
    if (c < -1.0 + 1e-12) {
        align = Eigen::AngleAxisd(kPi, Eigen::Vector3d::UnitX()).toRotationMatrix();
    } else {
        const Eigen::Vector3d axis = z.cross(dir);
        const double s = axis.norm();
        if (s < 1e-15) {
            align = Eigen::Matrix3d::Identity();
        } else {
            align = Eigen::AngleAxisd(std::atan2(s, c), axis / s).toRotationMatrix();
        }
    }
    return Eigen::AngleAxisd(roll_rad, dir).toRotationMatrix() * align;
}

std::string padded(const char* prefix, int i) {
    return std::string(prefix) + (i < 10 ? "0" : "") + std::to_string(i);
}

}  // namespace

Eigen::Matrix3d random_rotation(CounterRng& rng) {
    // Uniform over SO(3): normalized 4-vector of i.i.d. normals as quaternion.
    const double a = rng.normal(), b = rng.normal(), c = rng.normal(),
                 d = rng.normal();
    Eigen::Quaterniond q(a, b, c, d);
    q.normalize();
    return q.toRotationMatrix();
}

RigidTransform random_rigid(CounterRng& rng, double translation_extent) {
    const Eigen::Matrix3d r = random_rotation(rng);
    const Eigen::Vector3d t(rng.uniform(-translation_extent, translation_extent),
                            rng.uniform(-translation_extent, translation_extent),
                            rng.uniform(-translation_extent, translation_extent));
    return RigidTransform::from_approximate(r, t);
}

RigidTransform random_perturbation(CounterRng& rng, double translation_mm,
                                   double angle_rad) {
    Eigen::Vector3d axis(rng.normal(), rng.normal(), rng.normal());
    if (axis.norm() < 1e-12) axis = Eigen::Vector3d::UnitZ();
    axis.normalize();
    Eigen::Vector3d dir(rng.normal(), rng.normal(), rng.normal());
    if (dir.norm() < 1e-12) dir = Eigen::Vector3d::UnitX();
    dir.normalize();
    return RigidTransform::from_approximate(
        Eigen::AngleAxisd(angle_rad, axis).toRotationMatrix(), translation_mm * dir);
}

std::vector<Point3> generate_sphere_cloud(const Point3& center, double radius,
                                          int n, Coverage coverage,
                                          double cap_angle_rad, double noise_sd,
                                          std::uint64_t seed) {
    if (n < 4)
        throw ValidationError("generate_sphere_cloud: need n >= 4, got " +
                              std::to_string(n));
    if (!(radius > 0.0))
        throw ValidationError("generate_sphere_cloud: radius must be > 0");

    const double z_min =
        coverage == Coverage::full ? -1.0 : std::cos(cap_angle_rad);

    CounterRng rng(seed);
    std::vector<Point3> points;
    points.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double z = rng.uniform(z_min, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        Eigen::Vector3d p = center.vec() +
                            radius * Eigen::Vector3d(r * std::cos(phi),
                                                     r * std::sin(phi), z);
        if (noise_sd > 0.0) p += rng.normal3(noise_sd);
        points.push_back(Point3::of(p));
    }
    return points;
}

SceneConfig default_scene(std::uint64_t seed) {
    SceneConfig config;
    config.seed = seed;
    config.surface = SurfaceSphere{Point3(0.0, 0.0, 0.0), 80.0};

    // 16 fiducials exactly on the head sphere.
    for (int i = 0; i < 16; ++i) {
        const Eigen::Vector3d d = fibonacci_dir(i, 16);
        config.phantom.fiducials_ct.add(padded("f", i + 1),
                                        Point3::of(80.0 * d));
    }
    // 9 markers just proud of the surface, interleaved with the fiducials.
    for (int i = 0; i < 9; ++i) {
        const Eigen::Vector3d d = align_z_to(Eigen::Vector3d::UnitZ(), 0.35) *
                                  fibonacci_dir(i, 9);
        config.phantom.markers_ct.add(padded("m", i + 1), Point3::of(84.0 * d));
    }

    // Probe: tip at the CT origin, a 5-sphere cluster up the shaft.
    config.probe.tip_ct = Point3(0.0, 0.0, 0.0);
    config.probe.markers_ct.add("p1", Point3(0.0, 0.0, 150.0));
    config.probe.markers_ct.add("p2", Point3(55.0, 0.0, 165.0));
    config.probe.markers_ct.add("p3", Point3(-50.0, 5.0, 160.0));
    config.probe.markers_ct.add("p4", Point3(0.0, 52.0, 185.0));
    config.probe.markers_ct.add("p5", Point3(5.0, -45.0, 140.0));

    CounterRng rng = CounterRng(seed).split(kScenePose);
    const Eigen::Matrix3d r = random_rotation(rng);
    const Eigen::Vector3d t(rng.uniform(350.0, 450.0), rng.uniform(-300.0, -200.0),
                            rng.uniform(750.0, 850.0));
    config.phantom_lab_pose = RigidTransform::from_approximate(r, t);
    return config;
}

SessionData generate_session(const SceneConfig& config, ExperimentKind kind,
                             const UserErrorModel& user) {
    validate_point_set(config.probe.markers_ct, "probe markers");
    validate_point_set(config.phantom.markers_ct, "phantom markers");
    validate_point_set(config.phantom.fiducials_ct, "phantom fiducials");

    const bool physical = kind == ExperimentKind::physical_feedback;
    if (physical && !config.surface)
        throw ValidationError(
            "physical_feedback sessions need a surface sphere in the scene");

    const auto kind_tag = static_cast<std::uint64_t>(kind);
    const CounterRng base(config.seed);
    CounterRng noise_rng = base.split(kMarkerNoise * 1000 + kind_tag);
    CounterRng user_rng = base.split(kUserError * 1000 + kind_tag);
    CounterRng tremor_rng = base.split(kTremor * 1000 + kind_tag);
    CounterRng roll_rng = base.split(kProbeRoll * 1000 + kind_tag);

    const RigidTransform& lab = config.phantom_lab_pose;
    // The hologram appears at lab ∘ displacement; physical sessions keep the
    // hologram registered in place.
    const RigidTransform hologram_pose =
        physical ? lab : compose(lab, config.hologram_displacement);

    const Eigen::Vector3d surface_center_lab =
        config.surface ? apply(lab, config.surface->center.vec())
                       : Eigen::Vector3d::Zero();

    SessionData session;
    session.ledger.kind = kind;
    session.ledger.seed = config.seed;
    session.ledger.user_model = user;
    if (!physical) {
        // Fiducial-level displacement magnitude; exact for pure translations.
        double total = 0.0;
        for (const auto& f : config.phantom.fiducials_ct.entries)
            total += (apply(hologram_pose, f.point.vec()) - apply(lab, f.point.vec()))
                         .norm();
        session.ledger.displacement_mm =
            total / static_cast<double>(config.phantom.fiducials_ct.size());
    }

    const double tremor_sd =
        physical ? config.tremor_sd_contact : config.tremor_sd_air;
    const int window = config.tip_window_length;
    std::int64_t frame_id = 0;

    for (const auto& fid : config.phantom.fiducials_ct.entries) {
        const Eigen::Vector3d true_lab = apply(lab, fid.point.vec());
        const Eigen::Vector3d aimed_lab = apply(hologram_pose, fid.point.vec());

        // Outward surface normal at the fiducial (viewing direction proxy).
        Eigen::Vector3d normal = true_lab - surface_center_lab;
        if (!config.surface || normal.norm() < 1e-9)
            normal = Eigen::Vector3d::UnitZ();
        else
            normal.normalize();

        const Eigen::Vector3d user_error =
            user.bias_mm * normal + user_rng.normal3(user.sd_mm);

        Eigen::Vector3d commanded;
        if (physical) {
            // Tip stops on the physical shell nearest the intended point.
            const Eigen::Vector3d aim = true_lab + user_error;
            Eigen::Vector3d radial = aim - surface_center_lab;
            if (radial.norm() < 1e-9) radial = normal;
            commanded =
                surface_center_lab + config.surface->radius * radial.normalized();
        } else {
            commanded = aimed_lab + user_error;
        }

        const Eigen::Matrix3d probe_rot =
            align_z_to(normal, roll_rng.uniform(0.0, 2.0 * kPi));

        Annotation annotation;
        annotation.fiducial_label = fid.label;
        annotation.start_frame = frame_id;
        annotation.end_frame = frame_id + window - 1;
        session.annotations.push_back(annotation);

        LedgerEntry entry;
        entry.fiducial_label = fid.label;
        entry.true_fiducial_lab = Point3::of(true_lab);
        entry.commanded_tip_lab = Point3::of(commanded);
        entry.start_frame = annotation.start_frame;
        entry.end_frame = annotation.end_frame;
        session.ledger.entries.push_back(entry);

        for (int f = 0; f < window; ++f, ++frame_id) {
            Frame frame;
            frame.frame_id = frame_id;
            frame.time_s = static_cast<double>(frame_id) / 120.0;

            for (const auto& m : config.phantom.markers_ct.entries) {
                Eigen::Vector3d p = apply(lab, m.point.vec());
                if (config.marker_noise_sd > 0.0)
                    p += noise_rng.normal3(config.marker_noise_sd);
                frame.observations.add(m.label, Point3::of(p));
            }

            Eigen::Vector3d tip = commanded;
            if (tremor_sd > 0.0) tip += tremor_rng.normal3(tremor_sd);
            const RigidTransform probe_pose = RigidTransform::make(
                probe_rot, tip - probe_rot * config.probe.tip_ct.vec());
            for (const auto& m : config.probe.markers_ct.entries) {
                Eigen::Vector3d p = apply(probe_pose, m.point.vec());
                if (config.marker_noise_sd > 0.0)
                    p += noise_rng.normal3(config.marker_noise_sd);
                frame.observations.add(m.label, Point3::of(p));
            }
            session.frames.frames.push_back(std::move(frame));
        }
    }
    return session;
}

std::vector<PoseEvent> generate_drift_trace(std::uint64_t seed, int steps,
                                            double step_mm, double step_deg,
                                            int detect_every,
                                            double anchor_noise_mm,
                                            double anchor_noise_deg) {
    if (steps < 0 || detect_every <= 0)
        throw ValidationError("generate_drift_trace: steps must be >= 0 and "
                              "detect_every > 0");
    CounterRng rng(seed);
    RigidTransform drift;
    std::vector<PoseEvent> events;
    events.reserve(steps + steps / detect_every + 1);
    double time = 0.0;
    for (int i = 1; i <= steps; ++i) {
        const RigidTransform step =
            random_perturbation(rng, step_mm, step_deg * kDegToRad);
        drift = compose(step, drift);
        time += 1.0 / 30.0;
        events.push_back({time, PoseEventKind::drift_step, step});
        if (i % detect_every == 0) {
            RigidTransform observed = drift;  // anchor truly at the origin
            if (anchor_noise_mm > 0.0 || anchor_noise_deg > 0.0)
                observed = compose(random_perturbation(rng, anchor_noise_mm,
                                                       anchor_noise_deg * kDegToRad),
                                   observed);
            events.push_back({time, PoseEventKind::anchor_detected, observed});
        }
    }
    return events;
}

}  // namespace arnav
