#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arnav/assessment.hpp"
#include "arnav/drift.hpp"
#include "arnav/frames.hpp"
#include "arnav/geometry.hpp"
#include "arnav/models.hpp"
#include "arnav/rng.hpp"

namespace arnav {

/// Sphere the phantom's outer shell is modeled as; fiducials of the default
/// scene lie exactly on it, and physical-feedback tips snap to it.
struct SurfaceSphere {
    Point3 center;
    double radius = 0.0;
};

/// Everything a synthetic session needs: the device models, the lab
/// placement, the noise levels, and the injected registration error.
/// A fixed seed reproduces every derived file byte-for-byte.
struct SceneConfig {
    ProbeModel probe;
    PhantomModel phantom;
    std::optional<SurfaceSphere> surface;
    double marker_noise_sd = 0.16;  // mm per axis, tracker repeatability
    int tip_window_length = 50;     // frames per fiducial dwell
    RigidTransform hologram_displacement;  // injected registration error
    std::uint64_t seed = 1;

    // Generator details beyond the core contract (all have defaults and are
    // optional in the scene file).
    RigidTransform phantom_lab_pose;   // where the phantom sits in the lab
    double tremor_sd_air = 0.6;        // tip tremor when held in the air, mm
    double tremor_sd_contact = 0.15;   // tip tremor when resting on the surface
    double guard_multiplier = 5.0;     // NonStaticPhantom threshold, in noise SDs
    int min_probe_markers = 5;         // schema floor for probe.markers
    int expected_phantom_markers = 9;
    int expected_fiducials = 16;
};

/// Depth-perception error of the annotating user: an isotropic Gaussian
/// plus an optional bias along the surface normal (the viewing direction).
/// Synthetic defaults; not fitted to any published data.
struct UserErrorModel {
    double bias_mm = 0.0;
    double sd_mm = 3.0;
};

/// Paper-shaped scene: 5 probe markers, 9 phantom markers, 16 fiducials on
/// an 80 mm head sphere, randomly placed in the lab. Deterministic per seed.
SceneConfig default_scene(std::uint64_t seed);

// --- low-level generators ---

/// Rotation drawn uniformly from SO(3) (random unit quaternion).
Eigen::Matrix3d random_rotation(CounterRng& rng);

/// Uniform rotation plus a translation uniform in [-extent, extent]^3.
RigidTransform random_rigid(CounterRng& rng, double translation_extent);

/// Rigid perturbation with rotation angle `angle_rad` about a random axis
/// and a random translation of length `translation_mm`.
RigidTransform random_perturbation(CounterRng& rng, double translation_mm,
                                   double angle_rad);

enum class Coverage { full, cap };

/// Uniform samples of a sphere's surface (the whole sphere, or the polar
/// cap of half-angle `cap_angle_rad` about +Z) with isotropic Gaussian
/// perturbation of each coordinate. Deterministic per seed.
std::vector<Point3> generate_sphere_cloud(const Point3& center, double radius,
                                          int n, Coverage coverage,
                                          double cap_angle_rad, double noise_sd,
                                          std::uint64_t seed);

// --- session generation ---

/// True values the generator promised, for closing the loop on a session.
struct LedgerEntry {
    std::string fiducial_label;
    Point3 true_fiducial_lab;
    Point3 commanded_tip_lab;  // mean tip position the simulated user held
    std::int64_t start_frame = 0;
    std::int64_t end_frame = 0;
};

struct GroundTruthLedger {
    ExperimentKind kind = ExperimentKind::no_feedback;
    std::uint64_t seed = 0;
    double displacement_mm = 0.0;  // hologram displacement actually applied
    UserErrorModel user_model;
    std::vector<LedgerEntry> entries;
};

struct SessionData {
    MarkerFrameStream frames;
    std::vector<Annotation> annotations;
    GroundTruthLedger ledger;
};

/// Scripted session: the phantom sits still (markers noisy every frame)
/// while the probe dwells one window per fiducial.
///
/// Where the simulated user puts the tip:
///   - no_feedback / holographic_feedback: at the hologram's (displaced)
///     fiducial plus the user error, floating in air;
///   - physical_feedback: the hologram is registered in place (no
///     displacement applied) and the tip snaps to the surface-sphere point
///     nearest (true fiducial + user error) — contact cancels the normal
///     error component. Requires config.surface.
SessionData generate_session(const SceneConfig& config, ExperimentKind kind,
                             const UserErrorModel& user);

// --- drift traces ---

/// Random-walk drift trace: `steps` world-frame perturbations of
/// `step_mm` / `step_deg` magnitude, with an anchor_detected event after
/// every `detect_every` steps. Anchor observations are exact unless
/// anchor_noise_mm/deg are nonzero.
std::vector<PoseEvent> generate_drift_trace(std::uint64_t seed, int steps,
                                            double step_mm, double step_deg,
                                            int detect_every,
                                            double anchor_noise_mm = 0.0,
                                            double anchor_noise_deg = 0.0);

}  // namespace arnav
