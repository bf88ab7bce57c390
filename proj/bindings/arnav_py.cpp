// Python bindings for the core operations: geometry, sphere fitting,
// registration, tip localization, the Z-test, and anchor relocalization.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arnav/drift.hpp"
#include "arnav/geometry.hpp"
#include "arnav/models.hpp"
#include "arnav/registration.hpp"
#include "arnav/sphere_fit.hpp"
#include "arnav/synthetic.hpp"
#include "arnav/version.hpp"
#include "arnav/ztest.hpp"

namespace py = pybind11;
using namespace arnav;

namespace {

LabeledPointSet set_from_dict(const py::dict& d) {
    LabeledPointSet set;
    for (auto item : d) {
        const auto label = item.first.cast<std::string>();
        const auto xyz = item.second.cast<std::array<double, 3>>();
        set.add(label, Point3(xyz[0], xyz[1], xyz[2]));
    }
    return set;
}

std::vector<Point3> points_from_list(const std::vector<std::array<double, 3>>& v) {
    std::vector<Point3> points;
    points.reserve(v.size());
    for (const auto& p : v) points.emplace_back(p[0], p[1], p[2]);
    return points;
}

}  // namespace

PYBIND11_MODULE(_arnav, m) {
    m.doc() = "Assessment toolkit for AR-assisted neuronavigation";
    m.attr("__version__") = kVersion;

    py::register_exception<ValidationError>(m, "ValidationError");
    py::register_exception<arnav::ParseError>(m, "ParseError");
    py::register_exception<NumericalError>(m, "NumericalError");

    py::class_<Point3>(m, "Point3")
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"),
             py::arg("z"))
        .def_readwrite("x", &Point3::x)
        .def_readwrite("y", &Point3::y)
        .def_readwrite("z", &Point3::z)
        .def("__repr__", [](const Point3& p) {
            return "Point3(" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                   ", " + std::to_string(p.z) + ")";
        });

    py::class_<RigidTransform>(m, "RigidTransform")
        .def(py::init([](const Eigen::Matrix3d& r, const Eigen::Vector3d& t) {
                 return RigidTransform::make(r, t);
             }),
             py::arg("rotation"), py::arg("translation"))
        .def_static("identity", &RigidTransform::identity)
        .def_property_readonly("rotation", &RigidTransform::rotation)
        .def_property_readonly("translation", &RigidTransform::translation)
        .def("apply",
             [](const RigidTransform& t, const Eigen::Vector3d& p) {
                 return apply(t, p);
             })
        .def("compose",
             [](const RigidTransform& a, const RigidTransform& b) {
                 return compose(a, b);
             })
        .def("invert", [](const RigidTransform& t) { return invert(t); });

    py::class_<SphereFit>(m, "SphereFit")
        .def_readonly("center", &SphereFit::center)
        .def_readonly("radius", &SphereFit::radius)
        .def_readonly("rms_residual", &SphereFit::rms_residual)
        .def_readonly("n_points", &SphereFit::n_points);

    m.def(
        "fit_sphere",
        [](const std::vector<std::array<double, 3>>& points, bool algebraic_only) {
            const auto pts = points_from_list(points);
            return algebraic_only ? fit_sphere_algebraic(pts) : fit_sphere(pts);
        },
        py::arg("points"), py::arg("algebraic_only") = false,
        "Least-squares sphere through surface samples ([x, y, z] triples, mm)");

    py::class_<RegistrationResult>(m, "RegistrationResult")
        .def_readonly("transform", &RegistrationResult::transform)
        .def_readonly("fre_mean", &RegistrationResult::fre_mean)
        .def_readonly("fre_rms", &RegistrationResult::fre_rms)
        .def_readonly("per_point_residuals", &RegistrationResult::per_point_residuals)
        .def_readonly("unmatched_source", &RegistrationResult::unmatched_source)
        .def_readonly("unmatched_target", &RegistrationResult::unmatched_target);

    m.def(
        "solve_rigid",
        [](const py::dict& source, const py::dict& target) {
            return solve_rigid(set_from_dict(source), set_from_dict(target));
        },
        py::arg("source"), py::arg("target"),
        "Labeled rigid registration; dicts map label -> (x, y, z) in mm");

    m.def(
        "locate_tip",
        [](const py::dict& frame_markers, const py::dict& probe_markers,
           const std::array<double, 3>& tip_ct) {
            ProbeModel probe;
            probe.markers_ct = set_from_dict(probe_markers);
            probe.tip_ct = Point3(tip_ct[0], tip_ct[1], tip_ct[2]);
            Frame frame;
            frame.observations = set_from_dict(frame_markers);
            const TipObservation obs = locate_tip(frame, probe);
            return py::make_tuple(obs.tip_lab, obs.registration_fre);
        },
        py::arg("frame_markers"), py::arg("probe_markers"), py::arg("tip_ct"),
        "Returns (tip position in the frame's coordinates, registration FRE)");

    py::class_<ZTestResult>(m, "ZTestResult")
        .def_readonly("z", &ZTestResult::z)
        .def_readonly("p_two_sided", &ZTestResult::p_two_sided)
        .def_readonly("se1", &ZTestResult::se1)
        .def_readonly("se2", &ZTestResult::se2)
        .def_readonly("mean_diff", &ZTestResult::mean_diff);

    m.def("z_test", &z_test, py::arg("mean1"), py::arg("sd1"), py::arg("n1"),
          py::arg("mean2"), py::arg("sd2"), py::arg("n2"),
          "Two-sample Z-test on summary statistics");
    m.def("normal_cdf", &normal_cdf, py::arg("z"));

    py::class_<AnchorBinding>(m, "AnchorBinding")
        .def_readonly("hologram_in_anchor", &AnchorBinding::hologram_in_anchor);
    m.def("bind", &bind, py::arg("anchor_in_world"), py::arg("hologram_in_world"));
    m.def("relocalize", &relocalize, py::arg("binding"),
          py::arg("anchor_in_world_now"));

    m.def(
        "generate_sphere_cloud",
        [](const std::array<double, 3>& center, double radius, int n,
           const std::string& coverage, double cap_angle_rad, double noise_sd,
           std::uint64_t seed) {
            const Coverage cov =
                coverage == "cap" ? Coverage::cap : Coverage::full;
            const auto pts =
                generate_sphere_cloud(Point3(center[0], center[1], center[2]),
                                      radius, n, cov, cap_angle_rad, noise_sd, seed);
            std::vector<std::array<double, 3>> out;
            out.reserve(pts.size());
            for (const auto& p : pts) out.push_back({p.x, p.y, p.z});
            return out;
        },
        py::arg("center"), py::arg("radius"), py::arg("n"),
        py::arg("coverage") = "full", py::arg("cap_angle_rad") = 1.5707963267948966,
        py::arg("noise_sd") = 0.0, py::arg("seed") = 1,
        "Seeded surface samples of a sphere (full or polar-cap coverage)");
}
