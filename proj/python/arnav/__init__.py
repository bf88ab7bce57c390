"""Assessment toolkit for AR-assisted neuronavigation.

Thin wrapper around the compiled _arnav module: 3D rigid-transform algebra,
marker-sphere fitting, labeled rigid registration, probe-tip localization,
the two-sample Z-test, and anchor-based drift correction.
"""

from ._arnav import (
    AnchorBinding,
    NumericalError,
    ParseError,
    Point3,
    RegistrationResult,
    RigidTransform,
    SphereFit,
    ValidationError,
    ZTestResult,
    __version__,
    bind,
    fit_sphere,
    generate_sphere_cloud,
    locate_tip,
    normal_cdf,
    relocalize,
    solve_rigid,
    z_test,
)

__all__ = [
    "AnchorBinding",
    "NumericalError",
    "ParseError",
    "Point3",
    "RegistrationResult",
    "RigidTransform",
    "SphereFit",
    "ValidationError",
    "ZTestResult",
    "__version__",
    "bind",
    "fit_sphere",
    "generate_sphere_cloud",
    "locate_tip",
    "normal_cdf",
    "relocalize",
    "solve_rigid",
    "z_test",
]
