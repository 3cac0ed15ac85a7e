"""Covariant calculus on compact manifolds and the Hessian-inequality verifier."""

from ._core import (
    ConfigError,
    DegenerateRatio,
    Field,
    InvalidFamily,
    Manifold,
    NonPositiveFamily,
    PositivityViolation,
    SingularMetric,
    __version__,
    byparts_residual,
    christoffel,
    conformal_torus,
    default_resolution,
    estimate_constant,
    family_field,
    flat_torus,
    functionals,
    identity_chain,
    manifold,
    mode_field,
    point_calculus,
    ratios,
    residuals,
    ricci,
    sphere,
    torus_of_revolution,
    volume,
    volume_density,
)

__all__ = [
    "ConfigError",
    "DegenerateRatio",
    "Field",
    "InvalidFamily",
    "Manifold",
    "NonPositiveFamily",
    "PositivityViolation",
    "SingularMetric",
    "__version__",
    "byparts_residual",
    "christoffel",
    "conformal_torus",
    "default_resolution",
    "estimate_constant",
    "family_field",
    "flat_torus",
    "functionals",
    "identity_chain",
    "manifold",
    "mode_field",
    "point_calculus",
    "ratios",
    "residuals",
    "ricci",
    "sphere",
    "torus_of_revolution",
    "volume",
    "volume_density",
]
