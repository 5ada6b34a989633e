"""Instantiation and dual-oracle verification of the integral identities."""
from .instances import Family, IdentityInstance, VerificationReport, dump_instances, load_instances
from .representations import REPRESENTATIONS, rep_eval, representation_instance
from .suites import SUITES, builtin_suite
from .verify import (
    MOMENT_TOL,
    QUADRATURE_TOL,
    dual_difference,
    verify,
    verify_angular,
    verify_complex,
    verify_moment,
    verify_quadrature,
)

__all__ = [
    "Family", "IdentityInstance", "VerificationReport", "dump_instances", "load_instances",
    "REPRESENTATIONS", "rep_eval", "representation_instance", "SUITES", "builtin_suite",
    "MOMENT_TOL", "QUADRATURE_TOL", "dual_difference", "verify", "verify_angular", "verify_complex",
    "verify_moment", "verify_quadrature",
]
