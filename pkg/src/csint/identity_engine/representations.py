"""Special functions evaluated through their Meijer-G integral representations.

Each representation is f(s) = outer(s) * int W(u) K(AB u) du with AB = argument(s),
where W is the KP weight (``Real_B``) or the BG weight (``Real_A``) of ``params``.
Prefactors that carry Gamma at a pole are paired with the same poles of the moments,
so both are dropped and the regularized moment sum is used.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .. import core_special as cs
from ..errors import UnknownCase
from ..hypergeom import coefficient_ratio, pfq
from ..meijer_weight import regularized_moment
from ..structures import ParameterSet, SeriesValue, is_nonpositive_integer
from .instances import Family, IdentityInstance
from .moments import moment_series, needs_regularization

Scalars = dict[str, float]
SQRT_PI = math.sqrt(math.pi)


def gamma_reg(v: float) -> float:
    """Gamma(v), or 1 at a pole (the pole is carried by the regularized moments)."""
    return 1.0 if is_nonpositive_integer(v) else cs.gamma(v)


def _n(s: Scalars) -> int:
    n = s["n"]
    if n < 0 or n != round(n):
        raise ValueError(f"n must be a nonnegative integer, got {n:g}")
    return int(round(n))


@dataclass(frozen=True)
class Representation:
    name: str
    family: Family
    scalars: tuple[str, ...]
    params: Callable[[Scalars], ParameterSet]
    argument: Callable[[Scalars], complex | float]
    outer: Callable[[Scalars], complex | float]
    oracle: Callable[[Scalars], float]
    note: str = ""

    def moment_params(self, s: Scalars) -> ParameterSet:
        """Parameters whose BG weight is integrated."""
        pr = self.params(s)
        return pr.swapped() if self.family is Family.REAL_B else pr

    def inner_params(self, s: Scalars) -> ParameterSet:
        if self.family is Family.REAL_B:
            return ParameterSet((), (1.0,))
        pr = self.params(s)
        return ParameterSet(pr.a + pr.a, (1.0,) + pr.b + pr.b)

    def rhs_regularized(self, s: Scalars) -> complex | float:
        """Right-hand side with the same Gamma poles removed as in the moment sum."""
        pr = self.params(s)
        z = self.argument(s)
        pref = regularized_moment(self.moment_params(s), 0).value
        return pref * pfq(pr, z).value


def _poly(tag, n, x, lam=0.0):
    return cs.classical_poly(cs.PolyFamily(tag, lam), n, x)


def _bessel(kind, nu, x):
    return float(cs.bessel(kind, nu, x).value)


_T, _U = cs.PolyTag.CHEBYSHEV_T, cs.PolyTag.CHEBYSHEV_U


def _reps() -> dict[str, Representation]:
    reps = [
        Representation("sin_over_x", Family.REAL_A, ("x",),
                       lambda s: ParameterSet((), (1.5,)), lambda s: -s["x"] ** 2 / 4,
                       lambda s: 2 / SQRT_PI, lambda s: math.sin(s["x"]) / s["x"]),
        Representation("sinh_over_x", Family.REAL_A, ("x",),
                       lambda s: ParameterSet((), (1.5,)), lambda s: s["x"] ** 2 / 4,
                       lambda s: 2 / SQRT_PI, lambda s: math.sinh(s["x"]) / s["x"]),
        Representation("cos", Family.REAL_A, ("x",),
                       lambda s: ParameterSet((), (0.5,)), lambda s: -s["x"] ** 2 / 4,
                       lambda s: 1 / SQRT_PI, lambda s: math.cos(s["x"])),
        Representation("cosh", Family.REAL_A, ("x",),
                       lambda s: ParameterSet((), (0.5,)), lambda s: s["x"] ** 2 / 4,
                       lambda s: 1 / SQRT_PI, lambda s: math.cosh(s["x"])),
        Representation("laguerre", Family.REAL_B, ("n", "x", "lam"),
                       lambda s: ParameterSet((-_n(s),), (s["lam"] + 1,)), lambda s: s["x"],
                       lambda s: cs.gamma(s["lam"] + 1 + _n(s)) / math.factorial(_n(s)),
                       lambda s: _poly(cs.PolyTag.LAGUERRE, _n(s), s["x"], s["lam"])),
        Representation("laguerre_negative", Family.REAL_B, ("n", "x"),
                       lambda s: ParameterSet((_n(s) + 1.0,), (1.0,)), lambda s: s["x"],
                       lambda s: math.exp(-s["x"]) / math.factorial(_n(s)),
                       lambda s: _poly(cs.PolyTag.LAGUERRE, _n(s), -s["x"])),
        Representation("laguerre_inverse", Family.REAL_B, ("n", "x", "a"),
                       lambda s: ParameterSet((-_n(s), s["a"]), ()), lambda s: -1 / s["x"],
                       lambda s: (-1) ** _n(s) * s["x"] ** _n(s) / (math.factorial(_n(s)) * gamma_reg(s["a"])),
                       lambda s: _poly(cs.PolyTag.LAGUERRE, _n(s), s["x"], -s["a"] - _n(s))),
        Representation("hermite", Family.REAL_B, ("n", "x"),
                       lambda s: ParameterSet((-_n(s) / 2, (1 - _n(s)) / 2), ()), lambda s: -1 / s["x"] ** 2,
                       lambda s: (2 * s["x"]) ** _n(s) / (gamma_reg(-_n(s) / 2) * gamma_reg((1 - _n(s)) / 2)),
                       lambda s: _poly(cs.PolyTag.HERMITE, _n(s), s["x"])),
        Representation("bessel_k_half", Family.REAL_B, ("n", "x"),
                       lambda s: ParameterSet((-_n(s), _n(s) + 1.0), ()), lambda s: -1 / (2 * s["x"]),
                       lambda s: SQRT_PI * math.exp(-s["x"]) / (math.sqrt(2 * s["x"]) * math.factorial(_n(s))),
                       lambda s: _bessel(cs.BesselKind.K, _n(s) + 0.5, s["x"]),
                       "exponential factor exp(-x) used in the prefactor"),
        Representation("legendre_ratio", Family.REAL_B, ("n", "x"),
                       lambda s: ParameterSet((-_n(s), -_n(s)), (-2.0 * _n(s),)), lambda s: 2 / (1 - s["x"]),
                       lambda s: 2 ** _n(s) * cs.gamma(_n(s) + 0.5) / (SQRT_PI * math.factorial(_n(s)))
                       * (s["x"] - 1) ** _n(s),
                       lambda s: _poly(cs.PolyTag.LEGENDRE, _n(s), s["x"])),
        Representation("legendre", Family.REAL_B, ("n", "x"),
                       lambda s: ParameterSet((-_n(s), _n(s) + 1.0), (1.0,)), lambda s: (1 - s["x"]) / 2,
                       lambda s: 1 / math.factorial(_n(s)),
                       lambda s: _poly(cs.PolyTag.LEGENDRE, _n(s), s["x"]),
                       "second upper parameter taken as n+1, as the Legendre series requires"),
        Representation("legendre_symmetric", Family.REAL_B, ("n", "x"),
                       lambda s: ParameterSet((-_n(s), -_n(s)), (1.0,)), lambda s: (s["x"] - 1) / (s["x"] + 1),
                       lambda s: ((s["x"] + 1) / 2) ** _n(s),
                       lambda s: _poly(cs.PolyTag.LEGENDRE, _n(s), s["x"])),
        Representation("chebyshev_t", Family.REAL_B, ("n", "x"),
                       lambda s: ParameterSet((-_n(s), float(_n(s))), (0.5,)), lambda s: (1 - s["x"]) / 2,
                       lambda s: SQRT_PI / gamma_reg(_n(s)),
                       lambda s: _poly(_T, _n(s), s["x"])),
        Representation("chebyshev_t_reflected", Family.REAL_B, ("n", "x"),
                       lambda s: ParameterSet((-_n(s), float(_n(s))), (0.5,)), lambda s: (1 + s["x"]) / 2,
                       lambda s: (-1) ** _n(s) * SQRT_PI / gamma_reg(_n(s)),
                       lambda s: _poly(_T, _n(s), s["x"])),
        Representation("chebyshev_u", Family.REAL_B, ("n", "x"),
                       lambda s: ParameterSet((-_n(s), _n(s) + 2.0), (1.5,)), lambda s: (1 - s["x"]) / 2,
                       lambda s: SQRT_PI / (2 * math.factorial(_n(s))),
                       lambda s: _poly(_U, _n(s), s["x"])),
        Representation("chebyshev_u_reflected", Family.REAL_B, ("n", "x"),
                       lambda s: ParameterSet((-_n(s), _n(s) + 2.0), (1.5,)), lambda s: (1 + s["x"]) / 2,
                       lambda s: (-1) ** _n(s) * SQRT_PI / (2 * math.factorial(_n(s))),
                       lambda s: _poly(_U, _n(s), s["x"])),
        Representation("bessel_j", Family.REAL_B, ("nu", "x"),
                       lambda s: ParameterSet((s["nu"] + 0.5,), (2 * s["nu"] + 1,)), lambda s: 2j * s["x"],
                       lambda s: cmath.exp(-1j * s["x"]) * (2 * s["x"]) ** s["nu"] / SQRT_PI,
                       lambda s: _bessel(cs.BesselKind.J, s["nu"], s["x"])),
        Representation("bessel_i", Family.REAL_B, ("nu", "x"),
                       lambda s: ParameterSet((s["nu"] + 0.5,), (2 * s["nu"] + 1,)), lambda s: 2 * s["x"],
                       lambda s: math.exp(-s["x"]) * (2 * s["x"]) ** s["nu"] / SQRT_PI,
                       lambda s: _bessel(cs.BesselKind.I, s["nu"], s["x"])),
    ]
    return {r.name: r for r in reps}


REPRESENTATIONS: dict[str, Representation] = _reps()


def get_representation(target: str) -> Representation:
    try:
        return REPRESENTATIONS[target]
    except KeyError:
        raise UnknownCase(f"unknown representation {target!r}; known: {sorted(REPRESENTATIONS)}") from None


def representation_integral(rep: Representation, s: Scalars, max_terms: int | None = None) -> SeriesValue:
    """The (regularized) integral int W(u) K(AB u) du by moment summation."""
    inner = rep.inner_params(s)
    wp = rep.moment_params(s)
    return moment_series(wp, lambda k: coefficient_ratio(inner, k), rep.argument(s),
                         regularized=needs_regularization(wp), max_terms=max_terms)


def rep_eval(target: str, n: float | None = None, x: float | None = None, tol: float = 1e-10,
             max_terms: int | None = None, **extra: float) -> SeriesValue:
    """Evaluate ``target`` at (n, x) through its integral representation.

    ``extra`` carries the remaining scalars: ``lam`` for Laguerre, ``a`` for the
    inverse-argument Laguerre form, ``nu`` for Bessel J/I. ``tol`` bounds the accepted
    relative error estimate of the moment sum.
    """
    rep = get_representation(target)
    s: Scalars = dict(extra)
    if n is not None:
        s.setdefault("nu" if "nu" in rep.scalars else "n", float(n))
    if x is not None:
        s["x"] = float(x)
    s.setdefault("lam", 0.0)
    missing = [k for k in rep.scalars if k not in s]
    if missing:
        raise ValueError(f"{target} needs {missing}")
    integral = representation_integral(rep, s, max_terms)
    outer = rep.outer(s)
    value = outer * integral.value
    err = abs(outer) * integral.abs_error_estimate
    if isinstance(value, complex):
        err += abs(value.imag)
        value = value.real
    notes = integral.notes + ((rep.note,) if rep.note else ())
    converged = err <= max(tol * abs(value), 1e-300) or value == 0.0
    return SeriesValue(float(value), err, integral.terms_used, converged, integral.terminated, notes)


def representation_instance(target: str, label: str = "", **scalars: float) -> IdentityInstance:
    """An instance that verifies ``target`` at the given scalars."""
    rep = get_representation(target)
    s = {k: float(v) for k, v in scalars.items()}
    if "lam" in rep.scalars:
        s.setdefault("lam", 0.0)
    return IdentityInstance(rep.family, rep.params(s), scalars=s, target=target, label=label or target)
