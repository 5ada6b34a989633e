"""Barut-Girardello, Klauder-Perelomov and Gazeau-Klauder coherent states built on pFq."""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import CsintError, OutsideConvergenceDisc
from .hypergeom import energy, log_abs_structural_constant, pfq, radius_of_convergence
from .meijer_weight import classify_weight, gamma_prefactor, mellin_moment, weight_eval
from .quadrature import integrate_weighted
from .structures import ParameterSet

DEFAULT_TRUNCATION = 60


class CSKind(str, enum.Enum):
    BG = "BG"
    KP = "KP"
    GK = "GK"


@dataclass(frozen=True)
class CoherentStateFamily:
    kind: CSKind
    params: ParameterSet
    truncation: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        object.__setattr__(self, "kind", CSKind(self.kind))
        if self.truncation < 1:
            raise ValueError("truncation must be positive")
        if self.radius == 0.0:
            raise OutsideConvergenceDisc(f"{self.params} has zero radius of convergence")

    @property
    def norm_params(self) -> ParameterSet:
        """Parameters of the normalizing series (swapped for KP)."""
        return self.params.swapped() if self.kind is CSKind.KP else self.params

    @property
    def radius(self) -> float:
        return radius_of_convergence(self.norm_params)

    @property
    def weight_params(self) -> ParameterSet:
        """Parameters whose Meijer-G weight enters the measure."""
        return self.norm_params


PRESETS: dict[str, CoherentStateFamily] = {
    "ho1d": CoherentStateFamily(CSKind.BG, ParameterSet()),
    "pseudoharmonic-like": CoherentStateFamily(CSKind.BG, ParameterSet((), (2.0,))),
    "compact-kp": CoherentStateFamily(CSKind.KP, ParameterSet((), (2.0,))),
}


def _label(family: CoherentStateFamily, z) -> tuple[complex, float]:
    """(complex label, phase parameter gamma); GK labels are (J, gamma) pairs."""
    if family.kind is CSKind.GK:
        j, gam = z
        if j < 0:
            raise ValueError("GK action variable J must be nonnegative")
        return complex(math.sqrt(j)), float(gam)
    return complex(z), 0.0


def _check_disc(family: CoherentStateFamily, z: complex) -> None:
    if abs(z) ** 2 >= family.radius:
        raise OutsideConvergenceDisc(f"|z|^2 = {abs(z) ** 2:g} outside the disc of radius {family.radius:g}")


def _norm(family: CoherentStateFamily, x: float) -> float:
    return float(pfq(family.norm_params, float(x)).value)


def _log_amplitude(family: CoherentStateFamily, n: int) -> float:
    """log of the unnormalized |<n|z>| / |z|^n."""
    log_rho, _ = log_abs_structural_constant(family.params, n)
    if family.kind is CSKind.KP:
        return 0.5 * log_rho - math.lgamma(n + 1)
    return -0.5 * log_rho


def _amplitude(family: CoherentStateFamily, n: int) -> float:
    return math.exp(_log_amplitude(family, n))


def _phase(family: CoherentStateFamily, n: int, gam: float) -> complex:
    # e(0) is left undefined; the vacuum carries no phase
    if family.kind is not CSKind.GK or n == 0 or gam == 0.0:
        return 1.0
    return cmath.exp(-1j * gam * energy(family.params, n))


def cs_coefficient(family: CoherentStateFamily, n: int, z) -> complex:
    """Normalized expansion coefficient <n|z>."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    w, gam = _label(family, z)
    _check_disc(family, w)
    if w == 0:
        return complex(1.0 if n == 0 else 0.0)
    log_mod = _log_amplitude(family, n) + n * math.log(abs(w)) - 0.5 * math.log(_norm(family, abs(w) ** 2))
    direction = (w / abs(w)) ** n
    return complex(math.exp(log_mod) * direction * _phase(family, n, gam))


def overlap(family: CoherentStateFamily, z, zp) -> complex:
    """<z|z'> from the closed-form kernel (BG, KP) or the truncated Fock sum (GK)."""
    w, gam = _label(family, z)
    wp, gamp = _label(family, zp)
    _check_disc(family, w)
    _check_disc(family, wp)
    if family.kind is CSKind.GK:
        return overlap_truncated(family, z, zp)
    kernel = pfq(family.norm_params, w.conjugate() * wp).value
    return complex(kernel) / math.sqrt(_norm(family, abs(w) ** 2) * _norm(family, abs(wp) ** 2))


def overlap_truncated(family: CoherentStateFamily, z, zp, truncation: int | None = None) -> complex:
    """sum_{n<=M} <z|n><n|z'>, stopping early once terms fall below 1e-16 of the sum."""
    m = truncation or family.truncation
    total = 0j
    for n in range(m + 1):
        term = cs_coefficient(family, n, z).conjugate() * cs_coefficient(family, n, zp)
        total += term
        if n > 2 and abs(term) <= 1e-16 * abs(total):
            break
    return total


def unity_residual(family: CoherentStateFamily, n: int | list[int]) -> float | np.ndarray:
    """|int dmu(z) |<n|z>|^2 - 1| with the angular integral done analytically.

    The radial integral is computed by quadrature of the weight; when the weight has
    no pointwise form the exact Mellin moment is used instead.
    """
    ns = np.atleast_1d(np.asarray(n, dtype=int))
    wp = family.weight_params
    try:
        form = classify_weight(wp)
        quad = integrate_weighted(lambda u: u ** ns * weight_eval(form, u).value,
                                  upper=form.support_upper, tol=1e-10)
        moments = quad.value
    except CsintError:
        moments = np.array([mellin_moment(wp, int(k)) for k in ns])
    res = []
    for k, mom in zip(ns, moments):
        amp2 = _amplitude(family, int(k)) ** 2
        res.append(abs(mom * amp2 / gamma_prefactor(wp) - 1.0))
    out = np.array(res)
    return float(out[0]) if np.ndim(n) == 0 else out
