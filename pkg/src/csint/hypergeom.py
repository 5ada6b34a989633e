"""Generalized hypergeometric series, structural constants and a dictionary of closed forms."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import core_special as cs
from .errors import (
    DivergentSeries,
    DivisionByZero,
    LowerParameterPole,
    NotConverged,
    PoleAtNonpositiveInteger,
    UnknownCase,
)
from .structures import ParameterSet, SeriesValue, is_nonpositive_integer, max_terms_default

DEFAULT_TOL = 1e-15
_EPS = float(np.finfo(float).eps)
_CONSECUTIVE = 3


def termination_index(params: ParameterSet) -> int | None:
    """Smallest m with some a_i = -m, or None when the series does not terminate."""
    ms = [-round(a) for a in params.a if is_nonpositive_integer(a)]
    return min(ms) if ms else None


def _check_lower(params: ParameterSet, m: int | None) -> None:
    for b in params.b:
        if is_nonpositive_integer(b):
            mb = -round(b)
            if m is None or mb < m:
                raise LowerParameterPole(
                    f"lower parameter {b:g} is reached before the series terminates")


def _check_divergence(params: ParameterSet, absz: float) -> None:
    p, q = params.p, params.q
    if p > q + 1:
        raise DivergentSeries(f"{p}F{q} with nonterminating parameters diverges for z != 0")
    if p == q + 1 and absz >= 1.0:
        raise DivergentSeries(f"{p}F{q} diverges for |z| = {absz:g} >= 1")


def coefficient_ratio(params: ParameterSet, k: int) -> float:
    """Coefficient ratio c_{k+1}/c_k without the z factor."""
    r = 1.0 / (k + 1)
    for a in params.a:
        r *= a + k
    for b in params.b:
        r /= b + k
    return r


def pfq(params: ParameterSet, z, tol: float = DEFAULT_TOL, max_terms: int | None = None) -> SeriesValue:
    """Sum pFq(a; b; z) by the term recurrence.

    A real ``z`` gives a real value, a complex ``z`` a complex one. The sum stops after
    three consecutive terms below ``tol`` relative to the partial sum, once the
    remaining tail is also bounded by ``tol``.
    """
    if max_terms is None:
        max_terms = max_terms_default()
    is_complex = isinstance(z, complex) or np.iscomplexobj(z)
    z = complex(z) if is_complex else float(z)
    m = termination_index(params)
    _check_lower(params, m)

    if m is not None:
        term = 1.0
        total = 1.0
        mag = 1.0
        for k in range(m):
            term = term * z * coefficient_ratio(params, k)
            total += term
            mag += abs(term)
        err = _EPS * math.sqrt(m + 1) * mag
        return SeriesValue(total, err, m + 1, True, True)

    if z == 0:
        return SeriesValue(complex(1.0) if is_complex else 1.0, 0.0, 1, True)
    _check_divergence(params, abs(z))
    absz = abs(z)
    limit_ratio = absz if params.p == params.q + 1 else 0.0

    term = 1.0
    total = 1.0
    mag = 1.0
    small = 0
    for k in range(max_terms):
        r = coefficient_ratio(params, k)
        term = term * z * r
        total += term
        mag += abs(term)
        if abs(term) <= tol * abs(total):
            small += 1
        else:
            small = 0
        if small >= _CONSECUTIVE:
            # tail of a series whose term ratio is bounded by rho < 1
            rho = max(abs(z * coefficient_ratio(params, k + 1)), limit_ratio)
            if rho < 1.0:
                tail = abs(term) * rho / (1.0 - rho)
                if tail <= tol * abs(total):
                    err = 2.0 * tail + _EPS * mag
                    notes = ()
                    if err > max(tol, 1e-13) * abs(total):
                        notes = (f"cancellation: sum of |terms| {mag:.3g} vs |sum| {abs(total):.3g}",)
                    return SeriesValue(total, err, k + 2, True, False, notes)
    raise NotConverged(f"pFq did not converge within {max_terms} terms at z={z}")


def pfq_array(params: ParameterSet, z: np.ndarray, tol: float = DEFAULT_TOL,
              max_terms: int | None = None) -> np.ndarray:
    """Vectorized ``pfq`` value over an array of arguments (real or complex)."""
    if max_terms is None:
        max_terms = max_terms_default()
    z = np.asarray(z)
    m = termination_index(params)
    _check_lower(params, m)
    out_dtype = complex if np.iscomplexobj(z) else float
    term = np.ones(z.shape, dtype=out_dtype)
    total = np.ones(z.shape, dtype=out_dtype)
    if m is not None:
        for k in range(m):
            term = term * z * coefficient_ratio(params, k)
            total = total + term
        return total
    if z.size == 0 or not np.any(z != 0):
        return total
    absmax = float(np.max(np.abs(z)))
    _check_divergence(params, absmax)
    limit_ratio = absmax if params.p == params.q + 1 else 0.0
    small = 0
    for k in range(max_terms):
        term = term * z * coefficient_ratio(params, k)
        total = total + term
        if np.all(np.abs(term) <= tol * np.abs(total)):
            small += 1
        else:
            small = 0
        if small >= _CONSECUTIVE:
            rho = max(absmax * abs(coefficient_ratio(params, k + 1)), limit_ratio)
            if rho < 1.0 and np.all(np.abs(term) * rho / (1.0 - rho) <= tol * np.abs(total)):
                return total
    raise NotConverged(f"pFq did not converge within {max_terms} terms")


def pfq_coefficients(params: ParameterSet, count: int) -> np.ndarray:
    """Series coefficients prod (a)_k / (prod (b)_k k!) for k = 0..count-1."""
    m = termination_index(params)
    _check_lower(params, m)
    c = np.zeros(count)
    if count == 0:
        return c
    c[0] = 1.0
    for k in range(count - 1):
        c[k + 1] = c[k] * coefficient_ratio(params, k)
    return c


# --------------------------------------------------------------------------
# Structural constants, energies, convergence radius


def _pole_check(params: ParameterSet, n: int) -> None:
    for a in params.a:
        if is_nonpositive_integer(a) and -round(a) < n:
            raise PoleAtNonpositiveInteger(
                f"(a)_n vanishes for a={a:g}, n={n}; structural constant undefined")


def structural_constant(params: ParameterSet, n: int) -> float:
    """rho(n) = n! prod (b_j)_n / prod (a_i)_n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    _pole_check(params, n)
    if n <= 20:
        num = float(math.factorial(n))
        for b in params.b:
            num *= cs.pochhammer(b, n)
        for a in params.a:
            num /= cs.pochhammer(a, n)
        return num
    log_v, sign = log_abs_structural_constant(params, n)
    if sign == 0:
        return 0.0
    return sign * math.exp(log_v) if log_v < 709.0 else sign * math.inf


def log_abs_structural_constant(params: ParameterSet, n: int) -> tuple[float, float]:
    """(log |rho(n)|, sign of rho(n)); sign 0 when a lower Pochhammer vanishes."""
    _pole_check(params, n)
    log_v = math.lgamma(n + 1)
    sign = 1.0
    for b in params.b:
        lb, sb = cs.log_abs_pochhammer(b, n)
        if sb == 0:
            return -math.inf, 0.0
        log_v += lb
        sign *= sb
    for a in params.a:
        la, sa = cs.log_abs_pochhammer(a, n)
        log_v -= la
        sign *= sa
    return log_v, sign


def energy(params: ParameterSet, n: int) -> float:
    """e(n) = n prod (b_j - 1 + n) / prod (a_i - 1 + n), defined for n >= 1."""
    if n < 1:
        raise ValueError("energy is defined for n >= 1")
    num = float(n)
    for b in params.b:
        num *= b - 1.0 + n
    den = 1.0
    for a in params.a:
        den *= a - 1.0 + n
    if den == 0.0:
        raise DivisionByZero(f"a_i - 1 + n vanishes at n={n}")
    return num / den


def radius_of_convergence(params: ParameterSet) -> float:
    """Radius of convergence of sum z^n / rho(n) by the degree rule."""
    if params.p <= params.q:
        return math.inf
    if params.p == params.q + 1:
        return 1.0
    return 0.0


def radius_ratio_estimate(params: ParameterSet, n: int = 1000) -> float:
    """rho(n+1)/rho(n) = e(n+1), the finite-n estimate of the radius."""
    return energy(params, n + 1)


# --------------------------------------------------------------------------
# Closed forms of particular series

def _bessel_val(kind: cs.BesselKind, nu: float, x: float) -> float:
    return float(cs.bessel(kind, nu, x).value)


def _laguerre(n: int, lam: float, x: float) -> float:
    return cs.classical_poly(cs.PolyFamily.laguerre(lam), n, x)


def _poly(tag: cs.PolyTag, n: int, x: float) -> float:
    return cs.classical_poly(cs.PolyFamily(tag), n, x)


def _f(a, b, z, tol=DEFAULT_TOL):
    return pfq(ParameterSet(a, b), z, tol).value


def _int_index(n) -> int:
    if float(n) != round(float(n)) or n < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {n!r}")
    return int(round(float(n)))


# case id -> (closed form, hypergeometric form); each takes (n_or_order, x, lam)
_Case = tuple[Callable[[float, float, float], float], Callable[[float, float, float], float]]

SPECIAL_CASES: dict[str, _Case] = {
    "exp": (
        lambda n, x, lam: math.exp(x),
        lambda n, x, lam: _f((), (), x),
    ),
    "binomial": (
        lambda a, x, lam: (1.0 - x) ** (-a),
        lambda a, x, lam: _f((a,), (), x),
    ),
    "bessel_j": (
        lambda nu, x, lam: _bessel_val(cs.BesselKind.J, nu, x),
        lambda nu, x, lam: (x / 2) ** nu * cs.rgamma(nu + 1) * _f((), (nu + 1,), -x * x / 4),
    ),
    "bessel_i": (
        lambda nu, x, lam: _bessel_val(cs.BesselKind.I, nu, x),
        lambda nu, x, lam: (x / 2) ** nu * cs.rgamma(nu + 1) * _f((), (nu + 1,), x * x / 4),
    ),
    "sin": (
        lambda n, x, lam: math.sin(x) / x if x != 0 else 1.0,
        lambda n, x, lam: _f((), (1.5,), -x * x / 4),
    ),
    "sinh": (
        lambda n, x, lam: math.sinh(x) / x if x != 0 else 1.0,
        lambda n, x, lam: _f((), (1.5,), x * x / 4),
    ),
    "cos": (
        lambda n, x, lam: math.cos(x),
        lambda n, x, lam: _f((), (0.5,), -x * x / 4),
    ),
    "cosh": (
        lambda n, x, lam: math.cosh(x),
        lambda n, x, lam: _f((), (0.5,), x * x / 4),
    ),
    "laguerre": (
        lambda n, x, lam: _laguerre(_int_index(n), lam, x),
        lambda n, x, lam: (cs.pochhammer(lam + 1, _int_index(n)) / math.factorial(_int_index(n))
                           * _f((-n,), (lam + 1,), x)),
    ),
    "laguerre_2f0": (
        lambda n, x, lam: _laguerre(_int_index(n), lam, x),
        lambda n, x, lam: (-x) ** _int_index(n) / math.factorial(_int_index(n))
        * _f((-n, -lam - n), (), -1.0 / x),
    ),
    "bessel_k": (
        lambda n, x, lam: _bessel_val(cs.BesselKind.K, _int_index(n) + 0.5, x),
        lambda n, x, lam: math.sqrt(math.pi / (2 * x)) * math.exp(-x)
        * _f((-n, n + 1), (), -1.0 / (2 * x)),
    ),
    "hermite": (
        lambda n, x, lam: _poly(cs.PolyTag.HERMITE, _int_index(n), x),
        lambda n, x, lam: (2 * x) ** _int_index(n) * _f((-n / 2, (1 - n) / 2), (), -1.0 / (x * x)),
    ),
    "legendre": (
        lambda n, x, lam: _poly(cs.PolyTag.LEGENDRE, _int_index(n), x),
        lambda n, x, lam: _f((-n, n + 1), (1.0,), (1 - x) / 2),
    ),
    "legendre_2": (
        lambda n, x, lam: _poly(cs.PolyTag.LEGENDRE, _int_index(n), x),
        lambda n, x, lam: ((1 + x) / 2) ** _int_index(n) * _f((-n, -n), (1.0,), -(1 - x) / (1 + x)),
    ),
    "legendre_3": (
        lambda n, x, lam: _poly(cs.PolyTag.LEGENDRE, _int_index(n), x),
        lambda n, x, lam: (2.0 ** n * cs.gamma(n + 0.5) / (math.sqrt(math.pi) * math.factorial(_int_index(n)))
                           * (x - 1) ** _int_index(n) * _f((-n, -n), (-2.0 * n,), 2 / (1 - x))
                           if n > 0 else 1.0),
    ),
    "chebyshev_t": (
        lambda n, x, lam: _poly(cs.PolyTag.CHEBYSHEV_T, _int_index(n), x),
        lambda n, x, lam: _f((-n, n), (0.5,), (1 - x) / 2),
    ),
    "chebyshev_u": (
        lambda n, x, lam: _poly(cs.PolyTag.CHEBYSHEV_U, _int_index(n), x),
        lambda n, x, lam: (n + 1) * _f((-n, n + 2), (1.5,), (1 - x) / 2),
    ),
    "bessel_j_1f1": (
        lambda nu, x, lam: _bessel_val(cs.BesselKind.J, nu, x),
        lambda nu, x, lam: (complex(np.exp(-1j * x)) * (x / 2) ** nu * cs.rgamma(nu + 1)
                            * _f((nu + 0.5,), (2 * nu + 1,), 2j * x)).real,
    ),
    "bessel_i_1f1": (
        lambda nu, x, lam: _bessel_val(cs.BesselKind.I, nu, x),
        lambda nu, x, lam: math.exp(-x) * (x / 2) ** nu * cs.rgamma(nu + 1)
        * _f((nu + 0.5,), (2 * nu + 1,), 2 * x),
    ),
}


def _case(case_id: str) -> _Case:
    try:
        return SPECIAL_CASES[case_id]
    except KeyError:
        raise UnknownCase(case_id) from None


def special_case_eval(case_id: str, n_or_order: float, x: float, lam: float = 0.0) -> float:
    """Closed-form side of a dictionary entry."""
    return float(_case(case_id)[0](n_or_order, x, lam))


def special_case_hyp(case_id: str, n_or_order: float, x: float, lam: float = 0.0) -> float:
    """Hypergeometric side (prefactor times pFq) of a dictionary entry."""
    return float(_case(case_id)[1](n_or_order, x, lam))
