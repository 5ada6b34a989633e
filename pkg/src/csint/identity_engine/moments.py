"""Term-by-term Mellin-moment summation sum_k c_k X^k C^{k+1} M_k."""
from __future__ import annotations

import cmath
import math
from typing import Callable, Sequence

from .. import core_special as cs
from ..errors import NotConverged, PoleAtNonpositiveInteger
from ..hypergeom import log_abs_structural_constant
from ..structures import ParameterSet, SeriesValue, is_nonpositive_integer, max_terms_default

_EPS = 2.220446049250313e-16
_CONSECUTIVE = 3


def needs_regularization(params: ParameterSet) -> bool:
    return any(is_nonpositive_integer(v) for v in params.a + params.b)


def _log_gamma(x: float) -> tuple[float, float]:
    return float(cs.log_gamma(x).value), cs.gamma_sign(x)


def log_moment(params: ParameterSet, k: int, regularized: bool = False) -> tuple[float, float]:
    """(log|M_k|, sign) of the k-th moment of the weight of ``params``; sign 0 if it vanishes.

    With ``regularized`` every Gamma(-m+k) is replaced by (-m)_k, which removes the
    factors Gamma(-m) from the moment.
    """
    if not regularized:
        log_rho, sign = log_abs_structural_constant(params, k)
        if sign == 0:
            return -math.inf, 0.0
        total = log_rho
        for b in params.b:
            if is_nonpositive_integer(b):
                raise PoleAtNonpositiveInteger(f"Gamma({b:g}) in the moment prefactor")
            lg, s = _log_gamma(b)
            total += lg
            sign *= s
        for a in params.a:
            if is_nonpositive_integer(a):
                raise PoleAtNonpositiveInteger(f"Gamma({a:g}) in the moment prefactor")
            lg, s = _log_gamma(a)
            total -= lg
            sign *= s
        return total, sign

    def part(v):
        if is_nonpositive_integer(v):
            return cs.log_abs_pochhammer(float(round(v)), k)
        return _log_gamma(v + k)

    total = math.lgamma(k + 1)
    sign = 1.0
    for b in params.b:
        lg, s = part(b)
        if s == 0:
            return -math.inf, 0.0
        total += lg
        sign *= s
    for a in params.a:
        lg, s = part(a)
        if s == 0:
            raise PoleAtNonpositiveInteger(f"regularized moment k={k} divides by a vanishing Pochhammer")
        total -= lg
        sign *= s
    return total, sign


def moment_series(params: ParameterSet, coefficient_ratio: Callable[[int], float] | None = None,
                  x: complex | float = 1.0, scale: float = 1.0,
                  coefficients: Sequence[float] | None = None, regularized: bool | None = None,
                  max_terms: int | None = None) -> SeriesValue:
    """sum_k c_k x^k scale^{k+1} M_k with c_0 = 1 and c_{k+1} = c_k * ratio(k).

    ``coefficients`` gives a finite list c_0..c_K instead of the ratio. The sum stops
    when the coefficients or the (regularized) moments vanish identically, or after
    three consecutive terms below double-precision resolution of the partial sum.
    """
    if regularized is None:
        regularized = needs_regularization(params)
    budget = max_terms or max_terms_default()
    if coefficients is not None:
        budget = min(budget, len(coefficients))
    is_complex = isinstance(x, complex)
    log_x = cmath.log(x) if x != 0 else None
    total = 0j if is_complex else 0.0
    mag = 0.0
    log_c, sign_c = 0.0, 1.0
    small = 0
    prev = None
    ratio = 1.0
    notes = []
    terminated = False
    k = 0
    for k in range(budget):
        if coefficients is not None:
            c = coefficients[k]
            if c == 0.0:
                continue
            log_c, sign_c = math.log(abs(c)), math.copysign(1.0, c)
        elif k > 0:
            r = coefficient_ratio(k - 1)
            if r == 0.0:
                terminated = True
                break
            log_c += math.log(abs(r))
            sign_c *= math.copysign(1.0, r)
        if k > 0 and log_x is None:
            terminated = True
            break
        log_m, sign_m = log_moment(params, k, regularized)
        if sign_m == 0:
            if regularized:
                # a vanishing Pochhammer (-m)_k stays zero for every larger k
                terminated = True
                break
            continue
        log_t = log_c + log_m + (k + 1) * math.log(scale)
        if k > 0:
            log_t += k * log_x.real
        if log_t > 700:
            raise NotConverged(f"moment series term {k} overflows")
        t = sign_c * sign_m * math.exp(log_t)
        if is_complex and k > 0:
            t = t * cmath.exp(1j * k * log_x.imag)
        elif k > 0 and x < 0 and k % 2:
            t = -t
        total += t
        mag += abs(t)
        if prev is not None and prev != 0:
            ratio = abs(t) / prev
        prev = abs(t)
        small = small + 1 if abs(t) <= 0.25 * _EPS * abs(total) else 0
        if small >= _CONSECUTIVE and ratio < 1.0:
            break
    else:
        if coefficients is not None:
            terminated = True
        else:
            raise NotConverged(f"moment series did not converge within {budget} terms")
    tail = 0.0 if terminated else (prev or 0.0) * ratio / max(1.0 - ratio, 1e-3)
    err = tail + 8.0 * _EPS * mag * (1.0 + math.log10(max(k, 1) + 1))
    if mag > 1e3 * abs(total):
        notes.append(f"cancellation {mag / max(abs(total), 1e-300):.1e} in the moment sum")
    if regularized:
        notes.append("Gamma(-n) factors removed: Pochhammer-ratio moments used")
    return SeriesValue(total, err, k + 1, True, terminated, tuple(notes))
