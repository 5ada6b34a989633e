"""Meijer-G weights G^{q+1,0}_{p,q+1}(x | a-1; 0, b-1) and their Mellin moments."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
import numpy as np

from . import core_special as cs
from .errors import (
    ConfluentParameters,
    NotConverged,
    OutOfSupport,
    PoleAtNonpositiveInteger,
    UnsupportedParameters,
)
from .hypergeom import log_abs_structural_constant, radius_of_convergence
from .quadrature import integrate_weighted
from .structures import ParameterSet, SeriesValue, is_nonpositive_integer

SLATER_CHECK_MOMENTS = 6
SLATER_CHECK_TOL = 1e-6


class WeightTag(str, enum.Enum):
    EXPONENTIAL = "exponential"
    POWER_LAW_COMPACT = "power_law_compact"
    BESSEL_K = "bessel_k"
    TRICOMI_U = "tricomi_u"
    SLATER_SERIES = "slater_series"


@dataclass(frozen=True)
class WeightForm:
    tag: WeightTag
    params: ParameterSet
    support_upper: float


def classify_weight(params: ParameterSet) -> WeightForm:
    """Pick the evaluation strategy for the weight of ``params`` from (p, q)."""
    p, q = params.p, params.q
    if p > q + 1:
        raise UnsupportedParameters(f"p={p} > q+1={q + 1}: the weight has no moment-determinate form")
    upper = radius_of_convergence(params)
    if (p, q) == (0, 0):
        tag = WeightTag.EXPONENTIAL
    elif (p, q) == (1, 0):
        if params.a[0] <= 1.0:
            raise UnsupportedParameters(f"(1-x)^(a-2) is not integrable for a={params.a[0]:g} <= 1")
        tag = WeightTag.POWER_LAW_COMPACT
    elif (p, q) == (0, 1):
        tag = WeightTag.BESSEL_K
    elif (p, q) == (1, 1):
        tag = WeightTag.TRICOMI_U
    else:
        tag = WeightTag.SLATER_SERIES
    return WeightForm(tag, params, upper)


def weight_eval(form: WeightForm, x: float) -> SeriesValue:
    """Pointwise value of the weight on its support."""
    x = float(x)
    if not 0.0 < x < form.support_upper:
        raise OutOfSupport(f"x={x:g} outside (0, {form.support_upper:g})")
    pr = form.params
    if form.tag is WeightTag.EXPONENTIAL:
        return SeriesValue(math.exp(-x))
    if form.tag is WeightTag.POWER_LAW_COMPACT:
        a = pr.a[0]
        return SeriesValue((1.0 - x) ** (a - 2.0) * cs.rgamma(a - 1.0))
    if form.tag is WeightTag.BESSEL_K:
        nu = abs(pr.b[0] - 1.0)
        k = cs.bessel(cs.BesselKind.K, nu, 2.0 * math.sqrt(x))
        f = 2.0 * x ** ((pr.b[0] - 1.0) / 2.0)
        return SeriesValue(f * k.value, f * k.abs_error_estimate, k.terms_used)
    if form.tag is WeightTag.TRICOMI_U:
        a, b = pr.a[0], pr.b[0]
        if -x + abs(a - b) * math.log(x) < -760.0:
            return SeriesValue(0.0, 0.0, 0, True, False, ("below the double-precision range",))
        u = cs.tricomi_u(a - b, 2.0 - b, x)
        e = math.exp(-x)
        return SeriesValue(e * u.value, e * u.abs_error_estimate, u.terms_used, u.converged, u.terminated)
    alphas, betas = reduced_exponents(pr)
    if (len(alphas), len(betas)) in _CLOSED_FORMS:
        return _closed_form(alphas, betas, x)
    try:
        return slater_expand(pr).evaluate(x)
    except ConfluentParameters:
        return _meijerg_confluent(alphas, betas, x)


def _meijerg_confluent(alphas, betas, x: float) -> SeriesValue:
    """Integer-separated bottom exponents: mpmath resolves the logarithmic case by perturbation."""
    v = float(mpmath.meijerg([[], list(alphas)], [list(betas), []], x))
    return SeriesValue(v, 1e-15 * abs(v), 0, True, False, ("confluent exponents evaluated by mpmath",))


def reduced_exponents(params: ParameterSet) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Top and bottom exponents of the weight with coinciding pairs cancelled."""
    alphas = [a - 1.0 for a in params.a]
    betas = [0.0] + [b - 1.0 for b in params.b]
    kept = []
    for al in alphas:
        hit = next((j for j, bt in enumerate(betas) if abs(al - bt) <= 1e-14 * max(1.0, abs(bt))), None)
        if hit is None:
            kept.append(al)
        else:
            betas.pop(hit)
    if not betas:
        raise UnsupportedParameters(f"{params}: the weight reduces to a point mass")
    return tuple(kept), tuple(betas)


_CLOSED_FORMS = {(0, 1), (0, 2), (1, 1), (1, 2)}


def _closed_form(alphas, betas, x: float) -> SeriesValue:
    """G^{m,0}_{p,m}(x | alphas; betas) for the reduced orders with elementary forms."""
    if len(alphas) == 0 and len(betas) == 1:
        if -x + betas[0] * math.log(x) < -760.0:
            return SeriesValue(0.0, 0.0, 0, True, False, ("below the double-precision range",))
        return SeriesValue(x ** betas[0] * math.exp(-x))
    if len(alphas) == 0:
        b1, b2 = betas
        k = cs.bessel(cs.BesselKind.K, abs(b1 - b2), 2.0 * math.sqrt(x))
        f = 2.0 * x ** ((b1 + b2) / 2.0)
        return SeriesValue(f * k.value, f * k.abs_error_estimate, k.terms_used)
    if len(betas) == 1:
        if x >= 1.0:
            return SeriesValue(0.0)
        al, bt = alphas[0], betas[0]
        if al - bt <= 0.0:
            raise UnsupportedParameters(f"(1-x)^({al - bt - 1:g}) is not integrable")
        return SeriesValue(x ** bt * (1.0 - x) ** (al - bt - 1.0) * cs.rgamma(al - bt))
    al = alphas[0]
    b1, b2 = betas
    if -x + abs(al - min(b1, b2) - 1.0) * math.log(x) < -760.0:
        return SeriesValue(0.0, 0.0, 0, True, False, ("below the double-precision range",))
    u = cs.tricomi_u(al - b2, 1.0 + b1 - b2, x)
    f = x ** b1 * math.exp(-x)
    return SeriesValue(f * u.value, abs(f) * u.abs_error_estimate, u.terms_used, u.converged, u.terminated)


# --------------------------------------------------------------------------
# Mellin moments


def mellin_moment_s(params: ParameterSet, s: float) -> float:
    """int_0^R x^{s-1} W(x) dx = Gamma(s) prod Gamma(b-1+s) / prod Gamma(a-1+s)."""
    log_v = 0.0
    sign = 1.0
    for g in (s, *[b - 1.0 + s for b in params.b]):
        if is_nonpositive_integer(g):
            raise PoleAtNonpositiveInteger(f"Gamma({g:g}) in the moment numerator")
        log_v += float(cs.log_gamma(g).value)
        sign *= cs.gamma_sign(g)
    for g in (a - 1.0 + s for a in params.a):
        if is_nonpositive_integer(g):
            return 0.0
        log_v -= float(cs.log_gamma(g).value)
        sign *= cs.gamma_sign(g)
    return sign * math.exp(log_v)


def gamma_prefactor(params: ParameterSet) -> float:
    """prod Gamma(b_j) / prod Gamma(a_i), the zeroth moment."""
    return mellin_moment_s(params, 1.0)


def mellin_moment(params: ParameterSet, n: int) -> float:
    """int x^n W(x) dx = [prod Gamma(b)/prod Gamma(a)] n! prod (b)_n / prod (a)_n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    for b in params.b:
        if is_nonpositive_integer(b):
            raise PoleAtNonpositiveInteger(f"Gamma({b:g}) in the moment prefactor")
    log_rho, sign = log_abs_structural_constant(params, n)
    if sign == 0:
        return 0.0
    log_v = log_rho
    for b in params.b:
        log_v += float(cs.log_gamma(b).value)
        sign *= cs.gamma_sign(b)
    for a in params.a:
        if is_nonpositive_integer(a):
            raise PoleAtNonpositiveInteger(f"Gamma({a:g}) in the moment prefactor")
        log_v -= float(cs.log_gamma(a).value)
        sign *= cs.gamma_sign(a)
    return sign * math.exp(log_v)


@dataclass(frozen=True)
class RegularizedMoment:
    value: float
    poles_numerator: int
    poles_denominator: int


def _gamma_or_pochhammer(base: float, k: int) -> tuple[float, bool]:
    """Gamma(base+k), or (base)_k when base is a pole of Gamma."""
    if is_nonpositive_integer(base):
        return cs.pochhammer(float(round(base)), k), True
    return cs.gamma(base + k), False


def regularized_moment(params: ParameterSet, k: int) -> RegularizedMoment:
    """k! prod Gamma(b+k) / prod Gamma(a+k) with every Gamma(-m+k) replaced by (-m)_k.

    This is the moment divided by the pole factors Gamma(-m), which is finite and
    exact whenever the sum it enters terminates before a denominator Pochhammer vanishes.
    """
    num = float(math.factorial(k))
    n_poles = 0
    for b in params.b:
        g, pole = _gamma_or_pochhammer(b, k)
        num *= g
        n_poles += pole
    d_poles = sum(1 for a in params.a if is_nonpositive_integer(a))
    if num == 0.0:
        return RegularizedMoment(0.0, n_poles, d_poles)
    den = 1.0
    for a in params.a:
        den *= _gamma_or_pochhammer(a, k)[0]
    if den == 0.0:
        raise PoleAtNonpositiveInteger(f"regularized moment k={k} divides by a vanishing Pochhammer")
    return RegularizedMoment(num / den, n_poles, d_poles)


# --------------------------------------------------------------------------
# Slater residue series


@dataclass(frozen=True)
class SlaterTerm:
    beta: float
    upper: tuple[float, ...]
    lower: tuple[float, ...]


@dataclass
class SlaterExpansion:
    """W(x) = sum_h C_h x^{beta_h} pF_q(1+beta_h-alpha; 1+beta_h-beta_{j!=h}; sign x)."""

    params: ParameterSet
    terms: tuple[SlaterTerm, ...]
    sign: int
    support_upper: float
    alphas: tuple[float, ...]
    betas: tuple[float, ...]
    check: list[float] = field(default_factory=list)
    max_terms: int = 20_000

    def _setup(self, dps: int):
        """Coefficients and term parameters at ``dps`` digits, cached per precision."""
        cache = self.__dict__.setdefault("_cache", {})
        if dps not in cache:
            rows = []
            for h, bh in enumerate(self.betas):
                bh = mpmath.mpf(bh)
                c = mpmath.mpf(1)
                for j, bj in enumerate(self.betas):
                    if j != h:
                        c *= mpmath.gamma(mpmath.mpf(bj) - bh)
                for al in self.alphas:
                    c *= mpmath.rgamma(mpmath.mpf(al) - bh)
                # parameters formed in working precision so every term matches its coefficient
                upper = [1 + bh - mpmath.mpf(al) for al in self.alphas]
                lower = [1 + bh - mpmath.mpf(bj) for j, bj in enumerate(self.betas) if j != h]
                rows.append((c, bh, upper, lower))
            cache[dps] = rows
        return cache[dps]

    def _sum_at(self, x: float, dps: int):
        with mpmath.workdps(dps):
            xm = mpmath.mpf(x)
            total = mpmath.mpf(0)
            mag = mpmath.mpf(0)
            eps = mpmath.mpf(10) ** (-dps)
            for coef, bh, upper, lower in self._setup(dps):
                if coef == 0:
                    continue
                s, smag = self._series(upper, lower, self.sign * xm, eps)
                pref = coef * xm ** bh
                total += pref * s
                mag += abs(pref) * smag
            return total, mag

    def _sum_double(self, x: float) -> tuple[float, float]:
        rows = self.__dict__.get("_rows_double")
        if rows is None:
            rows = [(float(c), float(bh), [float(v) for v in up], [float(v) for v in lo])
                    for c, bh, up, lo in self._setup(30)]
            self.__dict__["_rows_double"] = rows
        total = 0.0
        mag = 0.0
        for coef, bh, upper, lower in rows:
            if coef == 0.0:
                continue
            s, smag = self._series(upper, lower, self.sign * x, 1e-17)
            pref = coef * x ** bh
            total += pref * s
            mag += abs(pref) * smag
        return float(total), float(mag)

    def _series(self, upper, lower, z, eps):
        t = s = mag = 1
        small = 0
        for k in range(self.max_terms):
            r = z / (k + 1)
            for a in upper:
                r *= a + k
            for b in lower:
                r /= b + k
            t *= r
            if t == 0:
                return s, mag
            s += t
            mag += abs(t)
            small = small + 1 if abs(t) <= eps * abs(s) else 0
            if small >= 3 and abs(r) < 1:
                return s, mag
        raise NotConverged(f"Slater series did not converge within {self.max_terms} terms at x={z}")

    def evaluate(self, x: float) -> SeriesValue:
        """Evaluate with enough working digits to absorb the cancellation between terms."""
        if not 0.0 < x < self.support_upper:
            raise OutOfSupport(f"x={x:g} outside (0, {self.support_upper:g})")
        kappa = self.params.q + 1 - self.params.p
        if kappa > 0:
            envelope = kappa * x ** (1.0 / kappa)
            if envelope > 760.0:
                return SeriesValue(0.0, 0.0, 0, True, False, ("below the double-precision range",))
        else:
            envelope = 0.0
        # the terms grow like exp(+envelope) while their sum decays like exp(-envelope)
        if 2.0 * envelope / math.log(10.0) < 4.0:
            total, mag = self._sum_double(x)
            if total != 0.0 and mag / abs(total) < 1e4:
                return SeriesValue(total, 1e-15 * mag, 0)
        dps = 10 * math.ceil((30 + 2.0 * envelope / math.log(10.0)) / 10)
        for _ in range(6):
            total, mag = self._sum_at(x, dps)
            if total == 0:
                lost = dps
            else:
                lost = float(mpmath.log10(mag / abs(total))) if mag > 0 else 0.0
            if dps - lost >= 20:
                err = float(mag) * 10.0 ** (-dps)
                return SeriesValue(float(total), err, dps)
            dps = 10 * math.ceil((lost + 30) / 10)
        raise NotConverged(f"Slater series lost all digits at x={x:g}")


def _slater_build(params: ParameterSet) -> SlaterExpansion:
    alphas, betas = reduced_exponents(params)
    for i in range(len(betas)):
        for j in range(i + 1, len(betas)):
            d = betas[i] - betas[j]
            if abs(d - round(d)) < 1e-12:
                raise ConfluentParameters(
                    f"bottom exponents {betas[i]:g} and {betas[j]:g} differ by an integer")
    terms = []
    for h, bh in enumerate(betas):
        upper = tuple(1.0 + bh - al for al in alphas)
        lower = tuple(1.0 + bh - bj for j, bj in enumerate(betas) if j != h)
        terms.append(SlaterTerm(bh, upper, lower))
    sign = -1 if (len(alphas) - len(betas)) % 2 else 1
    return SlaterExpansion(params, tuple(terms), sign, radius_of_convergence(params), alphas, betas)


def _self_check(exp: SlaterExpansion) -> list[float]:
    n = np.arange(SLATER_CHECK_MOMENTS)
    quad = integrate_weighted(lambda u: u ** n * exp.evaluate(u).value,
                              upper=exp.support_upper, tol=1e-9)
    rels = []
    for k in n:
        ref = mellin_moment(exp.params, int(k))
        rels.append(abs(quad.value[k] - ref) / abs(ref))
    if max(rels) > SLATER_CHECK_TOL:
        raise NotConverged(f"Slater expansion fails its moment check (worst rel {max(rels):.2e})")
    return rels


@lru_cache(maxsize=64)
def slater_expand(params: ParameterSet) -> SlaterExpansion:
    """Residue-series form of the weight, validated on its first moments before use."""
    exp = _slater_build(params)
    exp.check = _self_check(exp)
    return exp
