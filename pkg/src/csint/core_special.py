"""Classical special functions used as building blocks and as independent oracles.

Gamma/log-gamma, Pochhammer symbols, Bessel J/I/K of real argument, the Tricomi
confluent function U and the five classical orthogonal polynomial families.
Everything here is deterministic and free of shared mutable state.
"""
from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import NotConverged, PoleAtNonpositiveInteger
from .structures import SeriesValue, is_nonpositive_integer

EULER_GAMMA = 0.57721566490153286061
_LOG_PI = math.log(math.pi)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# B_{2k} / (2k (2k-1)) for the Stirling series, k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_STIRLING_MIN = 10.0


def _zeta_minus_one(k: int, n_direct: int = 50) -> float:
    # Euler-Maclaurin tail; Bernoulli numbers B2..B10
    bern = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0)
    s = math.fsum(n ** -k for n in range(2, n_direct))
    big_n = float(n_direct)
    tail = big_n ** (1 - k) / (k - 1) + 0.5 * big_n ** -k
    rising = float(k)  # (k)_{2j-1}
    fact = 2.0  # (2j)!
    for j, b in enumerate(bern, start=1):
        tail += b / fact * rising * big_n ** (-k - 2 * j + 1)
        rising *= (k + 2 * j - 1) * (k + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
    return s + tail


_ZETA_M1 = tuple(_zeta_minus_one(k) for k in range(2, 60))


def _lgamma_near_one(d: float) -> float:
    """log Gamma(2 + d) for |d| <= 0.5, accurate in the relative sense near d = 0."""
    acc = d * (1.0 - EULER_GAMMA)
    power = -d
    for k, zm1 in enumerate(_ZETA_M1, start=2):
        power *= -d
        term = zm1 * power / k
        acc += term
        if abs(term) < 1e-18 * max(abs(acc), 1e-300):
            break
    return acc


def _stirling(x):
    inv = 1.0 / x
    inv2 = inv * inv
    corr = 0.0
    pw = inv
    for c in _STIRLING:
        corr += c * pw
        pw *= inv2
    if isinstance(x, complex):
        return (x - 0.5) * cmath.log(x) - x + _HALF_LOG_2PI + corr
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + corr


def _sinpi(x: float) -> float:
    n = round(x)
    r = x - n
    s = math.sin(math.pi * r)
    return -s if n % 2 else s


def _check_pole(x) -> None:
    if is_nonpositive_integer(x):
        raise PoleAtNonpositiveInteger(f"Gamma has a pole at {x!r}")


def _log_abs_gamma_real(x: float) -> float:
    if x < 0.5:
        # reflection: |Gamma(x)| = pi / (|sin(pi x)| |Gamma(1-x)|)
        return _LOG_PI - math.log(abs(_sinpi(x))) - _log_abs_gamma_real(1.0 - x)
    if x < 1.5:
        return _lgamma_near_one(x - 1.0) - math.log1p(x - 1.0)
    if x < 2.5:
        return _lgamma_near_one(x - 2.0)
    if x < _STIRLING_MIN:
        k = math.ceil(_STIRLING_MIN - x)
        prod = 1.0
        for i in range(k):
            prod *= x + i
        return _stirling(x + k) - math.log(prod)
    return _stirling(x)


def _log_gamma_complex(z: complex) -> complex:
    if z.real < 0.5:
        val = _LOG_PI - cmath.log(cmath.sin(math.pi * z)) - _log_gamma_complex(1.0 - z)
    else:
        shift = 0.0
        w = z
        while abs(w) < _STIRLING_MIN:
            shift += cmath.log(w)
            w += 1.0
        val = _stirling(w) - shift
    # principal branch: imaginary part in (-pi, pi]
    im = math.remainder(val.imag, 2.0 * math.pi)
    if im == -math.pi:
        im = math.pi
    return complex(val.real, im)


def log_gamma(x) -> SeriesValue:
    """log Gamma(x).

    For real ``x`` the value is ``log|Gamma(x)|`` (use :func:`gamma_sign` for the
    sign).  Complex arguments return the principal branch.
    """
    _check_pole(x)
    if isinstance(x, complex):
        v = _log_gamma_complex(x)
        return SeriesValue(v, 4e-16 * max(1.0, abs(v)), 0, True)
    x = float(x)
    v = _log_abs_gamma_real(x)
    return SeriesValue(v, 4e-16 * max(1.0, abs(v)), 0, True)


def gamma_sign(x: float) -> float:
    _check_pole(x)
    if x > 0:
        return 1.0
    return -1.0 if math.floor(x) % 2 else 1.0


def gamma(x) -> float | complex:
    """Gamma(x); exact for small positive integers."""
    if isinstance(x, complex):
        return cmath.exp(log_gamma(x).value)
    _check_pole(x)
    x = float(x)
    if x == int(x) and 0 < x <= 171:
        return float(math.factorial(int(x) - 1))
    return gamma_sign(x) * math.exp(_log_abs_gamma_real(x))


def rgamma(x: float) -> float:
    """1/Gamma(x), zero at the poles."""
    if is_nonpositive_integer(x):
        return 0.0
    return 1.0 / gamma(x)


def pochhammer(x, n: int):
    """Rising factorial x(x+1)...(x+n-1) as a direct product."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1.0
    for k in range(n):
        out *= x + k
        if out == 0:
            return 0.0 * out
    return out


def log_abs_pochhammer(x: float, n: int) -> tuple[float, float]:
    """(log|(x)_n|, sign); sign is 0 when the product vanishes."""
    total = 0.0
    sign = 1.0
    for k in range(n):
        f = x + k
        if f == 0:
            return -math.inf, 0.0
        if f < 0:
            sign = -sign
        total += math.log(abs(f))
    return total, sign


# --------------------------------------------------------------------------
# Bessel functions of real argument


class BesselKind(str, enum.Enum):
    J = "J"
    I = "I"
    K = "K"


def _bessel_series(nu: float, x: float, sign: float) -> tuple[float, float, int]:
    """Ascending series for J (sign=-1) or I (sign=+1).

    Returns (value, sum of |terms|, terms used).
    """
    half = 0.5 * x
    if is_nonpositive_integer(nu + 1.0):
        # negative integer order: J_{-n} = (-1)^n J_n, I_{-n} = I_n
        n = -round(nu)
        v, s, k = _bessel_series(float(n), x, sign)
        return (v * (-1.0) ** n if sign < 0 else v), s, k
    if nu + 1.0 > 0:
        lead = math.exp(nu * math.log(half) - _log_abs_gamma_real(nu + 1.0))
    else:
        lead = half ** nu * rgamma(nu + 1.0)
    y = sign * half * half
    term = lead
    total = term
    abs_total = abs(term)
    k = 0
    quiet = 0
    while k < 2000:
        denom = (k + 1.0) * (k + 1.0 + nu)
        if denom == 0.0:
            term = 0.0
            k += 1
            continue
        term *= y / denom
        k += 1
        if term == 0.0 and k > abs(nu) + 2:
            break
        total += term
        abs_total += abs(term)
        if abs(term) <= 1e-17 * abs_total and k > abs(nu):
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
    return total, abs_total, k + 1


@lru_cache(maxsize=64)
def _leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def _gl_on(f, a: float, b: float, n: int) -> float:
    t, w = _leggauss(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return half * float(np.dot(w, f(mid + half * t)))


def _bessel_j_integral(nu: float, x: float) -> tuple[float, float]:
    """Schlafli's integral for J_nu(x), x > 0."""

    def first(theta):
        return np.cos(nu * theta - x * np.sin(theta))

    n = int(1.5 * (x + abs(nu))) + 40
    if float(nu).is_integer():
        # periodic integrand: trapezoid over a full period is spectrally accurate
        def trap(m):
            th = 2.0 * np.pi * np.arange(m) / m
            return float(np.mean(np.cos(nu * th - x * np.sin(th))))

        i1, i2 = trap(2 * n), trap(4 * n)
        return i2, abs(i2 - i1) + 1e-16
    i1 = _gl_on(first, 0.0, math.pi, n) / math.pi
    i2 = _gl_on(first, 0.0, math.pi, 2 * n) / math.pi
    err = abs(i2 - i1)

    def second(t):
        return np.exp(-x * np.sinh(t) - nu * t)

    upper = math.asinh(745.0 / x) + 1.0
    edges = np.linspace(0.0, upper, int(upper / 0.5) + 2)
    tail = sum(_gl_on(second, lo, hi, 24) for lo, hi in zip(edges[:-1], edges[1:]))
    val = i2 - _sinpi(nu) / math.pi * tail
    return val, err + 1e-16


def _bessel_k(nu: float, x: float) -> tuple[float, float, int]:
    """K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt by the trapezoid rule."""
    nu = abs(nu)

    def log_f(t):
        nt = nu * t
        return -x * np.cosh(t) + nt + np.log1p(np.exp(-2.0 * nt)) - math.log(2.0)

    t_peak = math.asinh(nu / x) if nu > 0 else 0.0
    peak = float(log_f(np.array([t_peak]))[0])
    sigma = (x * x + nu * nu) ** -0.25
    t_hi = t_peak + 1.0
    while float(log_f(np.array([t_hi]))[0]) > peak - 45.0:
        t_hi += max(1.0, 0.5 * t_hi)
    h = min(0.1, 0.5 * sigma)

    def trap(step):
        m = int(math.ceil(t_hi / step)) + 1
        t = step * np.arange(m)
        vals = np.exp(log_f(t) - peak)
        return step * (0.5 * vals[0] + float(np.sum(vals[1:]))), m

    coarse, _ = trap(h)
    fine, m = trap(0.5 * h)
    scale = math.exp(peak)
    return fine * scale, abs(fine - coarse) * scale, m


def bessel(kind, order: float, x: float) -> SeriesValue:
    """Bessel J_nu(x), I_nu(x) or K_nu(x) for real order and x > 0.

    J and I use the ascending series; J switches to Schlafli's integral when
    the alternating series would lose more than four digits.  K uses the
    trapezoid rule on its cosh integral, which converges geometrically for
    every real order.
    """
    kind = BesselKind(kind)
    order = float(order)
    x = float(x)
    if x < 0:
        raise ValueError("bessel requires x >= 0")
    if x == 0.0:
        if kind is BesselKind.K:
            raise ValueError("K_nu(0) is infinite")
        if order == 0.0:
            return SeriesValue(1.0, 0.0, 1, True)
        if order > 0 or float(order).is_integer():
            return SeriesValue(0.0, 0.0, 1, True)
        raise ValueError("J/I of negative non-integer order diverge at 0")

    if kind is BesselKind.K:
        val, err, m = _bessel_k(order, x)
        ok = err <= 1e-11 * abs(val)
        if not ok:
            raise NotConverged(f"K_{order}({x}): error estimate {err:.3g}")
        return SeriesValue(val, err, m, True)

    sign = 1.0 if kind is BesselKind.I else -1.0
    val, abs_sum, k = _bessel_series(order, x, sign)
    err = 2.2e-16 * abs_sum * 4
    if kind is BesselKind.J and (val == 0.0 or abs_sum > 1e4 * abs(val)) and x > 1.0:
        ival, ierr = _bessel_j_integral(order, x)
        if ierr < err:
            val, err = ival, ierr
    if val != 0 and err > 1e-9 * abs(val) and err > 1e-15:
        raise NotConverged(f"{kind.value}_{order}({x}): error estimate {err:.3g}")
    return SeriesValue(val, err, k, True)


# --------------------------------------------------------------------------
# Tricomi confluent hypergeometric function


def _u_polynomial(m: int, b: float, x: float) -> float:
    # U(-m, b, x) = (-1)^m sum_s C(m,s) (b+s)_{m-s} (-x)^s
    total = 0.0
    for s in range(m + 1):
        total += math.comb(m, s) * pochhammer(b + s, m - s) * (-x) ** s
    return (-1.0) ** m * total


def _u_tail(a: float, c: float, x: float) -> tuple[float, float]:
    """int_1^inf e^{-xt} t^{a-1} (1+t)^c dt, integrated in y = log t around the peak."""

    def log_g(y):
        return -x * math.exp(y) + a * y + c * math.log1p(math.exp(y))

    grid = np.linspace(0.0, 60.0, 601)
    vals = np.array([log_g(y) if x * math.exp(y) < 1e300 else -np.inf for y in grid])
    i_peak = int(np.argmax(vals))
    peak = vals[i_peak]
    below = np.nonzero(vals[i_peak:] < peak - 50.0)[0]
    y_hi = grid[i_peak + below[0]] if below.size else grid[-1]
    pts = [grid[i_peak]] if 0.0 < grid[i_peak] < y_hi else None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        tail, tail_err = integrate.quad(
            lambda y: math.exp(log_g(y) - peak), 0.0, y_hi, points=pts,
            epsabs=0.0, epsrel=1e-13, limit=400,
        )
    scale = math.exp(peak) if peak < 700 else math.inf
    return tail * scale, tail_err * scale


def _u_integral(a: float, b: float, x: float) -> tuple[float, float]:
    """U(a,b,x) for a > 0 from int_0^inf e^{-xt} t^{a-1} (1+t)^{b-a-1} dt / Gamma(a)."""
    c = b - a - 1.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        head, head_err = integrate.quad(
            lambda t: math.exp(-x * t) * (1.0 + t) ** c,
            0.0, 1.0, weight="alg", wvar=(a - 1.0, 0.0),
            epsabs=0.0, epsrel=1e-13, limit=200,
        )
    tail, tail_err = _u_tail(a, c, x)
    ra = rgamma(a)
    return (head + tail) * ra, (head_err + tail_err) * abs(ra)


def _u_loop(a: float, b: float, x: float) -> tuple[float, float]:
    """U(a,b,x) for non-integer a < 0 from the loop integral around t = 0.

    U = e^{-i pi a} Gamma(1-a)/(2 pi i) [ (e^{2 pi i a} - 1) R + C ], where R is the
    ray integral from r to infinity and C the circle |t| = r.
    """
    c = b - a - 1.0
    r = min(0.5, -a / x)
    mid, mid_err = integrate.quad(
        lambda t: math.exp(-x * t) * t ** (a - 1.0) * (1.0 + t) ** c,
        r, 1.0, epsabs=0.0, epsrel=1e-13, limit=200,
    )
    tail, tail_err = _u_tail(a, c, x)
    ray = mid + tail
    theta, w = _leggauss(80)
    theta = math.pi * (theta + 1.0)
    t = r * np.exp(1j * theta)
    circle = 1j * r ** a * math.pi * np.sum(w * np.exp(-x * t + 1j * a * theta) * (1.0 + t) ** c)
    phase = cmath.exp(2j * math.pi * a) - 1.0
    total = phase * ray + complex(circle)
    v = cmath.exp(-1j * math.pi * a) * gamma(1.0 - a) / (2j * math.pi) * total
    size = max(abs(phase * ray), abs(circle))
    err = abs(gamma(1.0 - a) / (2 * math.pi)) * (abs(phase) * (mid_err + tail_err) + 1e-15 * size)
    return v.real, err + 1e-15 * abs(v.real)


def _m_series(a: float, b: float, x: float) -> tuple[float, float]:
    """Kummer M(a,b,x) by its power series; returns (value, sum of |terms|)."""
    term, total, mag = 1.0, 1.0, 1.0
    for k in range(10_000):
        ratio = (a + k) * x / ((b + k) * (k + 1))
        term *= ratio
        total += term
        mag += abs(term)
        if term == 0.0 or (abs(term) <= 1e-17 * mag and abs(ratio) < 0.5):
            break
    return total, mag


def _u_connection(a: float, b: float, x: float) -> tuple[float, float]:
    """U = Gamma(1-b)/Gamma(a-b+1) M(a,b,x) + Gamma(b-1)/Gamma(a) x^{1-b} M(a-b+1,2-b,x)."""
    if abs(b - round(b)) < 1e-9 or x > 30.0:
        return math.nan, math.inf
    m1, mag1 = _m_series(a, b, x)
    m2, mag2 = _m_series(a - b + 1.0, 2.0 - b, x)
    c1 = gamma(1.0 - b) * rgamma(a - b + 1.0)
    c2 = gamma(b - 1.0) * rgamma(a) * x ** (1.0 - b)
    v = c1 * m1 + c2 * m2
    size = abs(c1) * mag1 + abs(c2) * mag2
    return v, 1e-15 * (4.0 * size + abs(v))


def tricomi_u(a: float, b: float, x: float) -> SeriesValue:
    """Tricomi's confluent hypergeometric function U(a, b, x) for x > 0."""
    a, b, x = float(a), float(b), float(x)
    if x <= 0:
        raise ValueError("tricomi_u requires x > 0")
    if is_nonpositive_integer(a):
        m = -round(a)
        return SeriesValue(_u_polynomial(m, b, x), 0.0, m + 1, True, True)
    a2 = a - b + 1.0
    if is_nonpositive_integer(a2):
        m = -round(a2)
        v = x ** (1.0 - b) * _u_polynomial(m, 2.0 - b, x)
        return SeriesValue(v, 0.0, m + 1, True, True)
    if a > 0:
        v, err = _u_integral(a, b, x)
        return SeriesValue(v, err, 0, True)
    if a2 > 0:
        v, err = _u_integral(a2, 2.0 - b, x)
        f = x ** (1.0 - b)
        return SeriesValue(v * f, err * f, 0, True)
    # both a and a-b+1 negative: keep the best-conditioned of three routes
    f = x ** (1.0 - b)
    v1, e1 = _u_loop(a, b, x)
    v2, e2 = _u_loop(a2, 2.0 - b, x)
    candidates = [(e1, v1), (e2 * f, v2 * f), _u_connection(a, b, x)[::-1]]
    err, v = min(candidates, key=lambda c: c[0])
    return SeriesValue(v, err, 0, True)


# --------------------------------------------------------------------------
# Classical orthogonal polynomials


class PolyTag(str, enum.Enum):
    LAGUERRE = "laguerre"
    HERMITE = "hermite"
    LEGENDRE = "legendre"
    CHEBYSHEV_T = "chebyshev_t"
    CHEBYSHEV_U = "chebyshev_u"


@dataclass(frozen=True)
class PolyFamily:
    tag: PolyTag
    lam: float = 0.0  # Laguerre order parameter; ignored by other families

    def __post_init__(self):
        object.__setattr__(self, "tag", PolyTag(self.tag))
        if not math.isfinite(self.lam):
            raise ValueError("lambda must be finite")

    @classmethod
    def laguerre(cls, lam: float = 0.0) -> "PolyFamily":
        return cls(PolyTag.LAGUERRE, float(lam))


def _three_term(tag: PolyTag, lam: float, k: int, x: float, p_k: float, p_km1: float) -> float:
    """P_{k+1} from P_k and P_{k-1} (k >= 1)."""
    if tag is PolyTag.LAGUERRE:
        return ((2 * k + 1 + lam - x) * p_k - (k + lam) * p_km1) / (k + 1)
    if tag is PolyTag.HERMITE:
        return 2.0 * x * p_k - 2.0 * k * p_km1
    if tag is PolyTag.LEGENDRE:
        return ((2 * k + 1) * x * p_k - k * p_km1) / (k + 1)
    return 2.0 * x * p_k - p_km1


def _first_two(tag: PolyTag, lam: float, x: float) -> tuple[float, float]:
    if tag is PolyTag.LAGUERRE:
        return 1.0, 1.0 + lam - x
    if tag in (PolyTag.HERMITE, PolyTag.CHEBYSHEV_U):
        return 1.0, 2.0 * x
    return 1.0, x


def classical_poly(family: PolyFamily, n: int, x: float) -> float:
    """Evaluate the degree-n polynomial of ``family`` by its three-term recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    p0, p1 = _first_two(family.tag, family.lam, x)
    if n == 0:
        return p0
    for k in range(1, n):
        p0, p1 = p1, _three_term(family.tag, family.lam, k, x, p1, p0)
    return p1


def recurrence_residual(family: PolyFamily, n: int, x: float) -> float:
    """|P_{n+1} - recurrence(P_n, P_{n-1})| for n >= 1, from independent evaluations."""
    lhs = classical_poly(family, n + 1, x)
    rhs = _three_term(family.tag, family.lam, n, x,
                      classical_poly(family, n, x), classical_poly(family, n - 1, x))
    return abs(lhs - rhs)
