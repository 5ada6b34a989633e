"""Curated instance lists."""
from __future__ import annotations

import math

import mpmath

from ..errors import UnknownSuite
from ..structures import ParameterSet as P
from .instances import Family as F
from .instances import IdentityInstance as I
from .representations import representation_instance as rep

# parameter sets of the fundamental grid: (0,0), (1,0), (0,1), (1,1) and two Slater weights
FUNDAMENTAL_PARAMS = (
    P(),
    P((2.0,), ()),
    P((), (2.0,)),
    P((), (1.5,)),
    P((2.0,), (1.0,)),
    P((), (4.0 / 3.0, 5.0 / 3.0)),
    P((3.0, 4.5), (1.5,)),
)


def fundamental() -> list[I]:
    out = []
    for pr in FUNDAMENTAL_PARAMS:
        for n in range(6):
            out.append(I(F.FUND_A, pr, moment_index=n, label=f"moment {pr} n={n}"))
            out.append(I(F.FUND_B, pr.swapped(), moment_index=n, label=f"dual moment {pr.swapped()} n={n}"))
    return out


def angular() -> list[I]:
    out = []
    for ab in (0.25, 1.0):
        for r in (0.3, 0.7):
            out.append(I(F.ANGULAR_B, scalars=dict(A=math.sqrt(ab), B=math.sqrt(ab), z_abs=r),
                         label=f"exp pair AB={ab} |z|={r}"))
    out += [
        I(F.ANGULAR_B, scalars=dict(A=2.0, B=-0.5, z_abs=0.8), label="exp pair AB<0"),
        I(F.ANGULAR_B, scalars=dict(A=1.0, B=1.0, z_abs=0.0), label="exp pair at the origin"),
        I(F.ANGULAR_A, P((), (2.0,)), scalars=dict(A=1.0, B=1.0, z_abs=0.7), label="0F1 pair"),
        I(F.ANGULAR_A, P(), scalars=dict(A=0.5, B=2.0, z_abs=0.7), label="0F0 pair"),
        I(F.ANGULAR_A, P((2.0,), ()), scalars=dict(A=0.5, B=0.5, z_abs=0.7), label="1F0 pair"),
        I(F.ANGULAR_A, P((2.0,), (1.5,)), scalars=dict(A=0.8, B=-0.6, z_abs=1.1), label="1F1 pair"),
        I(F.ANGULAR_A, P((0.5, 1.5), (2.5,)), scalars=dict(A=0.7, B=0.9, z_abs=0.9), label="2F1 pair"),
    ]
    return out


def complex_plane() -> list[I]:
    return [
        I(F.COMPLEX_B, P(), scalars=dict(A=1.0, B=-1.0), label="gaussian shift"),
        I(F.COMPLEX_B, P(), scalars=dict(A=0.5, B=0.5), label="exp pair, exponential weight"),
        I(F.COMPLEX_B, P((2.0,), (1.0,)), scalars=dict(A=0.5, B=0.5), label="exp pair, KP (1,1)"),
        I(F.COMPLEX_B, P((), (2.0,)), scalars=dict(A=0.0, B=0.7), label="zero coupling"),
        I(F.COMPLEX_B, P((2.0,), ()), scalars=dict(A=0.6, B=0.5), label="exp pair, KP (1,0)"),
        I(F.COMPLEX_A, P((2.0,), ()), scalars=dict(A=0.5, B=0.5), label="1F0 pair, compact weight"),
        I(F.COMPLEX_A, P((), (2.0,)), scalars=dict(A=1.0, B=0.5), label="0F1 pair, Bessel-K weight"),
        I(F.COMPLEX_A, P(), scalars=dict(A=0.3, B=0.7), label="0F0 pair, exponential weight"),
        I(F.COMPLEX_A, P((2.0,), (1.5,)), scalars=dict(A=0.4, B=-0.5), label="1F1 pair, Tricomi weight"),
    ]


def real() -> list[I]:
    return [
        I(F.REAL_A, P((), (1.5,)), scalars=dict(A=-0.25, B=1.0), label="sine kernel"),
        I(F.REAL_A, P((), (0.5,)), scalars=dict(A=-1.0, B=1.0), label="cosine kernel"),
        I(F.REAL_A, P((), (1.5,)), scalars=dict(A=1.0, B=1.0), label="sinh kernel"),
        I(F.REAL_A, P((2.0,), ()), scalars=dict(A=0.5, B=0.5), label="compact weight"),
        I(F.REAL_A, P(), scalars=dict(A=0.5, B=1.0), label="exponential weight"),
        I(F.REAL_A, P((2.0,), (1.5,)), scalars=dict(A=0.6, B=0.5), label="Tricomi weight"),
        I(F.REAL_A, P((), (4.0 / 3.0, 5.0 / 3.0)), scalars=dict(A=0.5, B=1.0), label="Slater weight (0,2)"),
        I(F.REAL_B, P((2.0,), (1.0,)), scalars=dict(A=0.5, B=0.5), label="KP (1,1)"),
        I(F.REAL_B, P((), (2.0,)), scalars=dict(A=-0.5, B=1.0), label="KP (0,1), J0 kernel"),
        I(F.REAL_B, P((2.0,), ()), scalars=dict(A=0.3, B=1.0), label="KP (1,0)"),
        I(F.REAL_B, P((1.5, 2.5), (1.0,)), scalars=dict(A=0.4, B=1.0), label="KP (2,1), K-Bessel weight"),
    ]


def gxf() -> list[I]:
    out = [
        I(F.GXF_A, P(), P((-2.0,), (1.0,)), scalars=dict(A=1.0), label="exponential weight, L2 inner"),
        I(F.GXF_A, P((), (2.0,)), P((), (1.5,)), scalars=dict(A=0.4), label="Bessel-K weight, 0F1 inner"),
        I(F.GXF_A, P((2.0,), ()), P((1.0,), (3.0,)), scalars=dict(A=0.8), label="compact weight, 1F1 inner"),
        I(F.GXF_A, P((2.0,), (1.5,)), P((), (1.0,)), scalars=dict(A=-0.7), label="Tricomi weight, 0F1 inner"),
        I(F.GXF_B, P((2.0,), (1.0,)), P((0.5,), (1.5,)), scalars=dict(A=0.3), label="KP (1,1), 1F1 inner"),
        I(F.GXF_B, P(), P((), (2.0,)), scalars=dict(A=-1.0), label="KP (0,0), 0F1 inner"),
        I(F.GXF_B, P((), (2.0,)), P((1.0,), ()), scalars=dict(A=0.5), label="KP (0,1), 1F0 inner"),
    ]
    for c in (0.5, 1.0, 2.0):
        out.append(I(F.GXF_C, P((), (2.0,)), scalars=dict(A=0.3, C=c), label=f"scaled Bessel-K weight C={c}"))
        out.append(I(F.GXF_C, P((2.0,), ()), scalars=dict(A=0.3, C=c), label=f"scaled compact weight C={c}"))
    out += [
        I(F.POWER_SERIES_WEIGHT, P((), (2.0,)), coefficients=(1.0, 0.5, 0.25), scalars=dict(x=0.7),
          label="quadratic g"),
        I(F.POWER_SERIES_WEIGHT, P(), coefficients=(1.0, -1.0, 0.5, -1.0 / 6.0), scalars=dict(x=0.4),
          label="cubic g"),
        I(F.POWER_SERIES_WEIGHT, P((2.0,), ()), coefficients=(0.0, 1.0, 0.0, 3.0), scalars=dict(x=-0.9),
          label="odd g, compact weight"),
    ]
    out += binomial()
    return out


def binomial() -> list[I]:
    """Binomial-weight instances, where several printed right-hand sides disagree."""
    return [
        I(F.BINOMIAL_WEIGHT, P(), scalars=dict(x=0.3, m=1.0), label="exponential weight m=1"),
        I(F.BINOMIAL_WEIGHT, P(), scalars=dict(x=0.3, m=2.0), label="exponential weight m=2"),
        I(F.BINOMIAL_WEIGHT, P(), scalars=dict(x=0.3, m=3.0), label="exponential weight m=3"),
        I(F.BINOMIAL_WEIGHT, P((1.0,), (2.5,)), scalars=dict(x=0.3, m=3.0), label="power-exponential weight"),
        I(F.BINOMIAL_WEIGHT, P((1.0,), (1.0,)), scalars=dict(x=-0.5, m=2.0), label="exponential weight, x<0"),
        I(F.BINOMIAL_WEIGHT, P((), (2.0,)), scalars=dict(x=0.2, m=2.0), label="Bessel-K weight"),
        I(F.BINOMIAL_WEIGHT, P((2.0,), ()), scalars=dict(x=0.5, m=2.5), label="compact weight, fractional m"),
    ]


def representations() -> list[I]:
    out = []
    for x in (0.1, 0.5, 1.0, 2.0):
        for name in ("sin_over_x", "sinh_over_x", "cos", "cosh"):
            out.append(rep(name, x=x, label=f"{name} x={x}"))
    poly_grid = (-0.7, -0.3, 0.2, 0.45, 0.8)
    for n in (0, 1, 2, 3, 5):
        for x in (0.3, 1.7):
            out.append(rep("laguerre", n=n, x=x, lam=0.5, label=f"laguerre n={n} x={x}"))
            out.append(rep("laguerre_negative", n=n, x=x, label=f"laguerre at -x n={n} x={x}"))
            out.append(rep("laguerre_inverse", n=n, x=x, a=1.5, label=f"laguerre inverse-argument n={n} x={x}"))
            out.append(rep("laguerre_inverse", n=n, x=x, a=-n, label=f"laguerre inverse-argument a=-n n={n} x={x}"))
            out.append(rep("hermite", n=n, x=x, label=f"hermite n={n} x={x}"))
        for x in poly_grid[::2]:
            for name in ("legendre_ratio", "legendre", "legendre_symmetric", "chebyshev_t",
                         "chebyshev_t_reflected", "chebyshev_u", "chebyshev_u_reflected"):
                out.append(rep(name, n=n, x=x, label=f"{name} n={n} x={x}"))
    for n in range(4):
        for x in (0.5, 1.0, 2.0):
            out.append(rep("bessel_k_half", n=n, x=x, label=f"K_(n+1/2) n={n} x={x}"))
    out += _bessel_ji()
    return out


def _bessel_ji() -> list[I]:
    return [rep(name, nu=nu, x=x, label=f"{name} nu={nu} x={x}")
            for name in ("bessel_j", "bessel_i") for nu in (0.0, 0.5, 1.0) for x in (0.5, 1.0)]


def gr_crosschecks() -> list[I]:
    out = []
    # K-Bessel weight 2 u^{(b1+b2)/2} K_{b1-b2}(2 sqrt u) against I0: table closed form via mpmath
    for b1, b2, c in ((0.5, 0.25, 0.5), (1.5, 0.5, 0.3), (2.0, 1.0, 0.6)):
        ref = float(mpmath.gamma(b1 + 1) * mpmath.gamma(b2 + 1) * mpmath.hyp2f1(b1 + 1, b2 + 1, 1, c * c))
        out.append(I(F.REAL_B, P((b1 + 1, b2 + 1), (1.0,)), scalars=dict(A=c * c, B=1.0), reference=ref,
                     label=f"K-Bessel / I0 integral b1={b1} b2={b2} c={c}"))
    # Laplace transforms of pFq against the power weight u^{s-1} e^{-u}
    out += [
        I(F.GXF_A, P((1.0,), (1.0,)), P((-2.0,), (1.0,)), scalars=dict(A=1.0), reference=0.0,
          label="Laplace transform s=1 of L2"),
        I(F.GXF_A, P((1.0,), (2.5,)), P(), scalars=dict(A=0.4), reference=math.gamma(2.5) * 0.6 ** -2.5,
          label="Laplace transform s=2.5 of exp(0.4u)"),
        I(F.GXF_A, P((1.0,), (1.5,)), P((0.7,), (1.5,)), scalars=dict(A=0.3),
          reference=math.gamma(1.5) * 0.7 ** -0.7, label="Laplace transform s=1.5 of 1F1"),
    ]
    # Laguerre moments against e^{-u} u^b, table value Gamma(b+1)(lam-b)_n/n!, here times n!/(lam+1)_n
    for b in (0.0, 1.0):
        for lam in (0.0, 1.0):
            for n in range(4):
                ref = math.gamma(b + 1) * float(mpmath.rf(lam - b, n) / mpmath.rf(lam + 1, n))
                out.append(I(F.GXF_A, P((1.0,), (b + 1,)), P((-float(n),), (lam + 1,)), scalars=dict(A=1.0),
                             reference=ref, label=f"Laguerre moment b={b} lam={lam} n={n}"))
    out += _bessel_ji()
    return out


SUITES = {
    "fundamental": fundamental,
    "angular": angular,
    "complex": complex_plane,
    "real": real,
    "gxf": gxf,
    "representations": representations,
    "gr-crosschecks": gr_crosschecks,
}


def builtin_suite(name: str) -> list[I]:
    if name == "all":
        return [inst for fn in SUITES.values() for inst in fn()]
    try:
        return SUITES[name]()
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; known: {sorted(SUITES) + ['all']}") from None
