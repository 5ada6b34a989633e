"""Small value types passed between modules."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Sequence

DEFAULT_MAX_TERMS = 10_000


def max_terms_default() -> int:
    """Term budget, overridable through ``CSINT_MAX_TERMS``."""
    raw = os.environ.get("CSINT_MAX_TERMS")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            return DEFAULT_MAX_TERMS
        if value >= 10:
            return value
    return DEFAULT_MAX_TERMS


def is_nonpositive_integer(x, atol: float = 1e-12) -> bool:
    if isinstance(x, complex):
        if abs(x.imag) > atol:
            return False
        x = x.real
    return x <= atol and abs(x - round(x)) <= atol


@dataclass(frozen=True)
class ParameterSet:
    """Upper parameters ``a`` (length p) and lower parameters ``b`` (length q)."""

    a: tuple[float, ...] = ()
    b: tuple[float, ...] = ()

    def __init__(self, a: Sequence[float] = (), b: Sequence[float] = ()):
        a = tuple(float(v) for v in a)
        b = tuple(float(v) for v in b)
        for v in a + b:
            if not math.isfinite(v):
                raise ValueError(f"parameters must be finite, got {v!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def q(self) -> int:
        return len(self.b)

    def swapped(self) -> "ParameterSet":
        """The dual set (q, p, b, a)."""
        return ParameterSet(self.b, self.a)

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "a": list(self.a), "b": list(self.b)}

    @classmethod
    def from_dict(cls, d: dict) -> "ParameterSet":
        ps = cls(d.get("a", ()), d.get("b", ()))
        if "p" in d and d["p"] != ps.p or "q" in d and d["q"] != ps.q:
            raise ValueError("p/q do not match parameter list lengths")
        return ps

    def __str__(self) -> str:
        fa = ",".join(f"{v:g}" for v in self.a)
        fb = ",".join(f"{v:g}" for v in self.b)
        return f"({self.p},{self.q};[{fa}];[{fb}])"


@dataclass(frozen=True)
class SeriesValue:
    value: complex | float
    abs_error_estimate: float = 0.0
    terms_used: int = 0
    converged: bool = True
    terminated: bool = False
    notes: tuple[str, ...] = field(default=())

    def __float__(self) -> float:
        v = self.value
        if isinstance(v, complex):
            return v.real
        return float(v)

    def __complex__(self) -> complex:
        return complex(self.value)
