"""Identity instances, verification reports and their JSON-lines encoding."""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from ..errors import IncompleteInstance, OutsideConvergenceDisc
from ..structures import ParameterSet


class Family(str, enum.Enum):
    FUND_A = "Fund_A"
    FUND_B = "Fund_B"
    COMPLEX_A = "Complex_A"
    COMPLEX_B = "Complex_B"
    ANGULAR_A = "Angular_A"
    ANGULAR_B = "Angular_B"
    REAL_A = "Real_A"
    REAL_B = "Real_B"
    GXF_A = "GxF_A"
    GXF_B = "GxF_B"
    GXF_C = "GxF_C"
    POWER_SERIES_WEIGHT = "PowerSeriesWeight"
    BINOMIAL_WEIGHT = "BinomialWeight"


# families whose weight is the Klauder-Perelomov one, i.e. the BG weight of the swapped set
KP_FAMILIES = {Family.FUND_B, Family.COMPLEX_B, Family.REAL_B, Family.GXF_B}

REQUIRED_SCALARS: dict[Family, tuple[str, ...]] = {
    Family.FUND_A: (),
    Family.FUND_B: (),
    Family.COMPLEX_A: ("A", "B"),
    Family.COMPLEX_B: ("A", "B"),
    Family.ANGULAR_A: ("A", "B", "z_abs"),
    Family.ANGULAR_B: ("A", "B", "z_abs"),
    Family.REAL_A: ("A", "B"),
    Family.REAL_B: ("A", "B"),
    Family.GXF_A: ("A",),
    Family.GXF_B: ("A",),
    Family.GXF_C: ("A", "C"),
    Family.POWER_SERIES_WEIGHT: ("x",),
    Family.BINOMIAL_WEIGHT: ("x", "m"),
}


@dataclass(frozen=True)
class IdentityInstance:
    """One concrete integral identity.

    ``weight_params`` are the (a; b) of the identity as written, so KP families use
    the BG weight of the swapped set. Representation instances carry a ``target`` and
    the scalars of the represented function (n, x, ...) instead of A and B.
    """

    family: Family
    weight_params: ParameterSet = ParameterSet()
    inner_params: ParameterSet | None = None
    scalars: Mapping[str, float] = field(default_factory=dict)
    moment_index: int | None = None
    coefficients: tuple[float, ...] | None = None
    target: str | None = None
    reference: float | None = None
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "scalars", {k: float(v) for k, v in dict(self.scalars).items()})
        if self.coefficients is not None:
            object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))
        self.validate()

    def __hash__(self):
        return hash(json.dumps(self.to_dict(), sort_keys=True))

    def validate(self) -> None:
        fam = self.family
        if self.target is not None:
            from .representations import REPRESENTATIONS

            rep = REPRESENTATIONS.get(self.target)
            if rep is None:
                raise IncompleteInstance(f"unknown representation target {self.target!r}")
            missing = [k for k in rep.scalars if k not in self.scalars]
            if missing:
                raise IncompleteInstance(f"{self.target} needs scalars {missing}")
            return
        missing = [k for k in REQUIRED_SCALARS[fam] if k not in self.scalars]
        if missing:
            raise IncompleteInstance(f"{fam.value} needs scalars {missing}")
        for k, v in self.scalars.items():
            if not math.isfinite(v):
                raise IncompleteInstance(f"scalar {k} must be finite")
        if fam in (Family.FUND_A, Family.FUND_B):
            if self.moment_index is None or self.moment_index < 0:
                raise IncompleteInstance(f"{fam.value} needs a nonnegative moment_index")
        if fam in (Family.GXF_A, Family.GXF_B) and self.inner_params is None:
            raise IncompleteInstance(f"{fam.value} needs inner_params")
        if fam is Family.POWER_SERIES_WEIGHT and not self.coefficients:
            raise IncompleteInstance("PowerSeriesWeight needs a nonempty coefficient list")
        if fam is Family.GXF_C and self.scalars["C"] <= 0:
            raise IncompleteInstance("GxF_C needs C > 0")
        if fam in (Family.ANGULAR_A, Family.ANGULAR_B):
            self._check_angular_disc()

    def _check_angular_disc(self) -> None:
        from ..hypergeom import radius_of_convergence

        r = self.scalars["z_abs"]
        if r < 0:
            raise IncompleteInstance("z_abs must be nonnegative")
        if self.family is Family.ANGULAR_A:
            radius = radius_of_convergence(self.weight_params)
            a, b = abs(self.scalars["A"]), abs(self.scalars["B"])
            if max(a, b) * r >= radius:
                raise OutsideConvergenceDisc(f"|A z|, |B z| must stay below {radius:g}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "family": self.family.value,
            "weight_params": self.weight_params.to_dict(),
            "inner_params": None if self.inner_params is None else self.inner_params.to_dict(),
            "scalars": dict(sorted(self.scalars.items())),
            "moment_index": self.moment_index,
            "coefficients": None if self.coefficients is None else list(self.coefficients),
            "target": self.target,
            "reference": self.reference,
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "IdentityInstance":
        if "family" not in d:
            raise IncompleteInstance("record has no family")
        try:
            family = Family(d["family"])
        except ValueError as exc:
            raise IncompleteInstance(f"unknown family {d['family']!r}") from exc
        inner = d.get("inner_params")
        return cls(
            family=family,
            weight_params=ParameterSet.from_dict(d.get("weight_params") or {}),
            inner_params=None if inner is None else ParameterSet.from_dict(inner),
            scalars=d.get("scalars") or {},
            moment_index=d.get("moment_index"),
            coefficients=d.get("coefficients"),
            target=d.get("target"),
            reference=d.get("reference"),
            label=d.get("label", ""),
        )


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


@dataclass
class VerificationReport:
    instance: IdentityInstance
    rhs_closed_form: float | complex | None = None
    lhs_moment: float | complex | None = None
    lhs_quadrature: float | complex | None = None
    rel_diff_per_method: dict[str, float] = field(default_factory=dict)
    methods_run: list[str] = field(default_factory=list)
    passed: bool = False
    tolerance: float = 0.0
    diagnostics: list[str] = field(default_factory=list)
    rhs_alternatives: dict[str, float] = field(default_factory=dict)

    @property
    def status(self) -> str:
        if not self.methods_run:
            return "skip"
        return "pass" if self.passed else "fail"

    def finalize(self, tolerance: float) -> "VerificationReport":
        self.tolerance = tolerance
        self.passed = bool(self.methods_run) and all(
            self.rel_diff_per_method.get(m, math.inf) <= tolerance for m in self.methods_run)
        return self

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance": self.instance.to_dict(),
            "status": self.status,
            "pass": self.passed,
            "tolerance": self.tolerance,
            "methods_run": list(self.methods_run),
            "rel_diff_per_method": {k: _jsonable(v) for k, v in self.rel_diff_per_method.items()},
            "lhs_moment": _jsonable(self.lhs_moment),
            "lhs_quadrature": _jsonable(self.lhs_quadrature),
            "rhs_closed_form": _jsonable(self.rhs_closed_form),
            "rhs_alternatives": {k: _jsonable(v) for k, v in self.rhs_alternatives.items()},
            "diagnostics": list(self.diagnostics),
        }


def dump_instances(instances: Iterable[IdentityInstance]) -> str:
    return "".join(json.dumps(inst.to_dict(), sort_keys=True) + "\n" for inst in instances)


def load_instances(text: str) -> list[IdentityInstance]:
    """Parse JSON lines; blank lines and lines starting with '#' are ignored."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise IncompleteInstance(f"line {lineno}: {exc.msg}") from exc
        out.append(IdentityInstance.from_dict(record))
    return out
