"""Necessary conditions on graded Betti tables with Dynkin Betti numbers.

A table lists the positive shifts s1, s2, s3 of a minimal resolution of R/I.
Generators of F3* sit in degrees -s3 and those of F1 in degrees s1; each
z1-graded component S_lam F3* (x) S_mu F1 of the representation then has
generators in the degrees computed by component_degrees. If the Betti numbers
are Dynkin, a Cohen-Macaulay quotient forces one of those degrees to be zero.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import MalformedFormat, NonDynkinFormat
from .lie_core import Format, classify_type, format_to_shape, is_dynkin_format
from .repdecomp import LeviComponent, schur_degrees, z1_decomposition


@dataclass(frozen=True)
class BettiTable:
    fmt: Format
    s1: tuple
    s2: tuple
    s3: tuple

    def __post_init__(self):
        if self.fmt.f0 != 1:
            raise MalformedFormat("Betti tables here are for cyclic quotients (f0 = 1)")
        for name, s, size in (("s1", self.s1, self.fmt.f1), ("s2", self.s2, self.fmt.f2), ("s3", self.s3, self.fmt.f3)):
            if len(s) != size:
                raise MalformedFormat(f"{name} has {len(s)} entries, expected {size}")

    @classmethod
    def from_json(cls, obj) -> "BettiTable":
        if isinstance(obj, str):
            obj = json.loads(obj)
        s2 = obj.get("s2")
        f = Format(*obj["f"])
        if s2 is None:
            s2 = [0] * f.f2  # not used by any check
        return cls(f, tuple(obj["s1"]), tuple(s2), tuple(obj["s3"]))

    @classmethod
    def from_complex(cls, c) -> "BettiTable":
        return cls(c.fmt, tuple(c.s[1]), tuple(c.s[2]), tuple(c.s[3]))

    def to_json(self) -> dict:
        return {"f": list(self.fmt.as_tuple()), "s1": list(self.s1), "s2": list(self.s2), "s3": list(self.s3)}


def component_degrees(t: BettiTable, comp: LeviComponent) -> list[int]:
    """Generator degrees of S_lam F3* (x) S_mu F1, with multiplicity."""
    left = schur_degrees(comp.lam, [-s for s in t.s3])
    right = schur_degrees(comp.mu, list(t.s1))
    out = sorted(a + b for a in left for b in right)
    return sorted(out * comp.multiplicity)


def component_generator_degrees(t: BettiTable, j: int) -> list[int]:
    """Sorted multiset of generator degrees of the z1-degree j part."""
    if not is_dynkin_format(t.fmt):
        raise NonDynkinFormat(f"{t.fmt} is not a Dynkin format")
    out = []
    for comp in z1_decomposition(t.fmt).layer(j):
        out.extend(component_degrees(t, comp))
    return sorted(out)


@dataclass(frozen=True)
class AdmissibilityReport:
    dynkin: bool
    diagram: str
    degree_zero_generator: bool | None  # None when the format is not Dynkin
    inequality_2min_lt_max: bool
    parity_ok: bool

    def passes(self) -> bool:
        return self.dynkin and bool(self.degree_zero_generator) and self.inequality_2min_lt_max and self.parity_ok

    def verdict(self) -> str:
        if not self.dynkin:
            return f"format lies on {self.diagram}: no restriction applies"
        if self.passes():
            return "all necessary conditions hold (realizability is not decided)"
        failed = [name for name, ok in (("degree-zero generator", self.degree_zero_generator),
                                        ("2 min(s1) < max(s3)", self.inequality_2min_lt_max),
                                        ("parity", self.parity_ok)) if not ok]
        return "no Cohen-Macaulay quotient has this table: fails " + ", ".join(failed)

    def to_json(self) -> dict:
        return {"dynkin": self.dynkin, "diagram": self.diagram, "degree_zero_generator": self.degree_zero_generator,
                "inequality_2min_lt_max": self.inequality_2min_lt_max, "parity_ok": self.parity_ok,
                "verdict": self.verdict()}


def admissibility_report(t: BettiTable) -> AdmissibilityReport:
    kind = classify_type(format_to_shape(t.fmt))
    ineq = 2 * min(t.s1) < max(t.s3)
    parity = any(s % 2 == 0 for s in t.s1) or any(s % 2 == 1 for s in t.s3)
    if not kind.finite:
        return AdmissibilityReport(False, kind.name, None, ineq, parity)
    decomp = z1_decomposition(t.fmt)
    zero = any(0 in component_degrees(t, comp) for comp in decomp.components)
    return AdmissibilityReport(True, kind.name, zero, ineq, parity)
