"""Legendrian isotopy decisions for cable links, with destabilization witnesses."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import NotRealizable, OutOfDomain
from .ranges import (
    Case, CaseLabel, LinkInvariants, Peak, case_of, max_tb2, neighbor_peak_gaps,
    normalize, peaks, realizable,
)


class Outcome(enum.Enum):
    ISOTOPIC = "Isotopic"
    NOT_ISOTOPIC = "NotIsotopic"
    NOT_REALIZABLE = "NotRealizable"
    # reserved for inputs outside the cable-of-unknot family; the decision
    # procedures here cover every coprime (p, q) so they never emit it
    OUT_OF_SCOPE = "OutOfScope"


@dataclass(frozen=True)
class WitnessEntry:
    peak: Peak
    pos_stabs: int
    neg_stabs: int

    def to_dict(self):
        return {"peak": self.peak.to_dict(), "pos_stabs": self.pos_stabs,
                "neg_stabs": self.neg_stabs}


@dataclass(frozen=True)
class DestabilizationWitness:
    """Every peak whose stabilization cone reaches the tuple.

    ``swapped`` is set when the tuple is only realizable with the roles of the
    two components exchanged (p = -1); the entries then describe L1.
    """
    entries: tuple[WitnessEntry, ...]
    swapped: bool = False

    def to_dict(self):
        return {"entries": [e.to_dict() for e in self.entries], "swapped": self.swapped}


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    reason: str
    witness: DestabilizationWitness | None = None

    def to_dict(self):
        return {"schema": "v1", "outcome": self.outcome.value, "reason": self.reason,
                "witness": self.witness.to_dict() if self.witness else None}


def _witness_for(p, q, m, rot1, tb2, rot2) -> tuple[WitnessEntry, ...]:
    top = max_tb2(p, q, m)
    s = top - tb2
    out = []
    for pk in peaks(p, q, m, rot1):
        d = rot2 - pk.rot2_peak
        if s >= 0 and abs(d) <= s and (s + d) % 2 == 0:
            out.append(WitnessEntry(pk, (s + d) // 2, (s - d) // 2))
    return tuple(out)


def destabilization_witness(inv: LinkInvariants) -> DestabilizationWitness:
    if not inv.normalized:
        inv = normalize(inv)
    if inv.q < 2:
        raise OutOfDomain("witnesses exist only for q >= 2")
    ok, label = realizable(inv)
    if not ok:
        raise NotRealizable(f"{inv.as_tuple()} is not realizable")
    src = inv.swapped() if label.swapped else inv
    entries = _witness_for(src.p, src.q, src.m, src.rot1, src.tb2, src.rot2)
    return DestabilizationWitness(entries, label.swapped)


def _describe(label: CaseLabel | None) -> str:
    if label is None:
        return "L1 is not a Legendrian unknot"
    return label.case.value + (" (roles swapped)" if label.swapped else "")


def classify_cable(a: LinkInvariants, b: LinkInvariants) -> Verdict:
    """Decide Legendrian isotopy of two oriented cable links from their invariants.

    Realizable cable links are isotopic exactly when their oriented link types
    (the normalized slope (p, q)) and all four classical invariants agree.
    """
    a = a if a.normalized else normalize(a)
    b = b if b.normalized else normalize(b)
    ok_a, lab_a = realizable(a)
    if not ok_a:
        return Verdict(Outcome.NOT_REALIZABLE, f"first tuple {a.as_tuple()} not realizable: {_describe(lab_a)}")
    ok_b, lab_b = realizable(b)
    if not ok_b:
        return Verdict(Outcome.NOT_REALIZABLE, f"second tuple {b.as_tuple()} not realizable: {_describe(lab_b)}")
    if (a.p, a.q) != (b.p, b.q):
        return Verdict(Outcome.NOT_ISOTOPIC, f"link types differ: (p,q)={a.p, a.q} vs {b.p, b.q}")
    names = ("tb1", "rot1", "tb2", "rot2")
    diff = [n for n, x, y in zip(names, a.as_tuple()[2:], b.as_tuple()[2:]) if x != y]
    if diff:
        return Verdict(Outcome.NOT_ISOTOPIC, "classical invariants differ in " + ", ".join(diff))
    witness = destabilization_witness(a) if a.q >= 2 else None
    return Verdict(Outcome.ISOTOPIC, f"same link type and invariants ({_describe(lab_a)})", witness)


def peak_identification(p: int, q: int, m: int, rot1: int, peak_a: int, peak_b: int) -> int | None:
    """Stabilization count after which the cones of two adjacent peaks are identified.

    Peaks are given by their rotation numbers.  Returns 0 for equal peaks and
    None for peaks that are not neighbours at one of the two admissible gaps
    (those are connected only through intermediate peaks).
    """
    rots = {pk.rot2_peak for pk in peaks(p, q, m, rot1)}
    for r in (peak_a, peak_b):
        if r not in rots:
            raise OutOfDomain(f"{r} is not a peak rotation for {(p, q, m, rot1)}")
    case = case_of(p, q, m)
    if case not in (Case.C3b2i, Case.C3b2ii, Case.C3b2iii):
        raise OutOfDomain(f"peak identification does not apply to case {case.value}")
    gap = abs(peak_a - peak_b)
    if gap == 0:
        return 0
    if case is Case.C3b2iii:
        return 1 if gap == 2 else None
    if any(min(peak_a, peak_b) < r < max(peak_a, peak_b) for r in rots):
        return None
    small, large = neighbor_peak_gaps(p, q)
    if gap == small:
        return small // 2
    if gap == large:
        return large // 2
    return None
