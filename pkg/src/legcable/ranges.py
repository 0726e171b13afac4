"""Realizable classical invariants of Legendrian (p, q)-cable links.

A cable link is an unknot L1 together with a curve L2 of class p*mu + q*lambda
on the boundary of a tubular neighbourhood of L1, so q = lk(L1, L2).  We write
m = -tb(L1) >= 1.

For q >= 2 the realizable (rot2, tb2) pairs form a "mountain range": a union
of downward stabilization cones from finitely many peaks at the maximal tb2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from math import gcd

from .errors import NonCoprime, NotNormalized, OutOfDomain


class Case(enum.Enum):
    C1_q0 = "C1_q0"
    C2_q1 = "C2_q1"
    C3a_pos = "C3a_pos"
    C3b1 = "C3b1"
    C3b2i = "C3b2i"
    C3b2ii = "C3b2ii"
    C3b2iii = "C3b2iii"


@dataclass(frozen=True)
class CaseLabel:
    case: Case
    swapped: bool = False

    def to_dict(self):
        return {"case": self.case.value, "swapped": self.swapped}


@dataclass(frozen=True)
class LinkInvariants:
    p: int
    q: int
    tb1: int
    rot1: int
    tb2: int
    rot2: int
    normalized: bool = field(default=False, compare=False)

    @property
    def m(self) -> int:
        return -self.tb1

    def as_tuple(self):
        return (self.p, self.q, self.tb1, self.rot1, self.tb2, self.rot2)

    def swapped(self) -> "LinkInvariants":
        """Roles of the two components exchanged (meaningful for p = -1)."""
        return replace(self, tb1=self.tb2, rot1=self.rot2, tb2=self.tb1, rot2=self.rot1)

    def reflected(self) -> "LinkInvariants":
        return replace(self, rot1=-self.rot1, rot2=-self.rot2)

    def to_dict(self):
        return {"p": self.p, "q": self.q, "tb1": self.tb1, "rot1": self.rot1,
                "tb2": self.tb2, "rot2": self.rot2, "normalized": self.normalized}

    @classmethod
    def parse(cls, text: str) -> "LinkInvariants":
        parts = [int(x) for x in text.replace(" ", "").split(",")]
        if len(parts) != 6:
            raise ValueError(f"expected 'p,q,tb1,rot1,tb2,rot2', got {text!r}")
        return cls(*parts)


def _check_coprime(p: int, q: int):
    if gcd(p, q) != 1:
        raise NonCoprime(f"gcd({p}, {q}) = {gcd(p, q)}")


def normalize(raw: LinkInvariants) -> LinkInvariants:
    """Orient L2 so that q = lk(L1, L2) >= 0.

    Reversing L2 sends (p, q) to (-p, -q) and rot2 to -rot2; tb2 and the
    invariants of L1 are unchanged.  For q <= 1 the slope p carries no
    link-type information (split link resp. Hopf link) and is set to 1.
    """
    _check_coprime(raw.p, raw.q)
    p, q, rot2 = raw.p, raw.q, raw.rot2
    if q < 0:
        p, q, rot2 = -p, -q, -rot2
    if q <= 1:
        p = 1
    return LinkInvariants(p, q, raw.tb1, raw.rot1, raw.tb2, rot2, True)


def unknot_realizable(tb: int, rot: int) -> bool:
    return tb <= -1 and abs(rot) <= -tb - 1 and (tb + rot) % 2 == 1


def case_of(p: int, q: int, m: int) -> Case:
    if q < 0:
        raise NotNormalized("q must be non-negative")
    if q == 0:
        return Case.C1_q0
    if q == 1:
        return Case.C2_q1
    if p == 0:
        raise NonCoprime(f"gcd(0, {q}) = {q}")
    if p > 0:
        return Case.C3a_pos
    if m * p + q > 0:
        return Case.C3b1
    if p == -1:
        return Case.C3b2iii
    if -p > q:
        return Case.C3b2i
    return Case.C3b2ii


def max_tb2(p: int, q: int, m: int) -> int:
    """Maximal tb of L2 in a (p, q)-cable link with tb(L1) = -m."""
    if q < 2:
        raise OutOfDomain("max_tb2 needs q >= 2")
    if p == 0 or m < 1:
        raise OutOfDomain("max_tb2 needs p != 0 and m >= 1")
    if p > 0:
        return p * q - p - q
    return p * q - max(m * p + q, 0)


@dataclass(frozen=True)
class Coupling:
    """Auxiliary rotation value tying a peak to rot(L1).

    ``param_name`` is "f_a1_mu" (rotation of the meridian on the torus of
    slope -(a+1)) or "f_T_mu" (the meridian on the torus carrying L2);
    ``constraint_slack`` is how far |rot1 - value| is below its bound.
    """
    param_name: str
    param_value: int
    constraint_slack: int

    def to_dict(self):
        return {"param_name": self.param_name, "param_value": self.param_value,
                "constraint_slack": self.constraint_slack}


@dataclass(frozen=True)
class Peak:
    rot2_peak: int
    tb2: int
    coupling: Coupling | None = None

    def to_dict(self):
        return {"rot2": self.rot2_peak, "tb2": self.tb2,
                "coupling": self.coupling.to_dict() if self.coupling else None}


def _parity_range(lo: int, hi: int):
    return range(lo, hi + 1, 2)


def peaks(p: int, q: int, m: int, rot1: int) -> list[Peak]:
    """Peaks of the mountain range, sorted by rot2, duplicates merged."""
    if q < 2:
        raise OutOfDomain("peaks are defined for q >= 2")
    _check_coprime(p, q)
    if not unknot_realizable(-m, rot1):
        raise OutOfDomain(f"(tb1, rot1) = ({-m}, {rot1}) is not a Legendrian unknot")
    top = max_tb2(p, q, m)
    case = case_of(p, q, m)
    found: dict[int, Peak] = {}

    def add(rot2, coupling=None):
        if rot2 not in found:
            found[rot2] = Peak(rot2, top, coupling)

    if case is Case.C3a_pos:
        add(0)
    elif case is Case.C3b1:
        add(p * rot1)
    elif case is Case.C3b2i:
        l = 0
        while l * q < -(p + q):
            add(p + (2 * l + 1) * q)
            add(-(p + (2 * l + 1) * q))
            l += 1
    elif case is Case.C3b2ii:
        a, b = divmod(q, -p)
        bound = m - a - 1
        # f_T(lambda) = |p| - 1 branch, then the 1 - |p| branch
        for f in _parity_range(-a + 2, a):
            slack = bound - abs(rot1 - f)
            if slack >= 0:
                add(p * f - p - b, Coupling("f_a1_mu", f, slack))
        for f in _parity_range(-a, a - 2):
            slack = bound - abs(rot1 - f)
            if slack >= 0:
                add(p * f + p + b, Coupling("f_a1_mu", f, slack))
    elif case is Case.C3b2iii:
        for f in _parity_range(-q + 1, q - 1):
            slack = (m - q) - abs(rot1 - f)
            if slack >= 0:
                add(-f, Coupling("f_T_mu", f, slack))
    return [found[k] for k in sorted(found)]


def in_cones(rot2: int, tb2: int, pks: list[Peak]) -> list[Peak]:
    """The peaks whose stabilization cone contains (rot2, tb2)."""
    out = []
    for pk in pks:
        s = pk.tb2 - tb2
        d = rot2 - pk.rot2_peak
        if s >= 0 and abs(d) <= s and (s - d) % 2 == 0:
            out.append(pk)
    return out


def _realizable_one(inv: LinkInvariants) -> tuple[bool, Case | None]:
    if not unknot_realizable(inv.tb1, inv.rot1):
        return False, None
    m = inv.m
    case = case_of(inv.p, inv.q, m)
    if case in (Case.C1_q0, Case.C2_q1):
        return unknot_realizable(inv.tb2, inv.rot2), case
    if (inv.tb2 + inv.rot2) % 2 != 1:
        return False, case
    return bool(in_cones(inv.rot2, inv.tb2, peaks(inv.p, inv.q, m, inv.rot1))), case


def realizable(inv: LinkInvariants, allow_swap: bool = True) -> tuple[bool, CaseLabel | None]:
    """Whether some Legendrian (p, q)-cable link has these invariants.

    For p = -1 both components are unknots and each is a (-1, q)-cable of the
    other; the tuple is accepted if either role assignment works.  The returned
    label describes the assignment that succeeded (or the direct one).
    """
    if not inv.normalized:
        raise NotNormalized("call normalize() first")
    _check_coprime(inv.p, inv.q)
    ok, case = _realizable_one(inv)
    if ok:
        return True, CaseLabel(case, False)
    if allow_swap and inv.p == -1 and inv.q >= 2:
        ok2, case2 = _realizable_one(inv.swapped())
        if ok2:
            return True, CaseLabel(case2, True)
    return False, (CaseLabel(case, False) if case else None)


@dataclass(frozen=True)
class MountainRange:
    p: int
    q: int
    m: int
    rot1: int
    floor: int
    max_tb2: int
    case: Case
    peaks: tuple[Peak, ...]
    points: tuple[tuple[int, int], ...]

    def to_dict(self):
        return {"p": self.p, "q": self.q, "m": self.m, "rot1": self.rot1,
                "floor": self.floor, "max_tb2": self.max_tb2, "case": self.case.value,
                "peaks": [pk.to_dict() for pk in self.peaks],
                "points": [list(x) for x in self.points]}


def mountain_range(p: int, q: int, m: int, rot1: int, floor: int) -> MountainRange:
    """All realizable (rot2, tb2) with tb2 >= floor, ordered by tb2 desc, rot2 asc."""
    pks = peaks(p, q, m, rot1)
    top = max_tb2(p, q, m)
    if floor > top:
        raise OutOfDomain(f"floor {floor} is above the maximal tb2 {top}")
    pts = set()
    for pk in pks:
        for s in range(top - floor + 1):
            for r in range(pk.rot2_peak - s, pk.rot2_peak + s + 1, 2):
                pts.add((r, top - s))
    ordered = tuple(sorted(pts, key=lambda x: (-x[1], x[0])))
    return MountainRange(p, q, m, rot1, floor, top, case_of(p, q, m), tuple(pks), ordered)


def neighbor_peak_gaps(p: int, q: int) -> tuple[int, int]:
    """The two possible distances between neighbouring peak rotation numbers."""
    _check_coprime(p, q)
    if q < 2 or p >= -1:
        raise OutOfDomain("gaps are defined for q >= 2 and p < -1")
    if -p > q:
        b = (-p) % q
        return 2 * b, 2 * (q - b)
    b = q % (-p)
    return 2 * b, 2 * (-p - b)


def ascii_plot(mr: MountainRange) -> str:
    """Dot plot of a mountain range: rot2 across, tb2 down; peaks marked '^'."""
    if not mr.points:
        return "(empty)\n"
    rots = [r for r, _ in mr.points]
    lo, hi = min(rots), max(rots)
    pts = set(mr.points)
    peak_pts = {(pk.rot2_peak, pk.tb2) for pk in mr.peaks}
    width = max(len(str(t)) for t in range(mr.floor, mr.max_tb2 + 1))
    lines = [f"(p,q,m,rot1)=({mr.p},{mr.q},{mr.m},{mr.rot1})  rot2 {lo}..{hi}"]
    for tb in range(mr.max_tb2, mr.floor - 1, -1):
        row = []
        for r in range(lo, hi + 1):
            row.append("^" if (r, tb) in peak_pts else "o" if (r, tb) in pts else ".")
        lines.append(f"{tb:>{width}} " + "".join(row))
    return "\n".join(lines) + "\n"
