"""Knots in the 1-jet space of the circle, and transverse cable links.

J^1(S^1) with ker(dz - p dq) is contactomorphic to S^3 minus a Legendrian
unknot K0 with tb = -1, rot = 0.  A knot homotopic to n times the generator
maps to the second component of an (p, n)-cable link of K0, with
tb(K) = tb(f(K)) + n^2 and rot(K) = rot(f(K)).

Transverse invariants use the positive push-off: sl = tb - rot.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import gcd

from .classify import Outcome, Verdict, classify_cable
from .errors import FloorTooShallow, NonCoprime, OutOfDomain
from .ranges import (
    LinkInvariants, MountainRange, max_tb2, mountain_range, normalize, peaks,
    realizable, unknot_realizable,
)


@dataclass(frozen=True)
class JetKnotInvariants:
    n: int
    p: int
    tb: int
    rot: int

    def as_tuple(self):
        return (self.n, self.p, self.tb, self.rot)

    def to_dict(self):
        return {"n": self.n, "p": self.p, "tb": self.tb, "rot": self.rot}

    @classmethod
    def parse(cls, text: str) -> "JetKnotInvariants":
        parts = [int(x) for x in text.replace(" ", "").split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected 'n,p,tb,rot', got {text!r}")
        return cls(*parts)


def normalize_jet(k: JetKnotInvariants) -> JetKnotInvariants:
    """Reverse orientation if needed so that n >= 0; p is forgotten when n <= 1."""
    if gcd(k.n, k.p) != 1:
        raise NonCoprime(f"gcd({k.n}, {k.p}) = {gcd(k.n, k.p)}")
    if k.n < 0:
        k = JetKnotInvariants(-k.n, -k.p, k.tb, -k.rot)
    if k.n <= 1:
        k = replace(k, p=1)
    return k


def jet_to_sphere(k: JetKnotInvariants) -> LinkInvariants:
    if gcd(k.n, k.p) != 1:
        raise NonCoprime(f"gcd({k.n}, {k.p}) = {gcd(k.n, k.p)}")
    return normalize(LinkInvariants(k.p, k.n, -1, 0, k.tb - k.n * k.n, k.rot))


def sphere_to_jet(inv: LinkInvariants) -> JetKnotInvariants:
    if (inv.tb1, inv.rot1) != (-1, 0):
        raise OutOfDomain("only links whose first component is K0 (tb=-1, rot=0) come from J^1(S^1)")
    return normalize_jet(JetKnotInvariants(inv.q, inv.p, inv.tb2 + inv.q * inv.q, inv.rot2))


def _jet_realizable(inv: LinkInvariants) -> bool:
    # K0 is a fixed component with tb = -1, so the role swap never applies
    return realizable(inv, allow_swap=False)[0]


def classify_jet(a: JetKnotInvariants, b: JetKnotInvariants) -> Verdict:
    a, b = normalize_jet(a), normalize_jet(b)
    ia, ib = jet_to_sphere(a), jet_to_sphere(b)
    if not _jet_realizable(ia):
        return Verdict(Outcome.NOT_REALIZABLE, f"first knot {a.as_tuple()} not realizable")
    if not _jet_realizable(ib):
        return Verdict(Outcome.NOT_REALIZABLE, f"second knot {b.as_tuple()} not realizable")
    if (a.n, a.p) != (b.n, b.p):
        return Verdict(Outcome.NOT_ISOTOPIC, f"knot types differ: (n,p)={a.n, a.p} vs {b.n, b.p}")
    return classify_cable(ia, ib)


def jet_max_tb(n: int, p: int) -> int:
    if n < 2 or p == 0:
        raise OutOfDomain("jet_max_tb needs n >= 2 and p != 0")
    if gcd(n, p) != 1:
        raise NonCoprime(f"gcd({n}, {p}) = {gcd(n, p)}")
    return max_tb2(p, n, 1) + n * n


@dataclass(frozen=True)
class JetRange:
    n: int
    p: int
    max_tb: int
    peaks: tuple[int, ...]
    points: tuple[tuple[int, int], ...]

    def to_dict(self):
        return {"schema": "v1", "n": self.n, "p": self.p, "max_tb": self.max_tb,
                "peaks": list(self.peaks), "points": [list(x) for x in self.points]}


def jet_mountain_range(n: int, p: int, floor: int) -> JetRange:
    """Realizable (rot, tb) of jet-space knots in class n with slope p, tb >= floor."""
    shift = n * n
    mr = mountain_range(p, n, 1, 0, floor - shift)
    pts = tuple((r, t + shift) for r, t in mr.points)
    return JetRange(n, p, mr.max_tb2 + shift, tuple(pk.rot2_peak for pk in mr.peaks), pts)


# -- transverse ----------------------------------------------------------------

def transverse_from_legendrian(tb: int, rot: int) -> int:
    return tb - rot


@dataclass(frozen=True)
class TransverseInvariants:
    p: int
    q: int
    sl2: int
    sl1: int | None = None

    def to_dict(self):
        return {"p": self.p, "q": self.q, "sl1": self.sl1, "sl2": self.sl2}

    @classmethod
    def parse(cls, text: str) -> "TransverseInvariants":
        parts = [int(x) for x in text.replace(" ", "").split(",")]
        if len(parts) == 4:
            return cls(parts[0], parts[1], parts[3], parts[2])
        if len(parts) == 3:
            return cls(parts[0], parts[1], parts[2])
        raise ValueError(f"expected 'p,q,sl1,sl2' or 'p,q,sl', got {text!r}")


def default_floor(p: int, q: int, m: int, rot1: int) -> int:
    rots = [pk.rot2_peak for pk in peaks(p, q, m, rot1)]
    return max_tb2(p, q, m) - 4 * (max(rots) - min(rots) + 2)


def _peak_sl(p, q, m, rot1) -> list[int]:
    top = max_tb2(p, q, m)
    return [top - pk.rot2_peak for pk in peaks(p, q, m, rot1)]


@dataclass(frozen=True)
class TransverseRange:
    p: int
    q: int
    m: int
    rot1: int
    floor: int
    sl_max: int
    values: tuple[int, ...]

    def to_dict(self):
        return {"schema": "v1", "p": self.p, "q": self.q, "m": self.m, "rot1": self.rot1,
                "sl1": -self.m - self.rot1, "floor": self.floor, "sl_max": self.sl_max,
                "sl2": list(self.values)}


def transverse_range(p: int, q: int, m: int, rot1: int, floor: int | None = None) -> TransverseRange:
    """sl2 values of positive push-offs of L2 with tb2 >= floor, descending.

    From a peak P at tb = T a stabilization with k positive and j negative
    moves has sl = T - rot(P) - 2k, so each cone contributes an arithmetic
    progression that starts at its peak and has length T - floor + 1.
    """
    if floor is None:
        floor = default_floor(p, q, m, rot1)
    top = max_tb2(p, q, m)
    if floor > top:
        raise OutOfDomain(f"floor {floor} is above the maximal tb2 {top}")
    vals = set()
    for s in _peak_sl(p, q, m, rot1):
        vals.update(s - 2 * k for k in range(top - floor + 1))
    return TransverseRange(p, q, m, rot1, floor, max(vals), tuple(sorted(vals, reverse=True)))


def transverse_range_bruteforce(p: int, q: int, m: int, rot1: int, floor: int) -> set[int]:
    """Oracle: project every mountain-range point to tb - rot."""
    mr: MountainRange = mountain_range(p, q, m, rot1, floor)
    return {transverse_from_legendrian(t, r) for r, t in mr.points}


def _unknot_sl(sl: int) -> bool:
    return sl <= -1 and sl % 2 == 1


def _m_window(q: int, sl1: int) -> range:
    # rot1 = -m - sl1 is a valid unknot rotation iff m >= (1 - sl1)/2; beyond
    # m = q - sl1 the peak sets stop changing, so this window sees every case
    m_min = (1 - sl1) // 2
    return range(m_min, max(m_min, 2 * q + 2 - sl1) + 1)


def _sl2_status(p, q, sl1, sl2, floor, fixed_m=None):
    """Return True/False, or None when not found above an explicit floor."""
    if not _unknot_sl(sl1):
        return False
    if q <= 1:
        return _unknot_sl(sl2)
    if sl2 % 2 == 0:
        return False
    ms = [fixed_m] if fixed_m is not None else _m_window(q, sl1)
    best = None
    for m in ms:
        rot1 = -m - sl1
        if not unknot_realizable(-m, rot1):
            continue
        top = max_tb2(p, q, m)
        for s in _peak_sl(p, q, m, rot1):
            best = s if best is None else max(best, s)
            # without an explicit floor, go as deep as this cone needs
            if sl2 <= s and (floor is None or (s - sl2) // 2 <= top - floor):
                return True
    if best is None or sl2 > best:
        return False
    return None


def transverse_realizable(t: TransverseInvariants, floor: int | None = None, *, jet: bool = False) -> bool:
    """Whether some realizable Legendrian cable link has these sl values.

    For ``jet=True`` the tuple is (p, n, sl) of a knot in J^1(S^1) and sl2
    holds the jet-space self-linking number.

    With an explicit floor only Legendrian tuples with tb2 >= floor are
    projected; FloorTooShallow is raised when that cannot decide.
    """
    if gcd(t.p, t.q) != 1:
        raise NonCoprime(f"gcd({t.p}, {t.q}) = {gcd(t.p, t.q)}")
    if jet:
        # jet-space sl = sl of the image component + n^2, with L1 = K0 fixed
        status = _sl2_status(t.p, t.q, -1, t.sl2 - t.q * t.q, floor, fixed_m=1)
    else:
        if t.sl1 is None:
            raise ValueError("cable links need sl1")
        status = _sl2_status(t.p, t.q, t.sl1, t.sl2, floor)
        if status is not True and t.p == -1 and t.q >= 2:
            swapped = _sl2_status(t.p, t.q, t.sl2, t.sl1, floor)
            status = True if swapped is True else (None if None in (status, swapped) else False)
    if status is None:
        raise FloorTooShallow(f"sl values {t.to_dict()} not reached above tb2 floor {floor}")
    return status


def normalize_transverse(t: TransverseInvariants) -> TransverseInvariants:
    # reversing L2 negates its slope; sl does not depend on orientation
    if gcd(t.p, t.q) != 1:
        raise NonCoprime(f"gcd({t.p}, {t.q}) = {gcd(t.p, t.q)}")
    if t.q < 0:
        t = replace(t, p=-t.p, q=-t.q)
    if t.q <= 1:
        t = replace(t, p=1)
    return t


def transverse_realizable_and_classify(a: TransverseInvariants, b: TransverseInvariants,
                                       floor: int | None = None, *, jet: bool = False) -> Verdict:
    """Transverse cable links (or jet-space knots with ``jet=True``) are
    isotopic iff link type and self-linking numbers agree."""
    a, b = normalize_transverse(a), normalize_transverse(b)
    if not transverse_realizable(a, floor, jet=jet):
        return Verdict(Outcome.NOT_REALIZABLE, f"first sl tuple {a.to_dict()} not realizable")
    if not transverse_realizable(b, floor, jet=jet):
        return Verdict(Outcome.NOT_REALIZABLE, f"second sl tuple {b.to_dict()} not realizable")
    if (a.p, a.q) != (b.p, b.q):
        return Verdict(Outcome.NOT_ISOTOPIC, f"link types differ: (p,q)={a.p, a.q} vs {b.p, b.q}")
    if (a.sl1, a.sl2) != (b.sl1, b.sl2):
        return Verdict(Outcome.NOT_ISOTOPIC, "self-linking numbers differ")
    return Verdict(Outcome.ISOTOPIC, "same link type and self-linking numbers")
