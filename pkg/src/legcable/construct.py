"""Explicit fronts realizing prescribed invariants of Legendrian cable links.

Every construction is checked against the invariants computed from the
resulting front before it is returned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .classify import destabilization_witness
from .errors import NotRealizable, TemplateMismatch, Unsupported
from .fronts import (
    FrontComponent, FrontDiagram, _free_intervals, _Seg, classical_invariants,
    linking_number, pow2_floor, stabilize, validate,
)
from .ranges import LinkInvariants, normalize, realizable, unknot_realizable

HALF = Fraction(1, 2)
EYE = ((0, 0), (1, 1), (2, 0), (1, -1))


class Family(enum.Enum):
    UNKNOT = "Unknot"
    POSITIVE_CABLE = "PositiveCable"
    MINUS_ONE_CABLE = "MinusOneCable"


@dataclass(frozen=True)
class ConstructionSpec:
    target: LinkInvariants
    family: Family


def family_for(inv: LinkInvariants) -> Family:
    if inv.q <= 1:
        return Family.UNKNOT
    if inv.p >= 1:
        return Family.POSITIVE_CABLE
    if inv.p == -1:
        return Family.MINUS_ONE_CABLE
    raise Unsupported(f"no front template for p = {inv.p} <= -2")


def link_invariants_of(d: FrontDiagram) -> tuple[int, int, int, int, int]:
    """(tb1, rot1, tb2, rot2, lk) of a two-component plane front."""
    tb1, rot1 = classical_invariants(d, 0)
    tb2, rot2 = classical_invariants(d, 1)
    return tb1, rot1, tb2, rot2, linking_number(d, 0, 1)


def _stabilize_to(d: FrontDiagram, c: int, pos: int, neg: int) -> FrontDiagram:
    for _ in range(pos):
        d = stabilize(d, c, 1)
    for _ in range(neg):
        d = stabilize(d, c, -1)
    return d


def unknot_front(tb: int, rot: int) -> FrontDiagram:
    """The 2-cusp unknot stabilized to (tb, rot)."""
    if not unknot_realizable(tb, rot):
        raise NotRealizable(f"no Legendrian unknot has (tb, rot) = ({tb}, {rot})")
    d = FrontDiagram.plane(EYE)
    return _stabilize_to(d, 0, (-tb - 1 + rot) // 2, (-tb - 1 - rot) // 2)


def _vertical_clearance(d: FrontDiagram) -> Fraction:
    """Smallest vertical distance from a vertex to a segment not ending at it."""
    rows = d._float_rows
    best = None
    for comp in d.components:
        for h, v in comp.float_vertices:
            for ah, av, bh, bv in rows:
                lo, hi = (ah, bh) if ah < bh else (bh, ah)
                if not lo <= h <= hi or (h, v) in ((ah, av), (bh, bv)):
                    continue
                g = abs(av + (h - ah) * (bv - av) / (bh - ah) - v)
                if g > 0 and (best is None or g < best):
                    best = g
    return Fraction(best if best is not None else 1.0)


def legendrian_pushoff(d: FrontDiagram, c: int, reverse: bool) -> FrontDiagram:
    """Append a copy of component c shifted a little in the Reeb (vertical) direction.

    The copy has the same tb; lk with the original is tb (or -tb when the copy
    is reversed, which also negates its rotation number).
    """
    bad = validate(d)
    if bad:
        from .errors import InvalidDiagram
        raise InvalidDiagram(bad)
    eps = pow2_floor(_vertical_clearance(d) / 8)
    for _ in range(40):
        comp = d.components[c].translated(0, eps)
        if reverse:
            comp = comp.reversed()
        out = d.with_component(comp)
        if not validate(out):
            return out
        eps /= 2
    raise TemplateMismatch("could not find a generic push-off distance")


def _translate_pair(d: FrontDiagram, c_around: int, c_target: int):
    """Segments T of c_target lying over a segment S of c_around, shifted
    vertically and traversed in the opposite direction (push-off pieces)."""
    out = []
    for t in d.component_segments(c_target):
        for s in d.component_segments(c_around):
            if s.dv * t.dh != t.dv * s.dh or (s.dh > 0) == (t.dh > 0):
                continue
            slo, shi = sorted((s.a[0], s.b[0]))
            tlo, thi = sorted((t.a[0], t.b[0]))
            if not (slo <= tlo and thi <= shi):
                continue
            delta = t.a[1] - s.at(t.a[0])
            if delta != 0:
                out.append((s, t, delta))
    return out


# the loop in local coordinates: S is the line v = 0 (travelling right), T the
# line v = 1 (travelling left from h = 12 to h = 0)
_LOOP = ((12, 1), (8, 2), (11, -1), (4, -2), (7, 2), (0, 1))


def add_meridional_loop(d: FrontDiagram, c_around: int, c_target: int) -> FrontDiagram:
    """Wrap c_target once more around c_around next to a parallel stretch.

    The inserted path has two down and two up cusps and crosses c_around twice,
    both crossings positive, so tb(c_target) drops by 2, its rotation number is
    unchanged and lk(c_around, c_target) rises by 1.
    """
    before = classical_invariants(d, c_target), linking_number(d, c_around, c_target)
    best = None
    for s, t, delta in _translate_pair(d, c_around, c_target):
        tlo, thi = sorted((t.a[0], t.b[0]))
        skip = {(s.comp, s.index), (t.comp, t.index)}
        for a, b in _free_intervals(d, s, skip, 3 * abs(delta)):
            a, b = max(a, tlo), min(b, thi)
            if b > a and (best is None or b - a > best[0]):
                best = (b - a, s, t, delta, a, b)
    if best is None:
        raise TemplateMismatch(f"component {c_target} has no push-off stretch along component {c_around}")
    _, s, t, delta, a, b = best
    w = (b - a) / 4
    lo, hi = a + w, b - w
    h_s, h_e = (lo, hi) if t.dh > 0 else (hi, lo)
    pts = []
    for hl, vl in _LOOP:
        h = h_s + Fraction(12 - hl, 12) * (h_e - h_s)
        pts.append((h, t.at(h) + (vl - 1) * delta))
    comp = d.components[c_target]
    verts = list(comp.vertices)
    verts[t.index + 1:t.index + 1] = pts
    out = d.replace_component(c_target, FrontComponent(tuple(verts), comp.winding))
    bad = validate(out)
    if bad:
        raise TemplateMismatch(f"meridional loop produced an invalid front: {bad[0].kind}")
    (tb, rot), lk = before
    if (classical_invariants(out, c_target), linking_number(out, c_around, c_target)) != ((tb - 2, rot), lk + 1):
        raise TemplateMismatch("meridional loop did not change the invariants as expected")
    return out


def _merge_collinear(verts):
    out = []
    n = len(verts)
    for i in range(n):
        a, b, c = verts[i - 1], verts[i], verts[(i + 1) % n]
        d1 = (b[0] - a[0], b[1] - a[1])
        d2 = (c[0] - b[0], c[1] - b[1])
        if d1[0] * d2[1] - d1[1] * d2[0] == 0 and d1[0] * d2[0] + d1[1] * d2[1] > 0:
            continue
        out.append(b)
    return out


def _braid_closure(p: int, q: int) -> list:
    """Front of the closure of the positive braid (s_1 ... s_{q-1})^p.

    Strands run right at heights 1..q starting from h = 0; crossings occupy
    unit columns from h = 2 on.  Strand height y leaves the braid through a
    right cusp, returns left at height 2q + 1 - y and re-enters at height y
    through a left cusp.  Columns 0 to 2 are left free for the axis.
    """
    cols = p * (q - 1)
    right = 2 + cols
    verts = []
    y = 1
    for _ in range(q):
        verts.append((Fraction(0), Fraction(y)))
        for c in range(cols):
            i = c % (q - 1) + 1
            verts.append((Fraction(2 + c), Fraction(y)))
            y = i + 1 if y == i else i if y == i + 1 else y
        verts.append((Fraction(right), Fraction(y)))
        k = q - y + 1
        top = Fraction(2 * q + 1 - y)
        verts += [(Fraction(right + k), q + HALF), (Fraction(right), top),
                  (Fraction(0), top), (Fraction(-k), q + HALF)]
    if y != 1:
        raise ValueError(f"(s_1...s_{q - 1})^{p} does not close up to a knot")
    return _merge_collinear(verts)


def _axis(q: int) -> list:
    """An eye around the q braid strands at h in [1/2, 3/2], linking them positively."""
    return [(HALF, HALF), (Fraction(1), q + HALF), (Fraction(3, 2), HALF), (Fraction(1), -HALF)]


def positive_cable_front(p: int, q: int, m: int, rot1: int) -> FrontDiagram:
    """L1 (component 0): unknot with (-m, rot1) acting as the braid axis;
    L2 (component 1): positive (p, q) torus knot front, tb = pq - p - q, rot = 0."""
    if p < 1 or q < 1:
        raise Unsupported("positive cable fronts need p >= 1 and q >= 1")
    if not unknot_realizable(-m, rot1):
        raise NotRealizable(f"no Legendrian unknot has (tb, rot) = ({-m}, {rot1})")
    d = FrontDiagram.plane(_axis(q), _braid_closure(p, q))
    return _stabilize_to(d, 0, (m - 1 + rot1) // 2, (m - 1 - rot1) // 2)


def _minus_one_peak(q: int, m: int, rot1: int, rot2: int) -> FrontDiagram:
    if q > m:
        # L2 is the reversed push-off of L1 with q - m meridional loops
        d = legendrian_pushoff(unknot_front(-m, rot1), 0, reverse=True)
        for _ in range(q - m):
            d = add_meridional_loop(d, 0, 1)
        return d
    # L1 is a stabilized reversed push-off of L2 = unknot(-q, rot2)
    k = rot1 + rot2
    n1, n2 = (m - q + k) // 2, (m - q - k) // 2
    if n1 < 0 or n2 < 0 or (m - q + k) % 2:
        raise NotRealizable(f"rot1 + rot2 = {k} is out of reach for m - q = {m - q}")
    d = legendrian_pushoff(unknot_front(-q, rot2), 0, reverse=True)
    d = _stabilize_to(d, 1, n1, n2)
    return d.reorder((1, 0))


def minus_one_cable_front(q: int, m: int, rot1: int, tb2: int, rot2: int) -> FrontDiagram:
    inv = normalize(LinkInvariants(-1, q, -m, rot1, tb2, rot2))
    if q < 2:
        raise Unsupported("minus-one cable fronts need q >= 2")
    ok, label = realizable(inv)
    if not ok:
        raise NotRealizable(f"{inv.as_tuple()} is not realizable")
    src = inv.swapped() if label.swapped else inv
    entry = destabilization_witness(inv).entries[0]
    d = _minus_one_peak(q, src.m, src.rot1, entry.peak.rot2_peak)
    d = _stabilize_to(d, 1, entry.pos_stabs, entry.neg_stabs)
    return d.reorder((1, 0)) if label.swapped else d


def _split_or_hopf(inv: LinkInvariants) -> FrontDiagram:
    if inv.q == 0:
        a = unknot_front(inv.tb1, inv.rot1)
        b = unknot_front(inv.tb2, inv.rot2)
        width = max(h for h, _ in a.components[0].vertices) - min(h for h, _ in b.components[0].vertices)
        return FrontDiagram(a.ambient, (a.components[0], b.components[0].translated(width + 1, 0)))
    d = FrontDiagram.plane(_axis(1), _braid_closure(1, 1))
    d = _stabilize_to(d, 0, (-inv.tb1 - 1 + inv.rot1) // 2, (-inv.tb1 - 1 - inv.rot1) // 2)
    return _stabilize_to(d, 1, (-inv.tb2 - 1 + inv.rot2) // 2, (-inv.tb2 - 1 - inv.rot2) // 2)


def construct(spec: ConstructionSpec | LinkInvariants) -> FrontDiagram:
    """A plane front of a Legendrian cable link with the target invariants.

    Component 0 is L1 and component 1 is L2.  The result is re-checked
    against the invariants computed from the front.
    """
    if isinstance(spec, LinkInvariants):
        inv = spec if spec.normalized else normalize(spec)
        family = family_for(inv)
    else:
        inv = spec.target if spec.target.normalized else normalize(spec.target)
        family = spec.family
        if family is not family_for(inv):
            raise Unsupported(f"{inv.as_tuple()} is not in the {family.value} family")
    ok, _ = realizable(inv)
    if not ok:
        raise NotRealizable(f"{inv.as_tuple()} is not realizable")
    if family is Family.UNKNOT:
        d = _split_or_hopf(inv)
    elif family is Family.POSITIVE_CABLE:
        entry = destabilization_witness(inv).entries[0]
        d = positive_cable_front(inv.p, inv.q, inv.m, inv.rot1)
        d = _stabilize_to(d, 1, entry.pos_stabs, entry.neg_stabs)
    else:
        d = minus_one_cable_front(inv.q, inv.m, inv.rot1, inv.tb2, inv.rot2)
    got = link_invariants_of(d)
    want = (inv.tb1, inv.rot1, inv.tb2, inv.rot2, inv.q)
    if got != want:
        raise TemplateMismatch(f"front has (tb1, rot1, tb2, rot2, lk) = {got}, expected {want}")
    return d
