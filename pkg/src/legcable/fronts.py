"""Exact front projections of Legendrian knots and links.

A front is a closed polyline in the (h, v) plane, h the horizontal (base)
coordinate and v the vertical (z) coordinate.  Cusps are the vertices where
the horizontal direction reverses.  On the cylinder the horizontal
coordinate is taken modulo 1 and vertices are stored in a lift; the closing
segment of a component ends at ``vertices[0] + (winding, 0)``.

All predicates use :class:`fractions.Fraction`.  Floating point is only used
to discard segment pairs whose bounding boxes are far apart.

Conventions (contact form dz - p dq, p the slope of the front):

* at a crossing the strand of smaller slope is over;
* a crossing is positive when ``cross(over_dir, under_dir) > 0``;
* a cusp is *down* when traversal passes from the upper to the lower branch;
  rot = (down - up) / 2, so a positive stabilization adds two down cusps.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidDiagram, TemplateMismatch

Point = tuple[Fraction, Fraction]


class Ambient(enum.Enum):
    PLANE = "plane"
    CYLINDER = "cylinder"


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class FrontComponent:
    vertices: tuple[Point, ...]
    winding: int = 0

    def __post_init__(self):
        verts = tuple((_frac(h), _frac(v)) for h, v in self.vertices)
        object.__setattr__(self, "vertices", verts)

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def float_vertices(self) -> list[tuple[float, float]]:
        return [(h.numerator / h.denominator, v.numerator / v.denominator) for h, v in self.vertices]

    def translated(self, dh=0, dv=0) -> "FrontComponent":
        dh, dv = _frac(dh), _frac(dv)
        return FrontComponent(tuple((h + dh, v + dv) for h, v in self.vertices), self.winding)

    def reversed(self) -> "FrontComponent":
        return FrontComponent(tuple(reversed(self.vertices)), -self.winding)


@dataclass(frozen=True)
class CrossingData:
    position: Point
    over_component: int
    under_component: int
    sign: int
    over_segment: int = field(default=-1, compare=False)
    under_segment: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class Violation:
    kind: str
    component: int
    indices: tuple = ()
    detail: str = ""

    def to_dict(self):
        return {"kind": self.kind, "component": self.component,
                "indices": list(self.indices), "detail": self.detail}


@dataclass(frozen=True)
class _Seg:
    comp: int
    index: int
    a: Point
    b: Point

    @property
    def dh(self):
        return self.b[0] - self.a[0]

    @property
    def dv(self):
        return self.b[1] - self.a[1]

    @property
    def slope(self):
        return self.dv / self.dh

    def at(self, h: Fraction) -> Fraction:
        return self.a[1] + (h - self.a[0]) * self.slope

    def shifted(self, k: int) -> "_Seg":
        if not k:
            return self
        return _Seg(self.comp, self.index, (self.a[0] + k, self.a[1]), (self.b[0] + k, self.b[1]))


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _intersect(s: _Seg, t: _Seg):
    """Exact intersection of two closed segments.

    Returns None, ("point", P, ts, tt) with parameters along each segment,
    or ("overlap",) for collinear segments sharing more than one point.
    """
    (x1, y1), (x2, y2) = s.a, s.b
    (x3, y3), (x4, y4) = t.a, t.b
    rx, ry = x2 - x1, y2 - y1
    sx, sy = x4 - x3, y4 - y3
    denom = _cross(rx, ry, sx, sy)
    qpx, qpy = x3 - x1, y3 - y1
    if denom == 0:
        if _cross(qpx, qpy, rx, ry) != 0:
            return None
        rr = rx * rx + ry * ry
        t0 = (qpx * rx + qpy * ry) / rr
        t1 = t0 + (sx * rx + sy * ry) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        lo, hi = max(lo, Fraction(0)), min(hi, Fraction(1))
        if lo > hi:
            return None
        if lo == hi:
            p = (x1 + lo * rx, y1 + lo * ry)
            u = Fraction(0) if p == t.a else Fraction(1)
            return ("point", p, lo, u)
        return ("overlap",)
    ts = _cross(qpx, qpy, sx, sy) / denom
    tt = _cross(qpx, qpy, rx, ry) / denom
    if 0 <= ts <= 1 and 0 <= tt <= 1:
        return ("point", (x1 + ts * rx, y1 + ts * ry), ts, tt)
    return None


@dataclass(frozen=True)
class FrontDiagram:
    ambient: Ambient
    components: tuple[FrontComponent, ...]

    def __post_init__(self):
        object.__setattr__(self, "ambient", Ambient(self.ambient))
        object.__setattr__(self, "components", tuple(self.components))

    # --- construction helpers -------------------------------------------------

    @classmethod
    def plane(cls, *components: Sequence[Sequence]) -> "FrontDiagram":
        return cls(Ambient.PLANE, tuple(FrontComponent(tuple(c)) for c in components))

    def with_component(self, comp: FrontComponent) -> "FrontDiagram":
        return FrontDiagram(self.ambient, self.components + (comp,))

    def replace_component(self, c: int, comp: FrontComponent) -> "FrontDiagram":
        comps = list(self.components)
        comps[c] = comp
        return FrontDiagram(self.ambient, tuple(comps))

    def reorder(self, order: Sequence[int]) -> "FrontDiagram":
        return FrontDiagram(self.ambient, tuple(self.components[i] for i in order))

    # --- serialization (front-v1) --------------------------------------------

    def to_dict(self) -> dict:
        comps = []
        for comp in self.components:
            comps.append({
                "winding": comp.winding,
                "vertices": [[h.numerator, h.denominator, v.numerator, v.denominator]
                             for h, v in comp.vertices],
            })
        return {"ambient": self.ambient.value, "components": comps}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> "FrontDiagram":
        comps = []
        for c in data["components"]:
            verts = []
            for row in c["vertices"]:
                if len(row) == 4:
                    verts.append((Fraction(row[0], row[1]), Fraction(row[2], row[3])))
                elif len(row) == 2:
                    verts.append((Fraction(row[0]), Fraction(row[1])))
                else:
                    raise ValueError(f"vertex must have 2 or 4 entries, got {row!r}")
            comps.append(FrontComponent(tuple(verts), int(c.get("winding", 0))))
        return cls(Ambient(data["ambient"]), tuple(comps))

    @classmethod
    def from_json(cls, text: str) -> "FrontDiagram":
        return cls.from_dict(json.loads(text))

    # --- geometry ---------------------------------------------------------------

    @property
    def cylinder(self) -> bool:
        return self.ambient is Ambient.CYLINDER

    def component_segments(self, c: int) -> list[_Seg]:
        comp = self.components[c]
        vs = comp.vertices
        n = len(vs)
        segs = []
        for i in range(n):
            a = vs[i]
            b = vs[(i + 1) % n]
            if i == n - 1 and comp.winding:
                b = (b[0] + comp.winding, b[1])
            segs.append(_Seg(c, i, a, b))
        return segs

    @cached_property
    def segments(self) -> list[_Seg]:
        out = []
        for c in range(len(self.components)):
            out.extend(self.component_segments(c))
        return out

    def _shift_range(self, s: _Seg, t: _Seg) -> range:
        """Integer shifts k for which t + k may meet s horizontally."""
        if not self.cylinder:
            return range(0, 1)
        slo, shi = sorted((s.a[0], s.b[0]))
        tlo, thi = sorted((t.a[0], t.b[0]))
        kmin = -((thi - slo).__floor__())
        kmax = (shi - tlo).__floor__()
        return range(kmin, kmax + 1)

    def _adjacent_vertex(self, s: _Seg, t: _Seg, k: int, p: Point) -> bool:
        """True if p is the polyline vertex shared by consecutive segments s and t+k."""
        if s.comp != t.comp:
            return False
        comp = self.components[s.comp]
        n = len(comp.vertices)
        w = comp.winding
        tk = t.shifted(k)
        # s then t: the shared vertex is s.b, t enters shifted by the winding on wrap
        if (s.index + 1) % n == t.index:
            expect = w if s.index == n - 1 else 0
            if k == expect and s.b == p and tk.a == p:
                return True
        # t then s: p is s.a, seen in the frame of s
        if (t.index + 1) % n == s.index:
            expect = w if t.index == n - 1 else 0
            if k == -expect and s.a == p and tk.b == p:
                return True
        return False

    @cached_property
    def _float_segments(self) -> np.ndarray:
        """(n, 4) array of segment endpoints a_h, a_v, b_h, b_v as floats."""
        rows = []
        for comp in self.components:
            fv = comp.float_vertices
            n = len(fv)
            for i in range(n):
                bh, bv = fv[(i + 1) % n]
                if i == n - 1:
                    bh += comp.winding
                rows.append((*fv[i], bh, bv))
        return np.array(rows, dtype=float).reshape(-1, 4)

    @cached_property
    def _float_rows(self) -> list[tuple[float, float, float, float]]:
        return [tuple(r) for r in self._float_segments.tolist()]

    @cached_property
    def _segment_ids(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Component, index within component and component size of each segment."""
        sizes = np.array([len(c.vertices) for c in self.components], dtype=int)
        comp = np.repeat(np.arange(len(sizes)), sizes)
        idx = np.arange(sizes.sum()) - np.repeat(np.cumsum(sizes) - sizes, sizes)
        return comp, idx, sizes[comp]

    @cached_property
    def _offsets(self) -> list[int]:
        out, acc = [], 0
        for comp in self.components:
            out.append(acc)
            acc += len(comp.vertices)
        return out

    @cached_property
    def _tol(self) -> tuple[float, float]:
        """Error margins for float lengths and float cross products."""
        scale = 1.0 + max((max(abs(h), abs(v)) for c in self.components for h, v in c.float_vertices),
                          default=0.0)
        return 1e-13 * scale, 1e-13 * scale * scale

    @cached_property
    def _cusps(self) -> list[list[tuple[int, bool]]]:
        """Per component, (vertex index, is_down) of every cusp."""
        ltol, ctol = self._tol
        out = []
        for c, comp in enumerate(self.components):
            fv = comp.float_vertices
            n = len(fv)
            marks = []
            for i in range(n):
                (h0, v0), (h1, v1) = fv[i - 1], fv[i]
                h2, v2 = fv[(i + 1) % n]
                if i == 0:
                    h0 -= comp.winding
                if i == n - 1:
                    h2 += comp.winding
                dh_in, dv_in, dh, dv = h1 - h0, v1 - v0, h2 - h1, v2 - v1
                cr = dh_in * dv - dv_in * dh
                if abs(dh) <= ltol or abs(dh_in) <= ltol or abs(cr) <= ctol:
                    marks = None
                    break
                if (dh_in > 0) != (dh > 0):
                    # at a cusp dh_in*dh < 0, so slope_out - slope_in has the sign of -cr
                    marks.append((i, (dh > 0) == (cr > 0)))
            out.append(marks if marks is not None else _cusp_indices(self.component_segments(c)))
        return out

    def _candidate_pairs(self):
        """Segment pairs that may touch; everything else is certainly disjoint.

        On the plane the orientation tests are evaluated in floating point
        with an error margin.  Pairs whose tests are all decisive and show
        disjointness are dropped; crossings and near-degenerate pairs are
        passed on to the exact predicate.
        """
        segs = self.segments
        if len(segs) < 2:
            return []
        f = self._float_segments
        ah, av, bh, bv = f.T
        vlo, vhi = np.minimum(av, bv), np.maximum(av, bv)
        btol = 1e-9 * (1.0 + np.abs(f).max())
        vok = (vlo[:, None] <= vhi[None, :] + btol) & (vlo[None, :] <= vhi[:, None] + btol)
        if self.cylinder:
            ii, jj = np.nonzero(np.triu(vok, 1))
            return [(segs[i], segs[j]) for i, j in zip(ii.tolist(), jj.tolist())]
        # oa[i, j], ob[i, j]: side of segment i on which the start/end of segment j lies
        dh, dv = (bh - ah)[:, None], (bv - av)[:, None]
        oa = dh * (av[None, :] - av[:, None]) - dv * (ah[None, :] - ah[:, None])
        ob = dh * (bv[None, :] - av[:, None]) - dv * (bh[None, :] - ah[:, None])
        otol = self._tol[1]
        sure = (np.abs(oa) > otol) & (np.abs(ob) > otol)
        split = oa * ob < 0
        proper = split & split.T
        decisive = sure & sure.T
        # consecutive segments share a vertex; they only meet elsewhere when collinear
        turn = np.abs(dh * dv.T - dv * dh.T) > otol
        keep = np.where(self._adjacency, ~turn, proper | (~decisive & vok))
        ii, jj = np.nonzero(np.triu(keep, 1))
        return [(segs[i], segs[j]) for i, j in zip(ii.tolist(), jj.tolist())]

    @cached_property
    def _adjacency(self) -> np.ndarray:
        comp, idx, size = self._segment_ids
        nxt = (comp[:, None] == comp[None, :]) & ((idx[:, None] + 1) % size[:, None] == idx[None, :])
        return nxt | nxt.T

    @cached_property
    def _analysis(self):
        violations: list[Violation] = []
        crossings: list[tuple] = []
        for c, comp in enumerate(self.components):
            n = len(comp.vertices)
            if n < 3:
                violations.append(Violation("TooFewVertices", c, (), f"{n} vertices"))
                continue
            if not self.cylinder and comp.winding != 0:
                violations.append(Violation("WindingOnPlane", c, (), f"winding {comp.winding}"))
            # only segments that look degenerate in floating point get an exact look
            fv = comp.float_vertices
            ltol = self._tol[0]
            near = []
            for i in range(n):
                dh = abs(fv[(i + 1) % n][0] + (comp.winding if i == n - 1 else 0) - fv[i][0])
                if dh <= ltol or (self.cylinder and dh >= 1 - ltol):
                    near.append(i)
            segs = self.component_segments(c) if near else []
            for i in near:
                s = segs[i]
                if s.dh == 0:
                    violations.append(Violation("NonMonotoneSegment", c, (s.index,), "vertical or degenerate segment"))
                elif self.cylinder and abs(s.dh) >= 1:
                    violations.append(Violation("SegmentTooLong", c, (s.index,), "segment wraps the cylinder"))
        if violations:
            return violations, crossings
        for c, comp in enumerate(self.components):
            ncusps = len(self._cusps[c])
            if ncusps % 2:
                violations.append(Violation("OddCuspCount", c, (), str(ncusps)))
            if comp.winding == 0 and ncusps < 2:
                violations.append(Violation("TooFewCusps", c, (), str(ncusps)))
        points: dict[Point, list] = {}
        for s, t in self._candidate_pairs():
            for k in self._shift_range(s, t):
                tk = t.shifted(k)
                hit = _intersect(s, tk)
                if hit is None:
                    continue
                if hit[0] == "overlap":
                    kind = "Tangency" if s.comp == t.comp and abs(s.index - t.index) in (1, len(self.components[s.comp]) - 1) else "NonGenericIncidence"
                    violations.append(Violation(kind, s.comp, (s.index, t.index), f"collinear overlap with component {t.comp}"))
                    continue
                _, p, ts, tt = hit
                if self._adjacent_vertex(s, t, k, p):
                    continue
                if ts in (0, 1) or tt in (0, 1):
                    violations.append(Violation("NonGenericIncidence", s.comp, (s.index, t.index),
                                                f"vertex incidence with component {t.comp} at {_fmt(p)}"))
                    continue
                key = (p[0] % 1, p[1]) if self.cylinder else p
                points.setdefault(key, []).append((s, tk))
        for p, hits in sorted(points.items()):
            if len(hits) > 1:
                s, t = hits[0]
                violations.append(Violation("TriplePoint", s.comp, (s.index, t.index), f"at {_fmt(p)}"))
                continue
            s, t = hits[0]
            over, under = (s, t) if s.slope < t.slope else (t, s)
            sgn = _cross(over.dh, over.dv, under.dh, under.dv)
            crossings.append(CrossingData(p, over.comp, under.comp, 1 if sgn > 0 else -1,
                                          over.index, under.index))
        return violations, crossings


def _fmt(p: Point) -> str:
    return f"({p[0]}, {p[1]})"


def _cusp_indices(segs: list[_Seg]) -> list[tuple[int, bool]]:
    """(vertex index, is_down) for each cusp of a component."""
    out = []
    n = len(segs)
    for i in range(n):
        sin, sout = segs[i - 1], segs[i]
        if (sin.dh > 0) == (sout.dh > 0):
            continue
        side = 1 if sout.dh > 0 else -1
        diff = sout.slope - sin.slope
        out.append((i, side * diff < 0))
    return out


# --- public operations ---------------------------------------------------------

def validate(d: FrontDiagram) -> list[Violation]:
    """All invariant violations of ``d``; empty iff the diagram is a valid front."""
    return list(d._analysis[0])


def _require_valid(d: FrontDiagram):
    bad = d._analysis[0]
    if bad:
        raise InvalidDiagram(bad)


def crossings(d: FrontDiagram) -> list[CrossingData]:
    _require_valid(d)
    return list(d._analysis[1])


def cusps(d: FrontDiagram, c: int) -> tuple[int, int]:
    """(down, up) cusp counts of component ``c``."""
    _require_valid(d)
    marks = d._cusps[c]
    down = sum(1 for _, is_down in marks if is_down)
    return down, len(marks) - down


def writhe(d: FrontDiagram, c: int) -> int:
    return sum(x.sign for x in crossings(d) if x.over_component == c and x.under_component == c)


def classical_invariants(d: FrontDiagram, c: int = 0) -> tuple[int, int]:
    """(tb, rot) of component ``c`` computed from the front.

    tb = writhe - #cusps/2 and rot = (down - up)/2.  On the cylinder these are
    the jet-space values; no correction for the winding is applied here.
    """
    down, up = cusps(d, c)
    return writhe(d, c) - (down + up) // 2, (down - up) // 2


def linking_number(d: FrontDiagram, c1: int, c2: int) -> int:
    if c1 == c2:
        raise ValueError("linking number needs two distinct components")
    if d.cylinder:
        raise ValueError("linking numbers are only computed for plane fronts")
    total = sum(x.sign for x in crossings(d) if {x.over_component, x.under_component} == {c1, c2})
    return total // 2


def translate(d: FrontDiagram, dh=0, dv=0) -> FrontDiagram:
    return FrontDiagram(d.ambient, tuple(c.translated(dh, dv) for c in d.components))


# --- clearance helpers ----------------------------------------------------------

def pow2_floor(x: Fraction) -> Fraction:
    """Largest power of two not exceeding the positive rational ``x``."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("pow2_floor needs a positive argument")
    k = x.numerator.bit_length() - x.denominator.bit_length()
    y = Fraction(2) ** k
    while y > x:
        y /= 2
    while y * 2 <= x:
        y *= 2
    return y


def _others_over(d: FrontDiagram, lo: Fraction, hi: Fraction, skip) -> Iterable[_Seg]:
    """Segments (shifted on the cylinder) whose horizontal span meets [lo, hi]."""
    for t in d.segments:
        if (t.comp, t.index) in skip:
            continue
        tlo, thi = sorted((t.a[0], t.b[0]))
        if d.cylinder:
            ks = range(-((thi - lo).__floor__()) - 1, (hi - tlo).__floor__() + 2)
        else:
            ks = (0,)
        for k in ks:
            if tlo + k <= hi and lo <= thi + k:
                yield t.shifted(k)


def _min_gap(line: _Seg, t: _Seg, lo: Fraction, hi: Fraction, offset=Fraction(0)) -> Fraction:
    """min over h in [lo, hi] of |t(h) - line(h) - offset|, clipped to t's span."""
    tlo, thi = sorted((t.a[0], t.b[0]))
    a, b = max(lo, tlo), min(hi, thi)
    if a > b:
        return None
    ga = t.at(a) - line.at(a) - offset
    gb = t.at(b) - line.at(b) - offset
    if (ga > 0) != (gb > 0) or ga == 0 or gb == 0:
        return Fraction(0)
    return min(abs(ga), abs(gb))


def _free_intervals(d: FrontDiagram, s: _Seg, skip, half_band: Fraction, center_offset=Fraction(0)):
    """Sub-intervals of s's span where every other segment stays farther than
    ``half_band`` (vertically) from the line ``s + center_offset``."""
    lo, hi = sorted((s.a[0], s.b[0]))
    forbidden = []
    for t in _others_over(d, lo, hi, skip):
        tlo, thi = sorted((t.a[0], t.b[0]))
        a, b = max(lo, tlo), min(hi, thi)
        # gap(h) = t(h) - s(h) - offset is linear on [a, b]
        slope = t.slope - s.slope
        g0 = t.at(a) - s.at(a) - center_offset
        if slope == 0:
            if abs(g0) < half_band:
                forbidden.append((a, b))
            continue
        x1 = a + (-half_band - g0) / slope
        x2 = a + (half_band - g0) / slope
        x1, x2 = sorted((x1, x2))
        x1, x2 = max(x1, a), min(x2, b)
        if x1 <= x2:
            forbidden.append((x1, x2))
    forbidden.sort()
    free = []
    cur = lo
    for a, b in forbidden:
        if a > cur:
            free.append((cur, a))
        cur = max(cur, b)
    if cur < hi:
        free.append((cur, hi))
    return free


# --- stabilization --------------------------------------------------------------

def _stretches(d: FrontDiagram, s: _Seg, cuts_on: dict) -> list[tuple[Fraction, Fraction]]:
    """Crossing-free stretches of s, shrunk to their middle half."""
    lo, hi = sorted((s.a[0], s.b[0]))
    if d.cylinder:
        # crossings are recorded modulo 1; lift every copy into s's span
        cuts = {lo, hi}
        for t in _others_over(d, lo, hi, {(s.comp, s.index)}):
            hit = _intersect(s, t)
            if hit and hit[0] == "point":
                cuts.add(hit[1][0])
    else:
        cuts = {lo, hi} | cuts_on.get(s.index, set())
    cuts = sorted(cuts)
    return [(a + (b - a) / 4, b - (b - a) / 4) for a, b in zip(cuts, cuts[1:])]


def _crossing_cuts(d: FrontDiagram, c: int) -> dict[int, set]:
    cuts_on: dict[int, set] = {}
    for x in d._analysis[1]:
        if x.over_component == c:
            cuts_on.setdefault(x.over_segment, set()).add(x.position[0])
        if x.under_component == c:
            cuts_on.setdefault(x.under_segment, set()).add(x.position[0])
    return cuts_on


def _windows(d: FrontDiagram, c: int):
    cuts_on = _crossing_cuts(d, c)
    return [(s, wlo, whi) for s in d.component_segments(c) for wlo, whi in _stretches(d, s, cuts_on)]


def _float_windows(d: FrontDiagram, c: int):
    """Like _windows, in floating point: (segment index, stretch index, wlo, whi)."""
    cuts_on = {i: sorted(float(h) for h in hs) for i, hs in _crossing_cuts(d, c).items()}
    f = d._float_segments[d._offsets[c]:d._offsets[c] + len(d.components[c])]
    rows = []
    for i, (ah, _, bh, _) in enumerate(f.tolist()):
        cuts = sorted({min(ah, bh), max(ah, bh), *cuts_on.get(i, ())})
        for k, (a, b) in enumerate(zip(cuts, cuts[1:])):
            w = b - a
            rows.append((i, k, a + w / 4, b - w / 4))
    return rows


def _window_gaps_exact(d: FrontDiagram, wins) -> list[Fraction]:
    gaps = []
    for s, wlo, whi in wins:
        found = [g for t in _others_over(d, wlo, whi, {(s.comp, s.index)})
                 if (g := _min_gap(s, t, wlo, whi)) is not None]
        gaps.append(min(found) if found else Fraction(1))
    return gaps


def _window_gap_float(d: FrontDiagram, c: int, row) -> float:
    """Vertical clearance between a window's line and every other segment."""
    i, _, wlo, whi = row
    f = d._float_segments
    own = d._offsets[c] + i
    sah, sav, sbh, sbv = f[own].tolist()
    ss = (sbv - sav) / (sbh - sah)
    gap = 1.0
    for j, (ah, av, bh, bv) in enumerate(d._float_rows):
        if j == own:
            continue
        lo, hi = (ah, bh) if ah < bh else (bh, ah)
        a, b = max(wlo, lo), min(whi, hi)
        if a > b:
            continue
        ts = (bv - av) / (bh - ah)
        ga = av + (a - ah) * ts - sav - (a - sah) * ss
        gb = av + (b - ah) * ts - sav - (b - sah) * ss
        if (ga > 0) != (gb > 0) or ga == 0 or gb == 0:
            return 0.0
        gap = min(gap, abs(ga), abs(gb))
    return gap


def stabilize(d: FrontDiagram, c: int, sign: int) -> FrontDiagram:
    """Insert a zigzag into component ``c``.

    sign=+1 adds two down cusps (tb-1, rot+1); sign=-1 two up cusps (tb-1, rot-1).
    The zigzag is placed in the widest crossing-free stretch of a segment and
    scaled to stay clear of every other strand, so no crossing is created.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    _require_valid(d)
    if d.cylinder:
        wins = _windows(d, c)
        gaps = [float(g) for g in _window_gaps_exact(d, wins)]
        scores = [min(float(whi - wlo), g) if g > 0 else -1.0 for (_, wlo, whi), g in zip(wins, gaps)]
    else:
        # choose the site in floating point, widest windows first (the score
        # never exceeds the width), then redo that one window exactly
        rows = sorted(_float_windows(d, c), key=lambda r: r[2] - r[3])
        gaps, scores = [], []
        for r in rows:
            if scores and r[3] - r[2] <= max(scores):
                break
            g = _window_gap_float(d, c, r)
            gaps.append(g)
            scores.append(min(r[3] - r[2], g) if g > 0 else -1.0)
    best = max(range(len(scores)), key=scores.__getitem__, default=None)
    if best is None or scores[best] <= 0:
        raise TemplateMismatch("no room for a stabilization zigzag")
    gap = gaps[best]
    if d.cylinder:
        s, wlo, whi = wins[best]
    else:
        i, k, _, _ = rows[best]
        s = d.component_segments(c)[i]
        stretches = _stretches(d, s, _crossing_cuts(d, c))
        wlo, whi = stretches[min(k, len(stretches) - 1)]
    # a quarter of the clearance, shaved so float rounding cannot overshoot
    amp = pow2_floor(Fraction(gap) / 4 * Fraction(999, 1000)) * sign
    step = (whi - wlo) / 3
    forward = s.dh > 0
    hs = [wlo, wlo + step, wlo + 2 * step, whi] if forward else [whi, whi - step, whi - 2 * step, wlo]
    x0 = (hs[0], s.at(hs[0]))
    p2 = (hs[1], s.at(hs[1]) - amp)
    p1 = (hs[2], s.at(hs[2]) + amp)
    x3 = (hs[3], s.at(hs[3]))
    comp = d.components[c]
    verts = list(comp.vertices)
    verts[s.index + 1:s.index + 1] = [x0, p1, p2, x3]
    out = d.replace_component(c, FrontComponent(tuple(verts), comp.winding))
    _require_valid(out)
    if len(out._analysis[1]) != len(d._analysis[1]):
        raise TemplateMismatch("stabilization zigzag created a crossing")
    return out
