"""Numerical checks of the contactomorphism between J^1(S^1) and S^3 minus K0.

Points of J^1(S^1) are (q, p, z) with q stored in turns, q in [0, 1); the
angle used in every trigonometric call is theta = 2*pi*q, and tangent
vectors are written in (theta, p, z) components.  Points of S^3 are
(x1, y1, x2, y2).

    f(q, p, z) = lam * (p/2 sin(theta) - z cos(theta), cos(theta), sin(theta),
                        p/2 cos(theta) + z sin(theta)),
    lam = 1 / sqrt(1 + p^2/4 + z^2),

pulls x1 dy1 - y1 dx1 + x2 dy2 - y2 dx2 back to lam^2 (dz - p dtheta).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CurvesIntersect

TWO_PI = 2.0 * np.pi
IDENTITY_TOL = 1e-10
FD_STEP = 1e-6
FD_TOL = 1e-6
ROUNDING_TOL = 0.05
DISJOINT_TOL = 1e-6
POLE_CLEARANCE = 0.3

# projection poles tried in order; the first one far enough from both curves wins
DEFAULT_POLES = (
    (0.0, -1.0, 0.0, 0.0),
    (0.5, -0.5, 0.5, -0.5),
    (-0.6, 0.0, -0.8, 0.0),
    (0.0, 0.6, 0.0, -0.8),
    (0.3, 0.1, 0.4, -0.86),
)


def _lam(p, z):
    return 1.0 / np.sqrt(1.0 + p * p / 4.0 + z * z)


def map_f(q, p, z) -> np.ndarray:
    """f(q, p, z) for scalars or arrays; the last axis is (x1, y1, x2, y2)."""
    q, p, z = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (q, p, z)))
    th = TWO_PI * q
    s, c = np.sin(th), np.cos(th)
    lam = _lam(p, z)
    g = np.stack([p / 2 * s - z * c, c, s, p / 2 * c + z * s], axis=-1)
    return lam[..., None] * g


def jacobian_f(q, p, z) -> np.ndarray:
    """Df with columns d/dtheta, d/dp, d/dz; shape (..., 4, 3)."""
    q, p, z = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (q, p, z)))
    th = TWO_PI * q
    s, c = np.sin(th), np.cos(th)
    lam = _lam(p, z)
    zero = np.zeros_like(p)
    g = np.stack([p / 2 * s - z * c, c, s, p / 2 * c + z * s], axis=-1)
    g_th = np.stack([p / 2 * c + z * s, -s, c, -p / 2 * s + z * c], axis=-1)
    g_p = np.stack([s / 2, zero, zero, c / 2], axis=-1)
    g_z = np.stack([-c, zero, zero, s], axis=-1)
    lam3 = lam ** 3
    lam_p = (-lam3 * p / 4)[..., None]
    lam_z = (-lam3 * z)[..., None]
    L = lam[..., None]
    cols = [L * g_th, L * g_p + lam_p * g, L * g_z + lam_z * g]
    return np.stack(cols, axis=-1)


def jacobian_f_fd(q, p, z, step: float = FD_STEP) -> np.ndarray:
    """Central finite-difference Jacobian, same layout as :func:`jacobian_f`."""
    dq = step / TWO_PI
    cols = [
        (map_f(q + dq, p, z) - map_f(q - dq, p, z)) / (2 * step),
        (map_f(q, p + step, z) - map_f(q, p - step, z)) / (2 * step),
        (map_f(q, p, z + step) - map_f(q, p, z - step)) / (2 * step),
    ]
    return np.stack(cols, axis=-1)


def alpha0(x: np.ndarray, v: np.ndarray) -> np.ndarray:
    """x1 dy1 - y1 dx1 + x2 dy2 - y2 dx2 at x, applied to v."""
    return x[..., 0] * v[..., 1] - x[..., 1] * v[..., 0] + x[..., 2] * v[..., 3] - x[..., 3] * v[..., 2]


def frame(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """The sections e1, e2 of the contact planes at x."""
    x1, y1, x2, y2 = np.moveaxis(x, -1, 0)
    e1 = np.stack([-y2, -x2, y1, x1], axis=-1)
    e2 = np.stack([x2, -y2, -x1, y1], axis=-1)
    return e1, e2


def sphere_residual(q, p, z) -> np.ndarray:
    return np.abs(np.linalg.norm(map_f(q, p, z), axis=-1) - 1.0)


def pullback_residual(q, p, z, v) -> np.ndarray:
    """|alpha0(Df v) - lam^2 (dz - p dtheta)(v)| for v = (v_theta, v_p, v_z)."""
    v = np.asarray(v, dtype=float)
    x = map_f(q, p, z)
    J = jacobian_f(q, p, z)
    lhs = alpha0(x, np.einsum("...ij,...j->...i", J, v))
    lam = _lam(np.asarray(p, dtype=float), np.asarray(z, dtype=float))
    rhs = lam ** 2 * (v[..., 2] - np.asarray(p) * v[..., 0])
    return np.abs(lhs - rhs)


def _coordinate_change_residual(th, x, y, v, k: int) -> np.ndarray:
    """Residual of dz - p dtheta = cos(k th) dx - sin(k th) dy under
    p = -k(x sin(k th) + y cos(k th)), z = x cos(k th) - y sin(k th);
    v = (v_theta, v_x, v_y)."""
    ck, sk = np.cos(k * th), np.sin(k * th)
    p = -k * (x * sk + y * ck)
    # differentials of z along v, from the chain rule
    dz = (-k * x * sk - k * y * ck) * v[..., 0] + ck * v[..., 1] - sk * v[..., 2]
    lhs = dz - p * v[..., 0]
    rhs = ck * v[..., 1] - sk * v[..., 2]
    return np.abs(lhs - rhs)


def coordinate_change_residual_2q(th, x, y, v) -> np.ndarray:
    """(theta, x, y) with p = -2x sin 2theta - 2y cos 2theta, z = x cos 2theta - y sin 2theta."""
    return _coordinate_change_residual(th, x, y, v, 2)


def coordinate_change_residual_q(th, u, w, v) -> np.ndarray:
    """(theta, u, v) with p = -u sin theta - v cos theta, z = u cos theta - v sin theta."""
    return _coordinate_change_residual(th, u, w, v, 1)


def pushforward_dp(q, p, z) -> tuple[np.ndarray, np.ndarray]:
    """(Df d/dp, (lam^2/2)(e2 - z e1)) evaluated independently."""
    J = jacobian_f(q, p, z)
    x = map_f(q, p, z)
    e1, e2 = frame(x)
    lam = _lam(np.asarray(p, dtype=float), np.asarray(z, dtype=float))
    z = np.asarray(z, dtype=float)
    return J[..., :, 1], (lam ** 2 / 2)[..., None] * (e2 - z[..., None] * e1)


def pushforward_dp_residual(q, p, z) -> np.ndarray:
    a, b = pushforward_dp(q, p, z)
    return np.linalg.norm(a - b, axis=-1)


# --- linking numbers -------------------------------------------------------------

def pole_rotation(pole) -> np.ndarray:
    """A rotation in SO(4) taking the unit vector ``pole`` to (0, 0, 0, 1)."""
    n = np.asarray(pole, dtype=float)
    n = n / np.linalg.norm(n)
    skip = int(np.argmax(np.abs(n)))
    others = [np.eye(4)[i] for i in range(4) if i != skip]
    Q, _ = np.linalg.qr(np.column_stack([n] + others))
    if Q[:, 0] @ n < 0:
        Q = -Q
    R = np.vstack([Q[:, 1], Q[:, 2], Q[:, 3], Q[:, 0]])
    if np.linalg.det(R) < 0:
        R[0] = -R[0]
    return R


def stereographic(points: np.ndarray, pole=(0.0, 0.0, 0.0, 1.0)) -> np.ndarray:
    """Project points of S^3 to R^3 from ``pole``."""
    y = np.asarray(points, dtype=float) @ pole_rotation(pole).T
    return y[..., :3] / (1.0 - y[..., 3:4])


def gauss_linking(c1: np.ndarray, c2: np.ndarray, chunk: int = 128) -> tuple[float, int]:
    """Linking number of two closed polylines in R^3, given as (N, 3) vertex arrays.

    Each pair of straight segments contributes its exact share of the Gauss
    integral (a signed solid angle), so the sum is the Gauss integral of the
    polylines themselves.
    """
    a = np.asarray(c1, dtype=float)
    b = np.asarray(c2, dtype=float)
    if len(a) < 3 or len(b) < 3:
        raise ValueError("closed polylines need at least 3 vertices")
    check_disjoint(a, b)
    bw = np.vstack([b, b[:1]])
    aw = np.vstack([a, a[:1]])
    total = 0.0
    for i in range(0, len(a), chunk):
        rows = aw[i:i + chunk + 1]
        # D[r, s] = b_s - a_r; the four corner vectors of a segment pair are
        # neighbouring entries of this grid
        D = [bw[None, :, k] - rows[:, None, k] for k in range(3)]
        N = np.sqrt(D[0] ** 2 + D[1] ** 2 + D[2] ** 2)
        u = [d[:-1, :-1] for d in D]
        y = [d[:-1, 1:] for d in D]
        w = [d[1:, :-1] for d in D]
        x = [d[1:, 1:] for d in D]
        un, yn, wn, xn = N[:-1, :-1], N[:-1, 1:], N[1:, :-1], N[1:, 1:]

        def dot(s, t):
            return s[0] * t[0] + s[1] * t[1] + s[2] * t[2]

        trip = (u[0] * (w[1] * x[2] - w[2] * x[1]) + u[1] * (w[2] * x[0] - w[0] * x[2])
                + u[2] * (w[0] * x[1] - w[1] * x[0]))
        ux = dot(x, u)
        d1 = un * wn * xn + dot(u, w) * xn + dot(w, x) * un + ux * wn
        d2 = un * yn * xn + dot(u, y) * xn + dot(y, x) * un + ux * yn
        total += float(np.sum(np.arctan2(trip, d1)) + np.sum(np.arctan2(trip, d2)))
    est = total / TWO_PI
    return est, int(round(est))


def _segment_distances(p0, p1, q0, q1) -> np.ndarray:
    """Distances between segment pairs [p0, p1] and [q0, q1], row-wise."""
    d1, d2, r = p1 - p0, q1 - q0, p0 - q0
    a = np.einsum("ij,ij->i", d1, d1)
    e = np.einsum("ij,ij->i", d2, d2)
    f = np.einsum("ij,ij->i", d2, r)
    c = np.einsum("ij,ij->i", d1, r)
    b = np.einsum("ij,ij->i", d1, d2)
    den = a * e - b * b
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(den > 1e-300, np.clip((b * f - c * e) / den, 0, 1), 0.0)
        t = np.where(e > 1e-300, (b * s + f) / e, 0.0)
        s = np.where(t < 0, np.where(a > 1e-300, np.clip(-c / a, 0, 1), 0.0), s)
        s = np.where(t > 1, np.where(a > 1e-300, np.clip((b - c) / a, 0, 1), 0.0), s)
    t = np.clip(t, 0, 1)
    return np.linalg.norm(p0 + d1 * s[:, None] - q0 - d2 * t[:, None], axis=1)


def polyline_distance(a: np.ndarray, b: np.ndarray, chunk: int = 512) -> float:
    """Minimum distance between two closed polylines."""
    a1, b1 = np.roll(a, -1, 0), np.roll(b, -1, 0)
    slack = max(np.linalg.norm(a1 - a, axis=1).max(), np.linalg.norm(b1 - b, axis=1).max())
    vmin, close = np.inf, []
    for i in range(0, len(a), chunk):
        d = np.sqrt(((a[i:i + chunk, None, :] - b[None, :, :]) ** 2).sum(-1))
        vmin = min(vmin, float(d.min()))
        ii, jj = np.nonzero(d <= vmin + 2 * slack)
        close.append((ii + i, jj))
    # a segment pair at distance t has vertices within t + 2 * slack of each other
    ii = np.concatenate([c[0] for c in close])
    jj = np.concatenate([c[1] for c in close])
    n, m = len(a), len(b)
    pi = np.concatenate([ii, ii, (ii - 1) % n, (ii - 1) % n])
    pj = np.concatenate([jj, (jj - 1) % m, jj, (jj - 1) % m])
    dist = _segment_distances(a[pi], a1[pi], b[pj], b1[pj])
    return float(min(vmin, dist.min()))


def check_disjoint(a: np.ndarray, b: np.ndarray):
    if polyline_distance(a, b) < DISJOINT_TOL:
        raise CurvesIntersect("curves come closer than the disjointness floor")


def midpoint_linking(c1: np.ndarray, c2: np.ndarray) -> float:
    """Plain midpoint double sum of the Gauss integral (independent cross-check)."""
    a, b = np.asarray(c1, float), np.asarray(c2, float)
    da, db = np.roll(a, -1, 0) - a, np.roll(b, -1, 0) - b
    ma, mb = a + da / 2, b + db / 2
    r = ma[:, None, :] - mb[None, :, :]
    num = np.einsum("ijk,ijk->ij", r, np.cross(da[:, None, :], db[None, :, :]))
    return float(np.sum(num / np.linalg.norm(r, axis=-1) ** 3) / (4 * np.pi))


def sample_curve(fn, segments: int) -> np.ndarray:
    """fn maps an array of angles theta in [0, 2 pi) to points of S^3."""
    th = TWO_PI * np.arange(segments) / segments
    return fn(th)


def k0(th):
    return np.stack([np.cos(th), 0 * th, 0 * th, np.sin(th)], axis=-1)


def k0_parallel(th):
    return np.stack([np.cos(th), np.cos(th), -np.sin(th), np.sin(th)], axis=-1) / np.sqrt(2.0)


def hopf_fibre(p0: float, z0: float):
    return lambda th: map_f(th / TWO_PI, p0, z0)


def admissible_poles(curves, poles=DEFAULT_POLES, count: int | None = None) -> list[tuple]:
    """Candidate poles (normalized) staying POLE_CLEARANCE away from every curve."""
    out = []
    for pole in poles:
        n = np.asarray(pole, float) / np.linalg.norm(pole)
        if all(np.linalg.norm(c - n, axis=-1).min() > POLE_CLEARANCE for c in curves):
            out.append(tuple(float(x) for x in n))
            if count is not None and len(out) == count:
                break
    return out


def choose_pole(curves, poles=DEFAULT_POLES):
    found = admissible_poles(curves, poles, 1)
    if not found:
        raise CurvesIntersect("every candidate pole lies close to a curve")
    return found[0]


def linking_on_sphere(fn1, fn2, segments: int, pole=None) -> tuple[float, int, tuple]:
    if segments < 64:
        raise ValueError("need at least 64 segments per curve")
    c1, c2 = sample_curve(fn1, segments), sample_curve(fn2, segments)
    if pole is None:
        pole = choose_pole([c1, c2])
    else:
        n = np.asarray(pole, float) / np.linalg.norm(pole)
        if min(np.linalg.norm(c - n, axis=-1).min() for c in (c1, c2)) < 1e-3:
            raise CurvesIntersect(f"projection pole {tuple(pole)} lies on a curve")
    est, rounded = gauss_linking(stereographic(c1, pole), stereographic(c2, pole))
    return est, rounded, tuple(pole)


# --- report -----------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    samples: int
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.max_residual < self.tolerance)

    def to_dict(self):
        return {"name": self.name, "samples": self.samples, "max_residual": self.max_residual,
                "tolerance": self.tolerance, "passed": self.passed}


@dataclass
class LinkingResult:
    name: str
    segments: int
    pole: tuple
    estimate: float
    rounded: int
    expected: int

    @property
    def distance(self) -> float:
        return abs(self.estimate - self.rounded)

    @property
    def passed(self) -> bool:
        return self.rounded == self.expected and self.distance < ROUNDING_TOL

    def to_dict(self):
        return {"name": self.name, "segments": self.segments, "pole": list(self.pole),
                "estimate": self.estimate, "rounded": self.rounded, "expected": self.expected,
                "distance": self.distance, "passed": self.passed}


@dataclass
class GeometryReport:
    seed: int
    checks: list[CheckResult] = field(default_factory=list)
    linking: list[LinkingResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and all(x.passed for x in self.linking)

    def to_dict(self):
        return {"schema": "v1", "seed": self.seed, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks],
                "linking": [x.to_dict() for x in self.linking]}

    def table(self) -> str:
        lines = [f"{'check':<34} {'n':>6} {'max residual':>13} {'tol':>8}  ok"]
        for c in self.checks:
            lines.append(f"{c.name:<34} {c.samples:>6} {c.max_residual:>13.3e} {c.tolerance:>8.0e}  "
                         f"{'yes' if c.passed else 'NO'}")
        lines.append(f"{'linking pair':<34} {'segs':>6} {'estimate':>13} {'want':>8}  ok")
        for x in self.linking:
            lines.append(f"{x.name:<34} {x.segments:>6} {x.estimate:>13.6f} {x.expected:>8}  "
                         f"{'yes' if x.passed else 'NO'}")
        return "\n".join(lines) + "\n"


HOPF_PAIRS = (((0.0, 0.0), (1.0, 0.0)), ((0.0, 0.0), (0.0, 1.0)), ((2.0, -1.0), (-1.0, 0.5)))


def verify_hopf_fibre_linking(a: tuple, b: tuple, segments: int = 512, pole=None) -> LinkingResult:
    if tuple(a) == tuple(b):
        raise CurvesIntersect("a fibre meets itself")
    est, rounded, pole = linking_on_sphere(hopf_fibre(*a), hopf_fibre(*b), segments, pole)
    return LinkingResult(f"hopf {tuple(a)} vs {tuple(b)}", segments, pole, est, rounded, -1)


def verify_k0_linking(segments: int = 512, pole=None) -> LinkingResult:
    est, rounded, pole = linking_on_sphere(k0, k0_parallel, segments, pole)
    return LinkingResult("K0 vs K0'", segments, pole, est, rounded, -1)


def identity_checks(samples: int, seed: int, tol: float = IDENTITY_TOL) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    q = rng.random(samples)
    p = rng.uniform(-10, 10, samples)
    z = rng.uniform(-10, 10, samples)
    v = rng.normal(size=(samples, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    x = rng.uniform(-10, 10, samples)
    y = rng.uniform(-10, 10, samples)
    th = TWO_PI * q
    nfd = min(samples, 200)
    fd = np.abs(jacobian_f(q[:nfd], p[:nfd], z[:nfd]) - jacobian_f_fd(q[:nfd], p[:nfd], z[:nfd])).max()
    img = map_f(q, p, z)
    return [
        CheckResult("sphere constraint", samples, float(sphere_residual(q, p, z).max()), tol),
        CheckResult("image avoids K0", samples,
                    float(np.max(np.abs(1.0 - np.hypot(img[:, 1], img[:, 2]) / _lam(p, z)))), tol),
        CheckResult("jacobian vs finite differences", nfd, float(fd), FD_TOL),
        CheckResult("pullback of alpha0", samples, float(pullback_residual(q, p, z, v).max()), tol),
        CheckResult("coordinate change (2q)", samples,
                    float(coordinate_change_residual_2q(th, x, y, v).max()), tol),
        CheckResult("coordinate change (q)", samples,
                    float(coordinate_change_residual_q(th, x, y, v).max()), tol),
        CheckResult("pushforward of d/dp", samples, float(pushforward_dp_residual(q, p, z).max()), tol),
    ]


def verify_geometry(samples: int = 10000, seed: int = 0, segments: int = 512,
                    tol: float = IDENTITY_TOL) -> GeometryReport:
    report = GeometryReport(seed, identity_checks(samples, seed, tol))
    report.linking.append(verify_k0_linking(segments))
    for a, b in HOPF_PAIRS:
        report.linking.append(verify_hopf_fibre_linking(a, b, segments))
    return report
