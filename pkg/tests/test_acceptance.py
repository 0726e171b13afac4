"""The ten acceptance criteria, each at its stated tolerance and time budget.

Every criterion prints one PASS/FAIL line (also collected into the pytest
terminal summary).  Times cover the checks themselves; generating the random
inputs is reported separately.
"""

import random
import time
from dataclasses import replace
from math import gcd

from conftest import ACCEPTANCE_LINES
from legcable.classify import Outcome, classify_cable, destabilization_witness
from legcable.construct import EYE, construct, link_invariants_of
from legcable.fronts import FrontDiagram, classical_invariants, stabilize
from legcable.geometry import (
    HOPF_PAIRS, ROUNDING_TOL, admissible_poles, hopf_fibre, k0, k0_parallel, linking_on_sphere,
    sample_curve, verify_geometry,
)
from legcable.jet import (
    JetKnotInvariants, TransverseInvariants, classify_jet, jet_max_tb,
    jet_to_sphere, normalize_jet, sphere_to_jet, transverse_range, transverse_range_bruteforce,
    transverse_realizable,
)
from legcable.ranges import (
    LinkInvariants, max_tb2, mountain_range, normalize, peaks, realizable, unknot_realizable,
)
from sampling import coprime_slope, realizable_tuple, unknot


def report(n, ok, detail, elapsed, budget):
    status = "PASS" if ok else "FAIL"
    line = f"[criterion {n:>2}] {status}  {detail}  ({elapsed:.2f} s, budget {budget} s)"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# 1 ------------------------------------------------------------------------------

def test_criterion_01_invariant_formulas():
    rng = random.Random(1)
    seqs = [[rng.choice((1, -1)) for _ in range(rng.randint(1, 4))] for _ in range(1000)]

    def check():
        base = FrontDiagram.plane(EYE)
        if classical_invariants(base, 0) != (-1, 0):
            return 0
        good = 0
        for seq in seqs:
            d, tb, rot, ok = base, -1, 0, True
            for s in seq:
                d = stabilize(d, 0, s)
                tb, rot = tb - 1, rot + s
                ok = ok and classical_invariants(d, 0) == (tb, rot)
            good += ok
        return good

    good, dt = timed(check)
    report(1, good == 1000 and dt < 1.0, f"{good}/1000 stabilization sequences tracked exactly", dt, 1)


# 2 ------------------------------------------------------------------------------

def construction_targets():
    out = []
    for p in (1, 2, 3, -1):
        for q in (2, 3, 4, 5):
            if gcd(p, q) != 1:
                continue
            for m in range(1, 7):
                top = max_tb2(p, q, m)
                for rot1 in range(-m + 1, m, 2):
                    for pk in peaks(p, q, m, rot1):
                        out.append(normalize(LinkInvariants(p, q, -m, rot1, top, pk.rot2_peak)))
    return out


def test_criterion_02_construction_oracle():
    targets = construction_targets()

    def check():
        bad = []
        for inv in targets:
            got = link_invariants_of(construct(inv))
            if got != (inv.tb1, inv.rot1, inv.tb2, inv.rot2, inv.q):
                bad.append(inv.as_tuple())
        return bad

    bad, dt = timed(check)
    report(2, not bad and dt < 10.0, f"{len(targets) - len(bad)}/{len(targets)} peak constructions match", dt, 10)


# 3 ------------------------------------------------------------------------------

def test_criterion_03_max_tb():
    rng = random.Random(3)
    pos, neg = set(), set()
    while len(pos) < 20:
        p, q = coprime_slope(rng, pmax=12, qmax=9)
        if p > 0:
            pos.add((p, q, rng.randint(1, 6)))
    while len(neg) < 50:
        p, q = coprime_slope(rng, pmax=12, qmax=9)
        if p < 0:
            neg.add((p, q, rng.randint(1, 8)))

    def brute(p, q, m):
        rot1 = 0 if m % 2 else 1
        mr = mountain_range(p, q, m, rot1, max_tb2(p, q, m) - 3)
        # nothing lies above the claimed maximum (direct role assignment)
        above = any(realizable(normalize(LinkInvariants(p, q, -m, rot1, mr.max_tb2 + d, r)), allow_swap=False)[0]
                    for d in range(1, 4) for r in range(-3 * q - 3 * abs(p), 3 * q + 3 * abs(p) + 1))
        return max(t for _, t in mr.points), above

    def check():
        bad = []
        for p, q, m in sorted(pos):
            b, above = brute(p, q, m)
            if not (max_tb2(p, q, m) == p * q - p - q == b) or above:
                bad.append((p, q, m))
        for p, q, m in sorted(neg):
            b, above = brute(p, q, m)
            if not (max_tb2(p, q, m) == p * q - max(m * p + q, 0) == b) or above:
                bad.append((p, q, m))
        return bad

    bad, dt = timed(check)
    report(3, not bad and dt < 1.0, f"20 positive + 50 negative triples, mismatches {bad}", dt, 1)


# 4 ------------------------------------------------------------------------------

def test_criterion_04_peak_sets():
    def check():
        bad, count = [], 0
        for ap in range(2, 16):
            p = -ap
            for q in range(2, ap):
                if gcd(p, q) != 1:
                    continue
                want = set()
                lcount = 0
                while lcount * q < -(p + q):
                    want |= {p + (2 * lcount + 1) * q, -(p + (2 * lcount + 1) * q)}
                    lcount += 1
                for m in (1, 2, 3):
                    for rot1 in range(-m + 1, m, 2):
                        count += 1
                        if {pk.rot2_peak for pk in peaks(p, q, m, rot1)} != want:
                            bad.append((p, q, m, rot1))
        for ap in range(1, 16):
            p = -ap
            for q in range(ap + 1, 17):
                if gcd(p, q) != 1:
                    continue
                a = q // ap
                want = set()
                lcount = 0
                while lcount * ap < q - ap:
                    v = -q + (2 * lcount + 1) * ap
                    want |= {v, -v}
                    lcount += 1
                for m in range(2 * a + 1, 2 * a + 4):
                    rot1 = (m + 1) % 2
                    count += 1
                    if {pk.rot2_peak for pk in peaks(p, q, m, rot1)} != want:
                        bad.append((p, q, m, rot1))
        return bad, count

    (bad, count), dt = timed(check)
    report(4, not bad and dt < 1.0, f"{count} peak sets compared, mismatches {bad[:5]}", dt, 1)


# 5 ------------------------------------------------------------------------------

def test_criterion_05_closure_and_parity():
    rng = random.Random(5)
    t0 = time.perf_counter()
    tuples = [realizable_tuple(rng) for _ in range(100000)]
    gen = time.perf_counter() - t0

    def check():
        bad = 0
        for inv in tuples:
            ok = realizable(inv)[0]
            ok = ok and (inv.tb1 + inv.rot1) % 2 == 1 and (inv.tb2 + inv.rot2) % 2 == 1
            if inv.q >= 2:
                ok = ok and realizable(replace(inv, tb2=inv.tb2 - 1, rot2=inv.rot2 + 1))[0]
                ok = ok and realizable(replace(inv, tb2=inv.tb2 - 1, rot2=inv.rot2 - 1))[0]
            bad += not ok
        return bad

    bad, dt = timed(check)
    report(5, bad == 0 and dt < 5.0, f"100000 tuples, {bad} violations (generation {gen:.2f} s)", dt, 5)


# 6 ------------------------------------------------------------------------------

def test_criterion_06_classifier():
    rng = random.Random(6)
    # a small parameter space so that equal tuples occur and transitivity is exercised
    pool = []
    while len(pool) < 10000:
        inv = realizable_tuple(rng, depth=2)
        if abs(inv.p) <= 4 and inv.q <= 4 and inv.m <= 3:
            pool.append(inv)
    triples = []
    for _ in range(10000):
        a = rng.choice(pool)
        # a third of the triples start from an equal pair so transitivity has work to do
        b = normalize(replace(a, normalized=False)) if rng.random() < 1 / 3 else rng.choice(pool)
        c = rng.choice((a, b, rng.choice(pool)))
        triples.append((a, b, c))

    def check():
        errors = []
        for a in pool:
            if classify_cable(a, a).outcome is not Outcome.ISOTOPIC:
                errors.append(("reflexive", a.as_tuple()))
        iso_pairs = 0
        for a, b, c in triples:
            ab = classify_cable(a, b).outcome
            if ab is not classify_cable(b, a).outcome:
                errors.append(("symmetric", a.as_tuple(), b.as_tuple()))
            if ab is Outcome.ISOTOPIC:
                iso_pairs += 1
                if classify_cable(b, c).outcome is Outcome.ISOTOPIC and \
                        classify_cable(a, c).outcome is not Outcome.ISOTOPIC:
                    errors.append(("transitive", a.as_tuple(), c.as_tuple()))
        for a in pool:
            if a.q < 2:
                continue
            v = classify_cable(a, a)
            w = v.witness
            src = a.swapped() if w.swapped else a
            if not w.entries:
                errors.append(("complete", a.as_tuple()))
            for e in w.entries:
                if e.peak.rot2_peak + e.pos_stabs - e.neg_stabs != src.rot2 or \
                        e.peak.tb2 - e.pos_stabs - e.neg_stabs != src.tb2:
                    errors.append(("sound", a.as_tuple()))
            # a point inside the valley between adjacent peaks lies in both cones
            rots = sorted({pk.rot2_peak for pk in peaks(src.p, src.q, src.m, src.rot1)})
            s = max_tb2(src.p, src.q, src.m) - src.tb2
            for lo, hi in zip(rots, rots[1:]):
                if lo < src.rot2 < hi and s >= max(src.rot2 - lo, hi - src.rot2):
                    if len({e.peak.rot2_peak for e in w.entries} & {lo, hi}) < 2:
                        errors.append(("valley", a.as_tuple()))
        return errors, iso_pairs

    (errors, iso), dt = timed(check)
    report(6, not errors and dt < 5.0,
           f"10000 tuples, 10000 triples ({iso} isotopic pairs), {len(errors)} violations", dt, 5)


# 7 ------------------------------------------------------------------------------

def test_criterion_07_jet_translation():
    rng = random.Random(7)
    knots = []
    while len(knots) < 10000:
        n, p = rng.randint(-6, 6), rng.randint(-9, 9)
        if gcd(n, p) != 1:
            continue
        top = jet_max_tb(abs(n), p * (1 if n >= 0 else -1)) if abs(n) >= 2 else -1
        knots.append(JetKnotInvariants(n, p, top - rng.randint(-1, 5), rng.randint(-5, 5)))

    # oracle verdicts through the sphere, computed outside the timed block
    want = [[classify_cable(jet_to_sphere(k), jet_to_sphere(b)).outcome for b in (k, knots[i - 1])]
            for i, k in enumerate(knots)]

    def check():
        bad = 0
        for i, k in enumerate(knots):
            bad += sphere_to_jet(jet_to_sphere(k)) != normalize_jet(k)
            for b, w in zip((k, knots[i - 1]), want[i]):
                bad += classify_jet(k, b).outcome is not w
        bad += jet_max_tb(2, 3) != 5
        bad += jet_max_tb(2, -3) != -2
        return bad

    bad, dt = timed(check)
    report(7, bad == 0 and dt < 1.0, f"10000 knots round-trip and classify, {bad} mismatches", dt, 1)


# 8 ------------------------------------------------------------------------------

def test_criterion_08_geometry_identities():
    rep, dt = timed(lambda: verify_geometry(10000, seed=8, segments=64))
    ids = {c.name: c for c in rep.checks}
    names = ["sphere constraint", "pullback of alpha0", "coordinate change (2q)", "coordinate change (q)",
             "pushforward of d/dp"]
    worst = max(ids[n].max_residual for n in names)
    ok = all(ids[n].passed and ids[n].tolerance == 1e-10 for n in names) and dt < 5.0
    report(8, ok, f"five identities over 10000 samples, worst residual {worst:.2e}", dt, 5)


# 9 ------------------------------------------------------------------------------

def test_criterion_09_linking():
    pairs = [("K0/K0'", k0, k0_parallel)] + [
        (f"hopf {a}/{b}", hopf_fibre(*a), hopf_fibre(*b)) for a, b in HOPF_PAIRS]

    def check():
        rows = []
        for name, f1, f2 in pairs:
            poles = admissible_poles([sample_curve(f1, 512), sample_curve(f2, 512)], count=3)
            for pole in poles:
                for seg in (512, 1024, 2048):
                    est, rounded, _ = linking_on_sphere(f1, f2, seg, pole)
                    rows.append((name, len(poles), est, rounded))
        return rows

    rows, dt = timed(check)
    worst = max(abs(est + 1) for *_, est, _ in rows)
    ok = len(rows) == 36 and all(n == 3 and r == -1 and abs(est + 1) < ROUNDING_TOL for _, n, est, r in rows)
    report(9, ok and dt < 30.0, f"{len(rows)} estimates (4 pairs x 3 poles x 3 resolutions), max |lk+1| {worst:.1e}",
           dt, 30)


# 10 -----------------------------------------------------------------------------

def sl_union_bruteforce(p, q, sl1, lowest):
    """sl2 values >= lowest over every L1 with self-linking sl1, by projecting mountain ranges."""
    out = set()
    m_min = (1 - sl1) // 2
    # deliberately wider than the window the library searches
    for mm in range(m_min, m_min + 3 * q + 8 - sl1):
        rot1 = -mm - sl1
        if not unknot_realizable(-mm, rot1):
            continue
        top = max_tb2(p, q, mm)
        best = max(top - pk.rot2_peak for pk in peaks(p, q, mm, rot1))
        depth = max(0, (best - lowest) // 2 + 1)
        out |= {v for v in transverse_range_bruteforce(p, q, mm, rot1, top - depth) if v >= lowest}
    return out


def test_criterion_10_transverse():
    rng = random.Random(10)
    cases = []
    while len(cases) < 1000:
        p, q = coprime_slope(rng, pmax=9, qmax=6)
        m, rot1 = unknot(rng, mmax=6)
        cases.append((p, q, m, rot1))

    def check():
        bad = []
        for p, q, m, rot1 in cases:
            tr = transverse_range(p, q, m, rot1)
            brute = transverse_range_bruteforce(p, q, m, rot1, tr.floor)
            if set(tr.values) != brute or any(s % 2 != 1 for s in brute):
                bad.append((p, q, m, rot1))
                continue
            sl1 = -m - rot1
            lowest = tr.sl_max - 6
            union = sl_union_bruteforce(p, q, sl1, lowest)
            for sl2 in range(lowest, max(union) + 4):
                if transverse_realizable(TransverseInvariants(p, q, sl2, sl1)) != (sl2 in union):
                    bad.append((p, q, m, rot1, sl2))
        return bad

    bad, dt = timed(check)
    report(10, not bad and dt < 10.0, f"1000 cases, mismatches {bad[:3]}", dt, 10)
