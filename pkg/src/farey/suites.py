"""Acceptance suites shared by the test-suite and `farey check`.

Each suite returns a SuiteResult; comparisons are exact, so a single
mismatch fails the suite.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .contfrac import CFExpansion, cf_eval, det_identity, forbidden_scan, reverse
from .expansions import euclid_expand, in_region, nicf_expand, pqPQ_check, region_digit
from .field import QElem, cross_norm, embed, format_q, from_int, infinity, make, parse_q, q_add
from .geometry import (
    CELL_FACES,
    crosses_wall,
    ford,
    generation_counts,
    standard_cell,
    tangent,
    tangent_geometric,
    tessellate,
    wall_list,
)
from .graph import distance_from_infinity, distance_value, is_edge, is_geodesic_cf, lattice_disk
from .moebius import Matrix2, act
from .ring import EUCLIDEAN_D, RingElem, canonical_ab, nearest_div_rem, norm_ab, unit_pairs

DEFAULT_SEED = 20240601


@dataclass
class SuiteResult:
    number: int
    name: str
    passed: bool
    checked: int
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} criterion {self.number} ({self.name}): {self.checked} checks, " \
               f"{len(self.failures)} failures, {self.seconds:.2f}s"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures[:20],
            "seconds": round(self.seconds, 3),
            "detail": self.detail,
        }


def _finish(num, name, t0, checked, failures, detail=None, extra_ok=True) -> SuiteResult:
    return SuiteResult(num, name, extra_ok and not failures, checked, failures,
                       time.perf_counter() - t0, detail or {})


# -- shared samplers ----------------------------------------------------------

def denominators(d: int, max_norm: int) -> list[RingElem]:
    """Canonical q with 1 <= N(q) <= max_norm."""
    out = set()
    for a, b in lattice_disk(d, 0, 0, 1, max_norm):
        if norm_ab(d, a, b) >= 1:
            out.add(canonical_ab(d, a, b)[0])
    return [RingElem(d, *q) for q in sorted(out, key=lambda t: (norm_ab(d, *t), t))]


def points_with_denominators(d: int, max_norm: int, keep) -> list[QElem]:
    """Reduced p/q with N(q) <= max_norm whose embedding passes keep."""
    out = set()
    for q in denominators(d, max_norm):
        n = q.norm()
        for a, b in lattice_disk(d, 0, 0, 1, 4 * n):
            z = make(RingElem(d, a, b), q)
            if z.q == q and keep(z):
                out.add(z)
    return sorted(out)


def region_points(d: int, max_norm: int) -> list[QElem]:
    """Reduced P/Q in U_d with N(Q) <= max_norm."""
    return points_with_denominators(d, max_norm, lambda z: in_region(embed(z)))


def cell_points(d: int, max_norm: int) -> list[QElem]:
    """Reduced p/q with coordinates u + v*w, 0 <= u, v < 1."""
    from .field import coords

    def keep(z):
        u, v = coords(z)
        return 0 <= u < 1 and 0 <= v < 1

    return points_with_denominators(d, max_norm, keep)


def random_digit(rng: random.Random, d: int, lo: int = 0, hi: int = 10 ** 9, box: int = 5) -> RingElem:
    while True:
        a, b = rng.randint(-box, box), rng.randint(-box, box)
        if lo <= norm_ab(d, a, b) <= hi:
            return RingElem(d, a, b)


def random_point(rng: random.Random, d: int, max_norm: int) -> QElem:
    """A random finite point p/q with N(q) <= max_norm, shifted into U_d (d in 1, 2, 3)."""
    qs = denominators(d, max_norm)
    while True:
        q = rng.choice(qs)
        p = random_digit(rng, d, box=isqrt_bound(q.norm()))
        z = make(p, q)
        if z.q.norm() >= 2:
            return q_add(z, -region_digit(z)) if d in (1, 2, 3) else z


def isqrt_bound(n: int) -> int:
    return max(2, int(n ** 0.5) + 2)


def elements_of_norm(d: int, n: int) -> list[RingElem]:
    return [RingElem(d, a, b) for a, b in lattice_disk(d, 0, 0, 1, n) if norm_ab(d, a, b) == n]


# -- criteria -----------------------------------------------------------------

LONG_D7 = ((0, 0), (1, -1), (2, -1), (-2, 1), (-1, 2), (0, 1))
SHORT_D7 = ((1, 0), (0, -1), (-1, -2), (1, -2))


def v6() -> QElem:
    return example_cusps_d7()[-1]


def crit1(seed: int = DEFAULT_SEED) -> SuiteResult:
    t0 = time.perf_counter()
    fails = []
    target = v6()
    long_cf = CFExpansion.from_pairs(7, LONG_D7)
    short_cf = CFExpansion.from_pairs(7, SHORT_D7)
    for name, cf in (("long", long_cf), ("short", short_cf)):
        if cf_eval(cf) != target:
            fails.append(f"{name} expansion evaluates to {format_q(cf_eval(cf))}")
    verdict = is_geodesic_cf(long_cf)
    if verdict.geodesic:
        fails.append("6-edge walk reported geodesic")
    cert = distance_from_infinity(target)
    if cert.distance != 4 or not cert.slack_verified:
        fails.append(f"distance {cert.distance}, slack_verified {cert.slack_verified}")
    if not any(v.rule == "R5" for v in forbidden_scan(long_cf)):
        fails.append("forbidden_scan missed the 5-digit string")
    dt = time.perf_counter() - t0
    detail = {"distance": cert.distance, "path_count": cert.path_count,
              "witness": [format_q(w) for w in cert.witness], "seconds_limit": 5}
    return _finish(1, "worked d=7 example", t0, 5, fails, detail, extra_ok=dt < 5)


def crit2(seed: int = DEFAULT_SEED, max_norm: int = 60) -> SuiteResult:
    t0 = time.perf_counter()
    fails, n, counts = [], 0, {}
    for d in (1, 2, 3):
        pts = region_points(d, max_norm)
        counts[d] = len(pts)
        for z in pts:
            n += 1
            v = is_geodesic_cf(nicf_expand(z))
            if not (v.geodesic and v.verified):
                fails.append(f"d={d} {format_q(z)}: {v.to_json()['prefixes']}")
    return _finish(2, "nearest-integer expansions are geodesic", t0, n, fails, {"points": counts})


def crit3(seed: int = DEFAULT_SEED, max_norm: int = 20) -> SuiteResult:
    t0 = time.perf_counter()
    fails, n = [], 0
    for d in EUCLIDEAN_D:
        base = cell_points(d, max_norm)
        shifts = [RingElem(d, a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)]
        others = [infinity(d)] + [q_add(z, t) for z in base for t in shifts]
        rows_a, rows_b, exact = [], [], []
        for x in [infinity(d)] + base:
            fx = ford(x)
            for y in others:
                if x == y:
                    continue
                n += 1
                e = is_edge(x, y)
                fy = ford(y)
                tg = tangent(fx, fy) == "tangent"
                geo = tangent_geometric(fx, fy) == "tangent"
                if not e == tg == geo:
                    fails.append(f"d={d} {format_q(x)} {format_q(y)}: edge={e} tangent={tg} geometric={geo}")
                rows_a.append(x.key)
                rows_b.append(y.key)
                exact.append(e)
        batch = _kernels.is_edge_batch(d, np.array(rows_a), np.array(rows_b))
        bad = int(np.count_nonzero(batch != np.array(exact)))
        if bad:
            fails.append(f"d={d}: batched edge test disagrees on {bad} pairs")
    return _finish(3, "edges are exactly the tangent Ford sphere pairs", t0, n, fails,
                   {"kernel": _kernels.backend()})


def _rewrite_instances(rng, d):
    """Yield (rule, long digits, short digits)."""
    units = [RingElem(d, *u) for u in unit_pairs(d)]
    norm2 = elements_of_norm(d, 2)
    norm3 = elements_of_norm(d, 3)
    rules = ["R1", "R3"] + (["R2"] if norm2 else []) + (["R4"] if d in (2, 3, 11) else [])
    for rule in rules:
        for _ in range(200):
            pre = [random_digit(rng, d) for _ in range(rng.randint(0, 3))]
            a = random_digit(rng, d)
            if rule == "R1":
                u = rng.choice(units)
                yield rule, pre + [a, u], pre + [a + u.conj()]
            elif rule == "R2":
                eta = rng.choice(norm2)
                yield rule, pre + [a, eta, -eta.conj()], pre + [a + eta.conj()]
            elif rule == "R3":
                z = rng.choice(units)
                yield rule, pre + [a, 2 * z, -2 * z.conj()], pre + [a + z.conj(), -3 * z]
            else:
                eta = rng.choice(norm3)
                yield rule, pre + [a, eta, -eta.conj(), eta, -eta.conj()], pre + [a + eta.conj()]


def crit4(seed: int = DEFAULT_SEED) -> SuiteResult:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    fails, n, per = [], 0, {}
    for d in EUCLIDEAN_D:
        for rule, long_, short in _rewrite_instances(rng, d):
            n += 1
            per[f"{rule}/d={d}"] = per.get(f"{rule}/d={d}", 0) + 1
            lv, sv = cf_eval(CFExpansion(d, tuple(long_))), cf_eval(CFExpansion(d, tuple(short)))
            if lv != sv:
                fails.append(f"{rule} d={d}: {format_q(lv)} != {format_q(sv)}")
    return _finish(4, "rewriting identities", t0, n, fails, {"instances": per})


def crit5(seed: int = DEFAULT_SEED, samples: int = 100) -> SuiteResult:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    fails, n = [], 0
    for d in (1, 2, 3):
        got = 0
        while got < samples:
            z = random_point(rng, d, 400)
            digits = nicf_expand(z).digits
            if digits[0].ab == (0, 0):
                digits = digits[1:]  # the tail of a geodesic expansion is geodesic
            if not digits:
                continue
            cf = CFExpansion(d, digits)
            fwd = is_geodesic_cf(cf)
            got += 1
            n += 1
            if not (fwd.geodesic and fwd.verified):
                fails.append(f"d={d} {cf}: sample is not geodesic")
                continue
            back = reverse(cf)
            cert = distance_value(cf_eval(back), 1, len(back))
            ok = distance_value(cf_eval(back), 4, cert) == cert
            if cert != len(back) or not ok:
                fails.append(f"d={d} {back}: length {len(back)}, distance {cert}")
    return _finish(5, "reversal keeps expansions geodesic", t0, n, fails)


def crit6(seed: int = DEFAULT_SEED, samples: int = 100) -> SuiteResult:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    fails, n = [], 0
    for d in EUCLIDEAN_D:
        for _ in range(samples):
            L = rng.randint(1, 5)
            cf = CFExpansion(d, tuple(random_digit(rng, d, 18, 60, box=8) for _ in range(L)))
            n += 1
            cert = distance_from_infinity(cf_eval(cf))
            if not (cert.distance == L and cert.path_count == 1 and cert.slack_verified):
                fails.append(f"d={d} {cf}: distance {cert.distance}, paths {cert.path_count}")
    return _finish(6, "large digits give the unique geodesic", t0, n, fails)


def crit7(seed: int = DEFAULT_SEED, max_den: int = 40) -> SuiteResult:
    t0 = time.perf_counter()
    fails, n = [], 0
    seen = set()
    for d in (2, 7, 11):
        for b in range(1, max_den + 1):
            for a in range(1, b):
                y = Fraction(a, b)
                if (d, y) in seen:
                    continue
                seen.add((d, y))
                n += 1
                rep = pqPQ_check(y, d)
                if not rep.ok:
                    fails.append(f"d={d} y={y}: {rep.mismatch}")
    return _finish(7, "wall and Hecke convergents agree", t0, n, fails)


def random_edge(rng: random.Random, d: int) -> tuple[QElem, QElem]:
    """(A(inf), A(0)) for a random product A of 2 to 5 matrices S_a."""
    A = Matrix2.identity(d)
    for _ in range(rng.randint(2, 5)):
        A = A @ Matrix2.S(RingElem(d, rng.randint(-3, 3), rng.randint(-3, 3)))
    return act(A, infinity(d)), act(A, from_int(d, 0))


def crit8(seed: int = DEFAULT_SEED, samples: int = 10_000) -> SuiteResult:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    fails, n = [], 0
    for d in EUCLIDEAN_D:
        walls = wall_list(d)
        for _ in range(samples):
            e = random_edge(rng, d)
            n += 1
            if not is_edge(*e):
                fails.append(f"d={d}: sampler produced a non-edge {format_q(e[0])} {format_q(e[1])}")
            hit = [w.name for w in walls if crosses_wall(e, w)]
            if hit:
                fails.append(f"d={d} {format_q(e[0])} -> {format_q(e[1])} crosses {hit}")
    x, y = from_int(2, -1), from_int(2, 1)
    sanity = cross_norm(x, y) == 4 and any(crosses_wall((x, y), w) for w in wall_list(2))
    if not sanity:
        fails.append("the norm-4 pair (-1, 1) for d=2 was not detected as crossing")
    return _finish(8, "edges never cross walls", t0, n + 1, fails)


D2_PRINTED = ["(0,0)/(1,0)", "inf", "(1,0)/(1,0)", "(0,1)/(1,0)", "(1,1)/(1,0)", "(1,0)/(0,-1)",
              "(1,-1)/(0,-1)", "(1,1)/(2,0)", "(-1,1)/(1,1)", "(2,0)/(1,-1)", "(1,0)/(1,-1)", "(0,1)/(1,1)"]


def crit9(seed: int = DEFAULT_SEED) -> SuiteResult:
    t0 = time.perf_counter()
    fails, n = [], 0
    counts = {}
    for d in EUCLIDEAN_D:
        cell = standard_cell(d)
        counts[d] = len(cell.faces)
        n += 1
        if len(cell.faces) != CELL_FACES[d]:
            fails.append(f"d={d}: {len(cell.faces)} faces, expected {CELL_FACES[d]}")
        for f in cell.faces:
            for e in f.edges():
                n += 1
                if not is_edge(*e):
                    fails.append(f"d={d}: face edge {format_q(e[0])} {format_q(e[1])}")
    printed = {parse_q(2, s) for s in D2_PRINTED}
    n += 1
    if set(standard_cell(2).cusps) != printed or len(printed) != 12:
        fails.append("d=2 cusp list differs from the printed one")
    return _finish(9, "standard cells", t0, n, fails, {"faces": counts})


def example_cusps_d7() -> list[QElem]:
    # v1..v5 rewritten in the basis {1, w} (sqrt(-7) = 2w - 1), then v6
    out = []
    for num, den in (((0, 0), 1), ((1 - 1, 2), 4), ((7 - 3, 6), 14), ((25 - 11, 22), 46),
                     ((63 - 27, 54), 112), ((61 - 26, 52), 107)):
        out.append(make(RingElem(7, *num), RingElem(7, den)))
    return out


def crit10(seed: int = DEFAULT_SEED, generations: int = 6) -> SuiteResult:
    t0 = time.perf_counter()
    fails, n = [], 0
    t = tessellate(generations)
    counts = generation_counts(t)
    n += 1
    if counts[1] != (2, 8):
        fails.append(f"generation 1 gives {counts[1][0]} cells and {counts[1][1]} faces, expected 2 and 8")
    cusps = {c for cell in t.cells for c in cell.cusps}
    for k, v in enumerate(example_cusps_d7(), start=1):
        n += 1
        if v not in cusps:
            fails.append(f"v{k} = {format_q(v)} missing")
    for cell in t.cells:
        for face in cell.faces:
            for i in range(len(face)):
                n += 1
                a, b = cell.cusps[face[i]], cell.cusps[face[(i + 1) % len(face)]]
                if not is_edge(a, b):
                    fails.append(f"face edge {format_q(a)} {format_q(b)} is not an edge")
    dt = time.perf_counter() - t0
    return _finish(10, "d=7 tessellation", t0, n, fails,
                   {"per_generation": counts, "cells": len(t.cells)}, extra_ok=dt < 60)


def crit11(seed: int = DEFAULT_SEED, samples: int = 10_000, box: int = 10 ** 6) -> SuiteResult:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    fails, n = [], 0
    for d in EUCLIDEAN_D:
        for _ in range(samples):
            a = RingElem(d, rng.randint(-box, box), rng.randint(-box, box))
            b = RingElem(d, rng.randint(-box, box), rng.randint(-box, box))
            if not b:
                continue
            n += 1
            k, r = nearest_div_rem(a, b)
            if not (a == k * b + r and r.norm() < b.norm()):
                fails.append(f"d={d}: {a} = ({k})({b}) + ({r})")
            if a or b:
                cf = euclid_expand(make(a, b)) if a else CFExpansion(d, (RingElem(d, 0),))
                if not det_identity(cf):
                    fails.append(f"d={d}: determinant identity fails on {cf}")
    return _finish(11, "Euclidean division and determinant identity", t0, n, fails)


SUITES = {1: crit1, 2: crit2, 3: crit3, 4: crit4, 5: crit5, 6: crit6, 7: crit7,
          8: crit8, 9: crit9, 10: crit10, 11: crit11}


def run_suites(which="all", seed: int = DEFAULT_SEED) -> list[SuiteResult]:
    if which == "all":
        keys = sorted(SUITES)
    else:
        keys = [int(k) for k in str(which).split(",")]
        bad = [k for k in keys if k not in SUITES]
        if bad:
            raise ValueError(f"unknown suite(s) {bad}; expected 1..{max(SUITES)} or 'all'")
    return [SUITES[k](seed=seed) for k in keys]
