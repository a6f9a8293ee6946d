"""Finite continued fractions over Z[w_d].

Digits [a1, ..., an] denote a1 + 1/(a2 + ... + 1/an), which is
S_{a1} ... S_{an}(inf) for S_a = [[a, 1], [1, 0]].  The walk
inf -> p1/q1 -> ... -> pn/qn through the convergents is a walk in the
Farey graph, and conversely every such walk from inf comes from digits.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .field import QElem, cross_norm, format_q, infinity
from .ring import EUCLIDEAN_D, RingElem, conj_ab, format_ring, mul_ab, norm_ab


@dataclass(frozen=True)
class CFExpansion:
    d: int
    digits: tuple[RingElem, ...]

    def __post_init__(self):
        if self.d not in EUCLIDEAN_D:
            raise ValueError(f"unsupported d={self.d}")
        if not self.digits:
            raise ValueError("a continued fraction needs at least one digit")
        object.__setattr__(self, "digits", tuple(self.digits))
        if any(a.d != self.d for a in self.digits):
            raise ValueError("digits have mixed discriminants")

    @classmethod
    def from_pairs(cls, d: int, pairs) -> CFExpansion:
        return cls(d, tuple(RingElem(d, int(a), int(b)) for a, b in pairs))

    def __len__(self):
        return len(self.digits)

    def pairs(self) -> list[list[int]]:
        return [a.to_json() for a in self.digits]

    def to_json(self) -> dict:
        return {"d": self.d, "digits": self.pairs()}

    def __str__(self):
        head, *tail = [format_ring(a) for a in self.digits]
        return f"[{head}; {', '.join(tail)}]" if tail else f"[{head}]"

    def prefix(self, k: int) -> CFExpansion:
        return CFExpansion(self.d, self.digits[:k])


def parse_cf(text: str, d: int | None = None) -> CFExpansion:
    """Accept {"d": D, "digits": [[a,b],...]} or a bare [[a,b],...] list (needs d)."""
    obj = json.loads(text)
    if isinstance(obj, dict):
        if d is not None and obj.get("d", d) != d:
            raise ValueError(f"cf is for d={obj['d']} but d={d} was requested")
        d = obj["d"]
        obj = obj["digits"]
    if d is None:
        raise ValueError("d is required for a bare digit list")
    return CFExpansion.from_pairs(d, obj)


def convergent_pairs(cf: CFExpansion) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Raw (p_k, q_k) coordinate pairs for k = 0..n, with (p_0, q_0) = (1, 0)."""
    d = cf.d
    pp, qp = (0, 0), (1, 0)  # p_{-1}, q_{-1}
    p, q = (1, 0), (0, 0)  # p_0, q_0 (infinity)
    out = [(p, q)]
    for a in cf.digits:
        t = mul_ab(d, a.a, a.b, *p)
        u = mul_ab(d, a.a, a.b, *q)
        p, pp = (t[0] + pp[0], t[1] + pp[1]), p
        q, qp = (u[0] + qp[0], u[1] + qp[1]), q
        out.append((p, q))
    return out


def convergents(cf: CFExpansion) -> list[QElem]:
    """p_k/q_k for k = 1..n; consecutive pairs have unit cross determinant."""
    d = cf.d
    return [QElem.from_coprime(d, *p, *q) for p, q in convergent_pairs(cf)[1:]]


def cf_eval(cf: CFExpansion) -> QElem:
    return convergents(cf)[-1]


def cf_to_walk(cf: CFExpansion) -> list[QElem]:
    return [infinity(cf.d)] + convergents(cf)


def det_identity(cf: CFExpansion) -> bool:
    """p_{k-1} q_k - p_k q_{k-1} == (-1)^(k-1) for every k = 1..n."""
    d = cf.d
    cp = convergent_pairs(cf)
    for k in range(1, len(cp)):
        (p0, q0), (p1, q1) = cp[k - 1], cp[k]
        s = mul_ab(d, *p0, *q1)
        t = mul_ab(d, *p1, *q0)
        if (s[0] - t[0], s[1] - t[1]) != ((-1) ** (k - 1), 0):
            return False
    return True


def walk_to_cf(vertices: list[QElem]) -> CFExpansion:
    """Digits of the walk inf -> v1 -> ... -> vn (consecutive vertices adjacent)."""
    if len(vertices) < 2 or not vertices[0].is_inf():
        raise ValueError("a walk must start at inf and have at least one edge")
    d = vertices[0].d
    for i, (x, y) in enumerate(zip(vertices, vertices[1:])):
        if cross_norm(x, y) != 1:
            raise ValueError(f"step {i}: {format_q(x)} -> {format_q(y)} is not an edge")
    # M = S_{a1}...S_{ak} = [[p_k, p_{k-1}], [q_k, q_{k-1}]], det = (-1)^k
    p, pp, q, qp = (1, 0), (0, 0), (0, 0), (1, 0)
    digits = []
    for k, v in enumerate(vertices[1:]):
        # M^-1 v = (q_{k-1} x - p_{k-1} y) / (-q_k x + p_k y) up to the det sign
        x, y = (v.pa, v.pb), (v.qa, v.qb)
        s1, s2 = mul_ab(d, *qp, *x), mul_ab(d, *pp, *y)
        t1, t2 = mul_ab(d, *q, *x), mul_ab(d, *p, *y)
        num = (s1[0] - s2[0], s1[1] - s2[1])
        den = (t2[0] - t1[0], t2[1] - t1[1])
        alpha = QElem.from_coprime(d, *num, *den)
        if not alpha.is_integral():
            raise ValueError(f"step {k}: digit {format_q(alpha)} is not in Z[w]")
        a = (alpha.pa, alpha.pb)
        digits.append(RingElem(d, *a))
        t = mul_ab(d, *a, *p)
        u = mul_ab(d, *a, *q)
        p, pp = (t[0] + pp[0], t[1] + pp[1]), p
        q, qp = (u[0] + qp[0], u[1] + qp[1]), q
    return CFExpansion(d, tuple(digits))


def reverse(cf: CFExpansion) -> CFExpansion:
    return CFExpansion(cf.d, cf.digits[::-1])


def _neg_conj(d, x: RingElem) -> tuple[int, int]:
    a, b = conj_ab(d, x.a, x.b)
    return -a, -b


_R5_BASE = ((1, -1), (2, -1), (-2, 1), (-1, 2), (0, 1))


def r5_candidates() -> list[tuple[tuple[int, int], ...]]:
    """The d=7 five-digit pattern and its images under negation and conjugation."""
    out = []
    for neg in (False, True):
        for cj in (False, True):
            img = []
            for a, b in _R5_BASE:
                if cj:
                    a, b = conj_ab(7, a, b)
                if neg:
                    a, b = -a, -b
                img.append((a, b))
            img = tuple(img)
            if img not in out:
                out.append(img)
    return out


@lru_cache(maxsize=None)
def r5_patterns() -> tuple[tuple[tuple[int, int], ...], ...]:
    """Patterns enabled for the d=7 scan.

    Each candidate is kept only if the distance oracle confirms that
    [0; pattern] is shorter to reach than its length.
    """
    from .graph import distance_from_infinity

    keep = []
    for pat in r5_candidates():
        cf = CFExpansion.from_pairs(7, ((0, 0),) + pat)
        cert = distance_from_infinity(cf_eval(cf))
        if cert.slack_verified and cert.distance < len(cf):
            keep.append(pat)
    return tuple(keep)


@dataclass(frozen=True)
class Violation:
    position: int  # 1-based digit index
    rule: str

    def to_json(self):
        return {"position": self.position, "rule": self.rule}


def forbidden_scan(cf: CFExpansion) -> list[Violation]:
    """Local digit patterns that rule out a geodesic expansion.

    Only digits after the first are scanned.  An empty result does not
    mean the expansion is geodesic.
    """
    d = cf.d
    ds = cf.digits
    n = len(ds)
    out = []
    for i in range(1, n):
        a = ds[i]
        na = a.norm()
        nxt = ds[i + 1] if i + 1 < n else None
        if na == 1:
            out.append(Violation(i + 1, "R1"))
        if na == 2 and nxt is not None and nxt.ab == _neg_conj(d, a):
            out.append(Violation(i + 1, "R2"))
        if na == 4 and nxt is not None and a.a % 2 == 0 and a.b % 2 == 0:
            z = (a.a // 2, a.b // 2)
            if norm_ab(d, *z) == 1:
                c = conj_ab(d, *z)
                if nxt.ab == (-2 * c[0], -2 * c[1]):
                    out.append(Violation(i + 1, "R3"))
        if d in (2, 3, 11) and na == 3 and i + 3 < n:
            m = _neg_conj(d, a)
            if ds[i + 1].ab == m and ds[i + 2] == a and ds[i + 3].ab == m:
                out.append(Violation(i + 1, "R4"))
        if d == 7 and i + 5 <= n:
            window = tuple(x.ab for x in ds[i:i + 5])
            if window in r5_patterns():
                out.append(Violation(i + 1, "R5"))
    return out
