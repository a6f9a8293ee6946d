"""The Farey graph E_d: adjacency, bounded neighbours and a distance oracle.

Vertices are points of Q(sqrt(-d)) plus infinity; p1/q1 and p2/q2 are
adjacent iff N(p1 q2 - p2 q1) = 1.  Distances from infinity are found by
a breadth-first search from the target over vertices whose denominator
norm stays below a cap.  The cap is a search bound, not a theorem, so
each certificate also reports whether a fourfold larger cap agrees.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor, isqrt

from .contfrac import CFExpansion, cf_to_walk, convergents
from .field import QElem, cross_norm, format_q, infinity, to_json
from .ring import RingElem, conj_ab, ext_gcd, mul_ab, norm_ab, unit_pairs


def is_edge(v1: QElem, v2: QElem) -> bool:
    return cross_norm(v1, v2) == 1


# -- raw integer helpers (hot loops work on 4-tuples (pa, pb, qa, qb)) ------

def _canon(d, pa, pb, qa, qb):
    if qa == 0 and qb == 0:
        return (1, 0, 0, 0)
    best = None
    for ua, ub in unit_pairs(d):
        if d % 4 == 3:
            k = (d + 1) // 4
            qa2, qb2 = qa * ua - k * qb * ub, qa * ub + qb * ua + qb * ub
        else:
            qa2, qb2 = qa * ua - d * qb * ub, qa * ub + qb * ua
        if best is None or (qa2, qb2) > best[2:]:
            pa2, pb2 = mul_ab(d, pa, pb, ua, ub)
            best = (pa2, pb2, qa2, qb2)
    return best


def _canon_pm(d, pa, pb, qa, qb):
    # units are +-1 for d in (2, 7, 11)
    if qa == 0 and qb == 0:
        return (1, 0, 0, 0)
    if qa > 0 or (qa == 0 and qb > 0):
        return (pa, pb, qa, qb)
    return (-pa, -pb, -qa, -qb)


def _canonizer(d):
    return _canon if d in (1, 3) else _canon_pm


def lattice_disk(d: int, A: int, B: int, D: int, R: int):
    """All (a, b) with N((a - A/D) + (b - B/D) w) <= R/D (D > 0)."""
    lim = R * D
    out = []
    if d % 4 == 3:
        ymax = isqrt(4 * lim // d)
        blo = -((-(B - ymax)) // D)
        bhi = (B + ymax) // D
        for b in range(blo, bhi + 1):
            Y = b * D - B
            rem = 4 * lim - d * Y * Y
            if rem < 0:
                continue
            s = isqrt(rem)
            xlo = -((s + Y) // 2)  # ceil((-s - Y)/2)
            xhi = (s - Y) // 2
            alo = -((-(A + xlo)) // D)
            ahi = (A + xhi) // D
            for a in range(alo, ahi + 1):
                out.append((a, b))
    else:
        ymax = isqrt(lim // d)
        blo = -((-(B - ymax)) // D)
        bhi = (B + ymax) // D
        for b in range(blo, bhi + 1):
            Y = b * D - B
            rem = lim - d * Y * Y
            if rem < 0:
                continue
            s = isqrt(rem)
            alo = -((-(A - s)) // D)
            ahi = (A + s) // D
            for a in range(alo, ahi + 1):
                out.append((a, b))
    return out


def _bezout(d, pa, pb, qa, qb):
    """(r0, s0) with p*s0 - r0*q = 1."""
    g, u, v = ext_gcd(RingElem(d, pa, pb), RingElem(d, qa, qb))
    if g.ab != (1, 0):
        raise ValueError(f"({pa},{pb})/({qa},{qb}) is not reduced")
    return (-v.a, -v.b), (u.a, u.b)


def _neighbors_raw(d, key, cap, canon):
    pa, pb, qa, qb = key
    (ra, rb), (sa, sb) = _bezout(d, pa, pb, qa, qb)
    D = norm_ab(d, qa, qb)
    # centre of the t-disk is -s0/q = -s0*conj(q)/N(q)
    ca, cb = mul_ab(d, sa, sb, *conj_ab(d, qa, qb))
    out = []
    for ta, tb in lattice_disk(d, -ca, -cb, D, cap):
        x = mul_ab(d, ta, tb, pa, pb)
        y = mul_ab(d, ta, tb, qa, qb)
        out.append(canon(d, ra + x[0], rb + x[1], sa + y[0], sb + y[1]))
    return out


def neighbors_bounded(v: QElem, norm_cap: int, region=None) -> list[QElem]:
    """All neighbours r/s of v with N(s) <= norm_cap, sorted.

    For v = inf the neighbours are Z[w]; a region (a0, a1, b0, b1) bounding
    the coordinates of a + b*w must be given, and inf itself is skipped.
    For finite v the result includes inf (N(0) = 0).
    """
    d = v.d
    if v.is_inf():
        if region is None:
            raise ValueError("inf has infinitely many neighbours; pass a coordinate region")
        a0, a1, b0, b1 = region
        return [QElem(d, a, b, 1, 0) for a in range(a0, a1 + 1) for b in range(b0, b1 + 1)]
    out = {_k for _k in _neighbors_raw(d, v.key, int(norm_cap), _canonizer(d))}
    return sorted(QElem(d, *k) for k in out)


# -- distance oracle ----------------------------------------------------------

def _dist2_units(d, key):
    """Number of integers a adjacent to r/s (a = (r - u)/s for units u)."""
    pa, pb, qa, qb = key
    n = norm_ab(d, qa, qb)
    ca, cb = conj_ab(d, qa, qb)
    hits = []
    for ua, ub in unit_pairs(d):
        x, y = mul_ab(d, pa - ua, pb - ub, ca, cb)
        if x % n == 0 and y % n == 0:
            hits.append((x // n, y // n))
    return hits


@dataclass
class GeodesicCertificate:
    target: QElem
    distance: int
    witness: list[QElem]
    search_bound: int
    slack_verified: bool
    slack: Fraction = Fraction(1)
    path_count: int | None = None
    levels: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "target": format_q(self.target),
            "distance": self.distance,
            "witness": [format_q(w) for w in self.witness],
            "search_bound": self.search_bound,
            "slack": str(self.slack),
            "slack_verified": self.slack_verified,
            "path_count": self.path_count,
        }


def _euclid_upper(x: QElem) -> int:
    from .expansions import euclid_expand

    return len(euclid_expand(x))


def _search(d, key, cap, upper, full):
    """Level-by-level search from the target toward inf.

    Returns (distance, levels, parents, hit_level); levels[k] maps each
    vertex at distance k from the target to its number of shortest walks.
    distance is None if no walk of length <= upper was found inside the cap.
    """
    canon = _canonizer(d)
    level = {key: 1}  # vertex -> number of shortest walks to the target
    levels = [level]
    parents = {key: ()}
    seen = {key}
    k = 0
    while True:
        if any(norm_ab(d, v[2], v[3]) == 1 for v in level):
            return k + 1, levels, parents, k
        if any(_dist2_units(d, v) for v in level):
            return k + 2, levels, parents, k
        # nothing at levels <= k, so any walk found later has >= k+3 edges;
        # the upper-bound walk already settles ties unless a witness is wanted
        if k + 3 > upper or (k + 3 == upper and not full):
            return None, levels, parents, k
        nxt = {}
        for v in sorted(level):
            cv = level[v]
            for w in _neighbors_raw(d, v, cap, canon):
                if w[2] == 0 and w[3] == 0:
                    continue
                if w in nxt:
                    nxt[w] += cv
                    parents[w].append(v)
                elif w not in seen:
                    nxt[w] = cv
                    parents[w] = [v]
        if not nxt:
            return None, levels, parents, k
        seen.update(nxt)
        level = nxt
        levels.append(level)
        k += 1


def _witness(d, key, dist, levels, parents, hit):
    """Lexicographically least shortest walk inf -> ... -> target."""
    inf = (1, 0, 0, 0)
    if dist == hit + 1:
        ints = sorted(v for v in levels[hit] if norm_ab(d, v[2], v[3]) == 1)
        first = ints[0]
        walk = [inf, first]
        count = sum(levels[hit][v] for v in ints)
    else:
        good = {v: _dist2_units(d, v) for v in levels[hit]}
        good = {v: h for v, h in good.items() if h}
        ints = sorted({(a, b, 1, 0) for h in good.values() for a, b in h})
        first = ints[0]
        w2 = min(v for v, h in good.items() if first[:2] in h)
        walk = [inf, first, w2]
        count = sum(levels[hit][v] * len(h) for v, h in good.items())
    while walk[-1] != key:
        walk.append(min(parents[walk[-1]]))
    return [QElem(d, *v) for v in walk], count


def _cap_for(x: QElem, slack) -> int:
    return max(1, floor(Fraction(slack) * x.qnorm()))


@lru_cache(maxsize=200000)
def _distance_cached(d, key, cap, upper):
    dist, *_ = _search(d, key, cap, upper, full=False)
    return upper if dist is None else dist


def _translate_key(d, key):
    # distances from inf are invariant under z -> z + t, t in Z[w]
    pa, pb, qa, qb = key
    n = norm_ab(d, qa, qb)
    x, y = mul_ab(d, pa, pb, *conj_ab(d, qa, qb))
    ta, tb = floor(Fraction(x, n)), floor(Fraction(y, n))
    t = mul_ab(d, ta, tb, qa, qb)
    return (pa - t[0], pb - t[1], qa, qb)


def distance_value(x: QElem, slack=1, upper: int | None = None) -> int:
    """Distance only (no witness), memoised on the translation class of x."""
    if x.is_inf():
        return 0
    if x.qnorm() == 1:
        return 1
    if upper is None:
        upper = _euclid_upper(x)
    return _distance_cached(x.d, _translate_key(x.d, x.key), _cap_for(x, slack), upper)


def distance_from_infinity(x: QElem, slack=1, verify: bool = True) -> GeodesicCertificate:
    """Exact distance inf -> x inside the subgraph of denominators N(s) <= slack*N(q).

    The Euclidean expansion gives the starting upper bound.  With verify,
    the distance is recomputed with a four times larger cap and
    slack_verified records whether the two agree.
    """
    d = x.d
    slack = Fraction(slack)
    if slack < 1:
        raise ValueError("slack must be at least 1")
    if x.is_inf():
        return GeodesicCertificate(x, 0, [x], 0, True, slack, 1)
    cap = _cap_for(x, slack)
    if x.qnorm() == 1:
        return GeodesicCertificate(x, 1, [infinity(d), x], cap, True, slack, 1)
    from .expansions import euclid_expand

    ecf = euclid_expand(x)
    upper = len(ecf)
    dist, levels, parents, hit = _search(d, x.key, cap, upper, full=True)
    if dist is None or dist > upper:
        # the Euclidean walk leaves the capped subgraph and is shorter
        cert = GeodesicCertificate(x, upper, cf_to_walk(ecf), cap, False, slack, None)
    else:
        witness, count = _witness(d, x.key, dist, levels, parents, hit)
        cert = GeodesicCertificate(x, dist, witness, cap, False, slack, count)
    cert.levels = [len(lv) for lv in levels]
    if verify:
        cert.slack_verified = distance_value(x, 4 * slack, cert.distance) == cert.distance
    return cert


@dataclass
class PrefixVerdict:
    length: int
    distance: int
    slack_verified: bool

    @property
    def geodesic(self) -> bool:
        return self.length == self.distance


@dataclass
class GeodesicVerdict:
    cf: CFExpansion
    prefixes: list[PrefixVerdict]

    @property
    def geodesic(self) -> bool:
        return all(p.geodesic for p in self.prefixes)

    @property
    def verified(self) -> bool:
        return all(p.slack_verified for p in self.prefixes)

    def to_json(self) -> dict:
        return {
            "cf": self.cf.to_json(),
            "geodesic": self.geodesic,
            "slack_verified": self.verified,
            "prefixes": [
                {"length": p.length, "distance": p.distance, "slack_verified": p.slack_verified}
                for p in self.prefixes
            ],
        }


def is_geodesic_cf(cf: CFExpansion, slack=1) -> GeodesicVerdict:
    """Compare each prefix length with the oracle distance of its convergent.

    The walk of the prefix itself is an upper bound, so the search only has
    to rule out shorter walks.
    """
    slack = Fraction(slack)
    out = []
    for k, v in enumerate(convergents(cf), start=1):
        if v.is_inf():
            out.append(PrefixVerdict(k, 0, True))
            continue
        up = min(k, _euclid_upper(v))
        dist = distance_value(v, slack, up)
        ok = distance_value(v, 4 * slack, dist) == dist
        out.append(PrefixVerdict(k, dist, ok))
    return GeodesicVerdict(cf, out)


LARGE_DIGIT_NORM = 18  # least integer norm with |a| >= 4.17209


def large_digit_guarantee(cf: CFExpansion) -> bool:
    """True when every digit after the first has norm >= 18.

    In that regime the expansion is the unique geodesic one, so no search
    is needed.  The leading digit only translates the walk and is exempt.
    """
    return all(a.norm() >= LARGE_DIGIT_NORM for a in cf.digits[1:])


def gd_member(v: QElem, d: int | None = None) -> bool:
    """Membership in G_d: Z[w] plus the cosets w/2 (d = 2, 7) or w/3, w/2, 2w/3 (d = 11)."""
    d = v.d if d is None else d
    if d not in (2, 7, 11):
        raise ValueError(f"G_d is defined for d in (2, 7, 11), got {d}")
    if v.d != d:
        raise ValueError("point and d disagree")
    if v.is_inf():
        return False
    from .field import coords

    u, w = coords(v)
    if u.denominator != 1:
        return False
    fracs = {Fraction(0), Fraction(1, 2)} if d in (2, 7) else {
        Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)}
    return w - floor(w) in fracs


def sufficiency_search(d: int, length: int, box: int = 1, slack=1) -> tuple[int, list[CFExpansion]]:
    """Expansions with no forbidden pattern that are still not geodesic.

    Enumerates [0; a_2, ..., a_length] with nonzero digits whose
    coordinates lie in [-box, box].  Returns the number of pattern-free
    expansions examined and the ones the oracle rejects.
    """
    from itertools import product

    from .contfrac import forbidden_scan

    digits = [RingElem(d, a, b) for a in range(-box, box + 1) for b in range(-box, box + 1) if (a, b) != (0, 0)]
    zero = RingElem(d, 0, 0)
    clean, bad = 0, []
    for tail in product(digits, repeat=length - 1):
        cf = CFExpansion(d, (zero,) + tail)
        if forbidden_scan(cf):
            continue
        clean += 1
        if not is_geodesic_cf(cf, slack).geodesic:
            bad.append(cf)
    return clean, bad


def shortest_path_count(x: QElem, slack=1) -> int | None:
    return distance_from_infinity(x, slack).path_count


def certificate_json(cert: GeodesicCertificate) -> dict:
    out = cert.to_json()
    out["target_json"] = to_json(cert.target)
    return out
