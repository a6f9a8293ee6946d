"""Expansion algorithms: nearest-integer maps, Euclidean digits, Hecke and wall maps."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from .contfrac import CFExpansion
from .field import ComplexRational, QElem, coords, from_coords, q_add, q_inv, ring_to_complex
from .ring import RingElem, conj_ab, mul_ab, nearest_div_rem, norm_ab

HALF = Fraction(1, 2)


# -- fundamental regions U_d ------------------------------------------------

def in_region(c: ComplexRational) -> bool:
    """Membership of x + y*sqrt(d)*i in the half-open region U_d (d in 1, 2, 3).

    U_1 and U_2 are the rectangles [-1/2, 1/2) x [-1/2, 1/2) in (x, y).
    U_3 is the hexagon |x| <= 1/2, |x + 3y| <= 1, |x - 3y| <= 1 with its
    left side, both bottom sides and the vertices (-1/2, -1/6), (0, -1/3);
    the right side and the two top sides are left out.
    """
    x, y = c.x, c.y
    if c.d in (1, 2):
        return -HALF <= x < HALF and -HALF <= y < HALF
    if c.d == 3:
        s1, s2 = x + 3 * y, x - 3 * y
        return -HALF <= x < HALF and -1 <= s1 < 1 and -1 < s2 <= 1
    raise ValueError(f"U_d is only defined for d in (1, 2, 3), got {c.d}")


def region_digit(z: QElem) -> RingElem:
    """The unique a in Z[w] with z - a in U_d."""
    d = z.d
    u, v = coords(z)
    ua, vb = floor(u + HALF), floor(v + HALF)
    hits = []
    for a in (ua - 1, ua, ua + 1):
        for b in (vb - 1, vb, vb + 1):
            x, y = ring_to_complex(d, u - a, v - b)
            if in_region(ComplexRational(d, x, y)):
                hits.append((a, b))
    if len(hits) != 1:
        raise ArithmeticError(f"region digit of {z} is not unique: {hits}")
    return RingElem(d, *hits[0])


def nicf_digit(z: QElem) -> RingElem:
    """a_d(z): the lattice point with 1/z - a in U_d."""
    if z.is_inf() or (z.pa == 0 and z.pb == 0):
        raise ValueError("the nearest-integer digit is undefined at 0 (expansion ends)")
    return region_digit(q_inv(z))


def nicf_expand(z: QElem) -> CFExpansion:
    """Nearest-integer expansion: a0 with z - a0 in U_d, then T_d(w) = 1/w - a_d(w)."""
    if z.d not in (1, 2, 3):
        raise ValueError(f"the nearest-integer map needs d in (1, 2, 3), got {z.d}")
    if z.is_inf():
        raise ValueError("inf has no expansion")
    a = region_digit(z)
    digits = [a]
    w = q_add(z, -a)
    while w.pa or w.pb:
        w = q_inv(w)
        a = region_digit(w)
        digits.append(a)
        w = q_add(w, -a)
    return CFExpansion(z.d, tuple(digits))


def euclid_expand(z: QElem) -> CFExpansion:
    """Expansion from repeated Euclidean division of numerator by denominator."""
    if z.is_inf():
        raise ValueError("inf has no expansion")
    d = z.d
    p, q = z.p, z.q
    digits = []
    while q:
        k, r = nearest_div_rem(p, q)
        digits.append(k)
        p, q = q, r
    return CFExpansion(d, tuple(digits))


# -- Hecke maps F_4, F_6 ----------------------------------------------------

@dataclass(frozen=True)
class HeckeNum:
    """The real number c*sqrt(ell/2)."""

    ell: int
    c: Fraction

    def __post_init__(self):
        if self.ell not in (4, 6):
            raise ValueError(f"ell must be 4 or 6, got {self.ell}")
        object.__setattr__(self, "c", Fraction(self.c))

    @property
    def m(self) -> int:
        return self.ell // 2

    def inv(self) -> HeckeNum:
        # 1/(c sqrt m) = (1/(c m)) sqrt m
        return HeckeNum(self.ell, 1 / (self.c * self.m))


def hecke_step(x: HeckeNum) -> tuple[int, HeckeNum]:
    """F_ell(x) = ceil_ell(1/x) - 1/x; the digit k stands for k*sqrt(ell/2)."""
    if not 0 <= x.c < 1:
        raise ValueError(f"x = {x.c}*sqrt({x.m}) is outside [0, sqrt({x.m}))")
    if x.c == 0:
        raise ValueError("F_ell(0) = 0: the expansion has ended")
    y = x.inv().c
    k = ceil(y)  # ceil on the sqrt(m) grid, intervals ((k-1)s, k s]
    return k, HeckeNum(x.ell, k - y)


def hecke_digits(x: HeckeNum, n: int | None = None) -> list[int]:
    out = []
    while x.c != 0 and (n is None or len(out) < n):
        k, x = hecke_step(x)
        out.append(k)
    return out


@dataclass(frozen=True)
class HeckeScalar:
    """r + s*sqrt(m) with integer r, s."""

    m: int
    r: int
    s: int

    def __mul__(self, o: HeckeScalar) -> HeckeScalar:
        return HeckeScalar(self.m, self.r * o.r + self.m * self.s * o.s, self.r * o.s + self.s * o.r)

    def __sub__(self, o: HeckeScalar) -> HeckeScalar:
        return HeckeScalar(self.m, self.r - o.r, self.s - o.s)

    def abs2(self) -> int:
        # only meaningful for pure scalars (one part zero)
        return self.r * self.r + self.m * self.s * self.s

    def is_int(self) -> bool:
        return self.s == 0

    def is_root_multiple(self) -> bool:
        return self.r == 0

    def to_json(self):
        return [self.r, self.s]


def hecke_convergents(x: HeckeNum, n: int | None = None) -> list[tuple[HeckeScalar, HeckeScalar]]:
    """[(p_k, q_k) for k = 0..n] from products of [[0, 1], [-1, b_k]]."""
    m = x.m
    zero, one = HeckeScalar(m, 0, 0), HeckeScalar(m, 1, 0)
    pp, p = HeckeScalar(m, -1, 0), zero
    qp, q = zero, one
    out = [(p, q)]
    for k in hecke_digits(x, n):
        b = HeckeScalar(m, 0, k)
        p, pp = b * p - pp, p
        q, qp = b * q - qp, q
        out.append((p, q))
    return out


# -- wall maps S_d ----------------------------------------------------------

WALL_ELL = {2: 4, 7: 4, 11: 6}


@dataclass(frozen=True)
class WallNum:
    """y*w_d (side "w") or y*conj(w_d) (side "wbar")."""

    d: int
    y: Fraction
    side: str = "w"

    def __post_init__(self):
        if self.d not in WALL_ELL:
            raise ValueError(f"wall maps need d in (2, 7, 11), got {self.d}")
        if self.side not in ("w", "wbar"):
            raise ValueError(f"side must be 'w' or 'wbar', got {self.side!r}")
        object.__setattr__(self, "y", Fraction(self.y))

    def direction(self) -> tuple[int, int]:
        return (0, 1) if self.side == "w" else conj_ab(self.d, 0, 1)

    def to_q(self) -> QElem:
        a, b = self.direction()
        return from_coords(self.d, self.y * a, self.y * b)


def _other(side: str) -> str:
    return "wbar" if side == "w" else "w"


def wall_step(z: WallNum) -> tuple[RingElem, WallNum]:
    """S_d(z) = ceil_d(1/z) - 1/z.

    1/(y w) = (1/(y N(w))) conj(w), and the ceiling keeps the direction,
    so the digit is ceil(1/(y N(w))) times conj(w) and the next point
    sits on the other side.
    """
    if not 0 <= z.y < 1:
        raise ValueError(f"y = {z.y} is outside [0, 1)")
    if z.y == 0:
        raise ValueError("S_d(0) = 0: the expansion has ended")
    nw = norm_ab(z.d, 0, 1)
    Y = 1 / (z.y * nw)
    k = ceil(Y)
    side = _other(z.side)
    da, db = (0, 1) if side == "w" else conj_ab(z.d, 0, 1)
    return RingElem(z.d, k * da, k * db), WallNum(z.d, k - Y, side)


def wall_digits(z: WallNum, n: int | None = None) -> list[RingElem]:
    out = []
    while z.y != 0 and (n is None or len(out) < n):
        b, z = wall_step(z)
        out.append(b)
    return out


def wall_pq(z: WallNum, n: int | None = None) -> list[tuple[RingElem, RingElem]]:
    """[(P_k, Q_k) for k = 0..n] from products of [[0, 1], [-1, B_k]]."""
    d = z.d
    pp, p = RingElem(d, -1), RingElem(d, 0)
    qp, q = RingElem(d, 0), RingElem(d, 1)
    out = [(p, q)]
    for b in wall_digits(z, n):
        p, pp = b * p - pp, p
        q, qp = b * q - qp, q
        out.append((p, q))
    return out


def wall_convergents(z: WallNum, n: int | None = None) -> list[QElem]:
    return [QElem.from_coprime(z.d, p.a, p.b, q.a, q.b) for p, q in wall_pq(z, n)]


@dataclass
class PQReport:
    d: int
    y: Fraction
    steps: int
    ok: bool
    mismatch: str | None = None

    def to_json(self):
        return {"d": self.d, "y": str(self.y), "steps": self.steps, "ok": self.ok, "mismatch": self.mismatch}


def pqPQ_check(y, d: int, n: int | None = None) -> PQReport:
    """Compare wall convergents of y*w_d with Hecke convergents of y*sqrt(ell/2).

    Odd k: P_k = p_k and Q_k = s*conj(w) where q_k = s*sqrt(m).
    Even k: P_k = s*w where p_k = s*sqrt(m), and Q_k = q_k.
    Moduli |P_k| = |p_k|, |Q_k| = |q_k| are compared as well.
    """
    y = Fraction(y)
    ell = WALL_ELL[d]
    small = hecke_convergents(HeckeNum(ell, y), n)
    big = wall_pq(WallNum(d, y, "w"), n)
    wbar = conj_ab(d, 0, 1)

    def fail(k, what):
        return PQReport(d, y, len(big) - 1, False, f"index {k}: {what}")

    if len(small) != len(big):
        return fail(min(len(small), len(big)), "expansions have different lengths")
    for k, ((p, q), (P, Q)) in enumerate(zip(small, big)):
        if k % 2:
            if not (p.is_int() and q.is_root_multiple()):
                return fail(k, "parity of p, q")
            if P.ab != (p.r, 0):
                return fail(k, f"P={P} but p={p.r}")
            if Q.ab != (q.s * wbar[0], q.s * wbar[1]):
                return fail(k, f"Q={Q} but q={q.s}*sqrt({q.m})")
        else:
            if not (p.is_root_multiple() and q.is_int()):
                return fail(k, "parity of p, q")
            if P.ab != (0, p.s):
                return fail(k, f"P={P} but p={p.s}*sqrt({p.m})")
            if Q.ab != (q.r, 0):
                return fail(k, f"Q={Q} but q={q.r}")
        if P.norm() != p.abs2() or Q.norm() != q.abs2():
            return fail(k, "moduli differ")
    return PQReport(d, y, len(big) - 1, True)
