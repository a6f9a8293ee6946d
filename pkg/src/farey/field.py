"""Points of Q(sqrt(-d)) together with infinity, kept as reduced fractions p/q."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .ring import (
    RingElem,
    canonical_ab,
    conj_ab,
    ext_gcd,
    exact_div,
    mul_ab,
    norm_ab,
)


class QElem:
    """A point of P^1(Q(sqrt(-d))) stored as a canonical reduced pair (p, q).

    Canonical means gcd(p, q) is a unit and q is the canonical associate
    (for infinity q = 0 and p = 1).  Equal values have equal fields.
    """

    __slots__ = ("d", "pa", "pb", "qa", "qb")

    def __init__(self, d, pa, pb, qa, qb):
        # raw constructor; use make() unless the pair is known canonical
        self.d = d
        self.pa, self.pb, self.qa, self.qb = pa, pb, qa, qb

    @classmethod
    def from_coprime(cls, d: int, pa: int, pb: int, qa: int, qb: int) -> QElem:
        """Normalize the unit of an already coprime pair."""
        if qa == 0 and qb == 0:
            return cls(d, 1, 0, 0, 0)
        (ca, cb), u = canonical_ab(d, qa, qb)
        if u != (1, 0):
            pa, pb = mul_ab(d, pa, pb, u[0], u[1])
        return cls(d, pa, pb, ca, cb)

    @property
    def p(self) -> RingElem:
        return RingElem(self.d, self.pa, self.pb)

    @property
    def q(self) -> RingElem:
        return RingElem(self.d, self.qa, self.qb)

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.pa, self.pb, self.qa, self.qb)

    def is_inf(self) -> bool:
        return self.qa == 0 and self.qb == 0

    def qnorm(self) -> int:
        return norm_ab(self.d, self.qa, self.qb)

    def is_integral(self) -> bool:
        return self.qa == 1 and self.qb == 0

    def __eq__(self, other):
        if not isinstance(other, QElem):
            return NotImplemented
        return self.d == other.d and self.key == other.key

    def __lt__(self, other):
        return self.key < other.key

    def __hash__(self):
        return hash((self.d,) + self.key)

    def __repr__(self):
        return f"QElem(d={self.d}, {format_q(self)})"

    def __str__(self):
        return format_q(self)


def make(p: RingElem | int, q: RingElem | int, d: int | None = None) -> QElem:
    """Reduced, unit-normalized p/q; q == 0 gives infinity."""
    if d is None:
        d = p.d if isinstance(p, RingElem) else q.d
    if isinstance(p, int):
        p = RingElem(d, p)
    if isinstance(q, int):
        q = RingElem(d, q)
    if p.d != q.d:
        raise ValueError(f"mixed discriminants {p.d} and {q.d}")
    if not p and not q:
        raise ValueError("0/0 is not a point")
    if not q:
        return QElem(d, 1, 0, 0, 0)
    if not p:
        return QElem(d, 0, 0, 1, 0)
    g = ext_gcd(p, q)[0]
    if g.a != 1 or g.b != 0:
        p, q = exact_div(p, g), exact_div(q, g)
    return QElem.from_coprime(d, p.a, p.b, q.a, q.b)


def infinity(d: int) -> QElem:
    return QElem(d, 1, 0, 0, 0)


def from_ring(x: RingElem) -> QElem:
    return QElem(x.d, x.a, x.b, 1, 0)


def from_int(d: int, n: int) -> QElem:
    return QElem(d, n, 0, 1, 0)


def q_add(x: QElem, alpha: RingElem) -> QElem:
    """x + alpha, with inf + alpha = inf."""
    if x.is_inf():
        return x
    d = x.d
    ta, tb = mul_ab(d, alpha.a, alpha.b, x.qa, x.qb)
    return QElem(d, x.pa + ta, x.pb + tb, x.qa, x.qb)


def q_inv(x: QElem) -> QElem:
    """1/x with 1/0 = inf and 1/inf = 0."""
    return QElem.from_coprime(x.d, x.qa, x.qb, x.pa, x.pb)


def q_neg(x: QElem) -> QElem:
    if x.is_inf():
        return x
    return QElem(x.d, -x.pa, -x.pb, x.qa, x.qb)


def q_conj(x: QElem) -> QElem:
    d = x.d
    return QElem.from_coprime(d, *conj_ab(d, x.pa, x.pb), *conj_ab(d, x.qa, x.qb))


def _finite(x: QElem, what: str):
    if x.is_inf():
        raise ValueError(f"{what} of infinity is undefined")


def q_mul(x: QElem, y: QElem) -> QElem:
    _finite(x, "product")
    _finite(y, "product")
    return make(x.p * y.p, x.q * y.q)


def q_sum(x: QElem, y: QElem) -> QElem:
    _finite(x, "sum")
    _finite(y, "sum")
    return make(x.p * y.q + y.p * x.q, x.q * y.q)


def q_sub(x: QElem, y: QElem) -> QElem:
    return q_sum(x, q_neg(y))


def q_div(x: QElem, y: QElem) -> QElem:
    return q_mul(x, q_inv(y))


@dataclass(frozen=True)
class ComplexRational:
    """The complex number x + y*sqrt(d)*i with rational x, y."""

    d: int
    x: Fraction
    y: Fraction

    def __sub__(self, other: ComplexRational) -> ComplexRational:
        return ComplexRational(self.d, self.x - other.x, self.y - other.y)

    def __add__(self, other: ComplexRational) -> ComplexRational:
        return ComplexRational(self.d, self.x + other.x, self.y + other.y)

    def abs2(self) -> Fraction:
        return self.x * self.x + self.d * self.y * self.y

    def to_complex(self) -> complex:
        return complex(float(self.x), float(self.y) * self.d ** 0.5)


def ring_to_complex(d: int, a, b) -> tuple[Fraction, Fraction]:
    """(x, y) with a + b*w = x + y*sqrt(d)*i; a, b may be rational."""
    if d % 4 == 3:
        return Fraction(a) + Fraction(b) / 2, Fraction(b) / 2
    return Fraction(a), Fraction(b)


def complex_to_ring(d: int, x, y) -> tuple[Fraction, Fraction]:
    """Inverse of ring_to_complex: coordinates in the basis {1, w}."""
    if d % 4 == 3:
        return Fraction(x) - Fraction(y), 2 * Fraction(y)
    return Fraction(x), Fraction(y)


def embed(z: QElem) -> ComplexRational:
    """Exact complex coordinates of a finite point."""
    _finite(z, "embedding")
    d = z.d
    n = norm_ab(d, z.qa, z.qb)
    a, b = mul_ab(d, z.pa, z.pb, *conj_ab(d, z.qa, z.qb))
    x, y = ring_to_complex(d, Fraction(a, n), Fraction(b, n))
    return ComplexRational(d, x, y)


def coords(z: QElem) -> tuple[Fraction, Fraction]:
    """Coordinates of a finite point in the basis {1, w}."""
    _finite(z, "coordinates")
    d = z.d
    n = norm_ab(d, z.qa, z.qb)
    a, b = mul_ab(d, z.pa, z.pb, *conj_ab(d, z.qa, z.qb))
    return Fraction(a, n), Fraction(b, n)


def from_coords(d: int, u, v) -> QElem:
    """The point u + v*w for rational u, v."""
    u, v = Fraction(u), Fraction(v)
    den = u.denominator * v.denominator
    return make(RingElem(d, int(u * den), int(v * den)), RingElem(d, den))


def unembed(c: ComplexRational) -> QElem:
    return from_coords(c.d, *complex_to_ring(c.d, c.x, c.y))


_Q_RE = re.compile(r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)(?:\s*/\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))?$")


def parse_q(d: int, text: str) -> QElem:
    """Parse "(a,b)/(c,e)" meaning (a + b*w)/(c + e*w); "(a,b)" and "inf" also work."""
    s = text.strip()
    if s.lower() in ("inf", "infinity", "oo"):
        return infinity(d)
    m = _Q_RE.match(s)
    if not m:
        raise ValueError(f"malformed element {text!r}; expected '(a,b)/(c,e)' or 'inf'")
    a, b = int(m.group(1)), int(m.group(2))
    c, e = (int(m.group(3)), int(m.group(4))) if m.group(3) is not None else (1, 0)
    if a == b == c == e == 0:
        raise ValueError("0/0 is not a point")
    return make(RingElem(d, a, b), RingElem(d, c, e))


def format_q(z: QElem) -> str:
    if z.is_inf():
        return "inf"
    return f"({z.pa},{z.pb})/({z.qa},{z.qb})"


def cross_det(x: QElem, y: QElem) -> tuple[int, int]:
    """Coordinates of p1*q2 - p2*q1."""
    d = x.d
    s = mul_ab(d, x.pa, x.pb, y.qa, y.qb)
    t = mul_ab(d, y.pa, y.pb, x.qa, x.qb)
    return s[0] - t[0], s[1] - t[1]


def cross_norm(x: QElem, y: QElem) -> int:
    """N(p1*q2 - p2*q1); equal to 1 exactly for Farey edges."""
    return norm_ab(x.d, *cross_det(x, y))


def to_json(z: QElem) -> list[str]:
    """JSON cusp form: decimal strings [p_a, p_b, q_a, q_b]."""
    return [str(t) for t in z.key]
