"""Exact arithmetic in the ring of integers Z[w] of Q(sqrt(-d)).

For d = 1, 2 the generator is w = sqrt(-d); for d = 3, 7, 11 it is
w = (1 + sqrt(-d))/2.  Elements are stored as integer pairs (a, b)
meaning a + b*w, so every operation below is exact.
"""
from __future__ import annotations

import re
from fractions import Fraction

EUCLIDEAN_D = (1, 2, 3, 7, 11)


class Disc(int):
    """A discriminant tag d restricted to the Euclidean list."""

    def __new__(cls, d):
        d = int(d)
        if d not in EUCLIDEAN_D:
            raise ValueError(f"unsupported d={d}; expected one of {EUCLIDEAN_D}")
        return super().__new__(cls, d)


def is_mod3(d: int) -> bool:
    return d % 4 == 3


def norm_ab(d: int, a: int, b: int) -> int:
    """Norm of a + b*w from raw coordinates."""
    if d % 4 == 3:
        return a * a + a * b + b * b * ((d + 1) // 4)
    return a * a + d * b * b


def mul_ab(d: int, a1: int, b1: int, a2: int, b2: int) -> tuple[int, int]:
    bb = b1 * b2
    if d % 4 == 3:
        return a1 * a2 - ((d + 1) // 4) * bb, a1 * b2 + a2 * b1 + bb
    return a1 * a2 - d * bb, a1 * b2 + a2 * b1


def conj_ab(d: int, a: int, b: int) -> tuple[int, int]:
    if d % 4 == 3:
        return a + b, -b
    return a, -b


class RingElem:
    """The element a + b*w of Z[w_d]."""

    __slots__ = ("d", "a", "b")

    def __init__(self, d: int, a: int = 0, b: int = 0):
        if d not in EUCLIDEAN_D:
            raise ValueError(f"unsupported d={d}; expected one of {EUCLIDEAN_D}")
        self.d = int(d)
        self.a = int(a)
        self.b = int(b)

    @classmethod
    def omega(cls, d: int) -> RingElem:
        return cls(d, 0, 1)

    def _coerce(self, other) -> RingElem:
        if isinstance(other, RingElem):
            if other.d != self.d:
                raise ValueError(f"mixed discriminants {self.d} and {other.d}")
            return other
        if isinstance(other, int):
            return RingElem(self.d, other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElem(self.d, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElem(self.d, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElem(self.d, *mul_ab(self.d, self.a, self.b, o.a, o.b))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.d, -self.a, -self.b)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not ring elements")
        out = RingElem(self.d, 1, 0)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self.a == other and self.b == 0
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.d == other.d and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.d, self.a, self.b))

    def __bool__(self):
        return bool(self.a or self.b)

    def __repr__(self):
        return f"RingElem(d={self.d}, {self.a}, {self.b})"

    def __str__(self):
        return format_ring(self)

    @property
    def ab(self) -> tuple[int, int]:
        return self.a, self.b

    def conj(self) -> RingElem:
        return RingElem(self.d, *conj_ab(self.d, self.a, self.b))

    def norm(self) -> int:
        return norm_ab(self.d, self.a, self.b)

    def is_unit(self) -> bool:
        return self.norm() == 1

    def to_json(self) -> list[int]:
        return [self.a, self.b]


def conj(x: RingElem) -> RingElem:
    return x.conj()


def norm(x: RingElem) -> int:
    return x.norm()


_UNITS = {
    1: ((1, 0), (-1, 0), (0, 1), (0, -1)),
    2: ((1, 0), (-1, 0)),
    # powers of w_3 = (1 + sqrt(-3))/2, a primitive 6th root of unity
    3: ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)),
    7: ((1, 0), (-1, 0)),
    11: ((1, 0), (-1, 0)),
}


def units(d: int) -> list[RingElem]:
    """All units of Z[w_d] in a fixed order (1 first)."""
    return [RingElem(d, a, b) for a, b in _UNITS[Disc(d)]]


def unit_pairs(d: int) -> tuple[tuple[int, int], ...]:
    return _UNITS[d]


def canonical_ab(d: int, a: int, b: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Canonical associate of a + b*w and the unit that produces it.

    The canonical associate has the lexicographically largest (a, b);
    for nonzero input that forces a > 0, or a == 0 and b > 0.
    """
    best = None
    best_u = (1, 0)
    for u in _UNITS[d]:
        c = mul_ab(d, a, b, u[0], u[1])
        if best is None or c > best:
            best, best_u = c, u
    return best, best_u


def canonical(x: RingElem) -> RingElem:
    return RingElem(x.d, *canonical_ab(x.d, x.a, x.b)[0])


def quotient_coords(alpha: RingElem, beta: RingElem) -> tuple[Fraction, Fraction]:
    """Exact coordinates of alpha/beta in the basis {1, w}."""
    if not beta:
        raise ZeroDivisionError("division by zero in Z[w]")
    n = beta.norm()
    a, b = mul_ab(alpha.d, alpha.a, alpha.b, *conj_ab(beta.d, beta.a, beta.b))
    return Fraction(a, n), Fraction(b, n)


def divides(x: RingElem, y: RingElem) -> bool:
    """True iff x | y in Z[w]."""
    if not x:
        return not y
    n = x.norm()
    a, b = mul_ab(x.d, y.a, y.b, *conj_ab(x.d, x.a, x.b))
    return a % n == 0 and b % n == 0


def exact_div(y: RingElem, x: RingElem) -> RingElem:
    """y / x, which must lie in Z[w]."""
    if not x:
        raise ZeroDivisionError("division by zero in Z[w]")
    n = x.norm()
    a, b = mul_ab(x.d, y.a, y.b, *conj_ab(x.d, x.a, x.b))
    if a % n or b % n:
        raise ValueError(f"{x} does not divide {y}")
    return RingElem(x.d, a // n, b // n)


def _round_div(num: int, den: int) -> int:
    return (2 * num + den) // (2 * den)


def nearest_div_rem(alpha: RingElem, beta: RingElem) -> tuple[RingElem, RingElem]:
    """Euclidean division alpha = kappa*beta + rho with N(rho) < N(beta).

    Scans the 3x3 block of lattice points around the coordinatewise
    rounding of alpha/beta and keeps the smallest remainder.  Ties go to
    the lexicographically smallest kappa.
    """
    if alpha.d != beta.d:
        raise ValueError(f"mixed discriminants {alpha.d} and {beta.d}")
    if not beta:
        raise ZeroDivisionError("division by zero in Z[w]")
    d = alpha.d
    n = beta.norm()
    qa, qb = mul_ab(d, alpha.a, alpha.b, *conj_ab(d, beta.a, beta.b))
    ka0, kb0 = _round_div(qa, n), _round_div(qb, n)
    best = None
    for ka in (ka0 - 1, ka0, ka0 + 1):
        for kb in (kb0 - 1, kb0, kb0 + 1):
            pa, pb = mul_ab(d, ka, kb, beta.a, beta.b)
            ra, rb = alpha.a - pa, alpha.b - pb
            key = (norm_ab(d, ra, rb), ka, kb)
            if best is None or key < best[0]:
                best = (key, ra, rb)
    (_, ka, kb), ra, rb = best
    return RingElem(d, ka, kb), RingElem(d, ra, rb)


def ext_gcd(alpha: RingElem, beta: RingElem) -> tuple[RingElem, RingElem, RingElem]:
    """Return (g, u, v) with u*alpha + v*beta = g and g canonical."""
    if alpha.d != beta.d:
        raise ValueError(f"mixed discriminants {alpha.d} and {beta.d}")
    if not alpha and not beta:
        raise ValueError("gcd(0, 0) is undefined")
    d = alpha.d
    r0, r1 = alpha, beta
    u0, u1 = RingElem(d, 1), RingElem(d, 0)
    v0, v1 = RingElem(d, 0), RingElem(d, 1)
    while r1:
        k, r = nearest_div_rem(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - k * u1
        v0, v1 = v1, v0 - k * v1
    _, unit = canonical_ab(d, r0.a, r0.b)
    e = RingElem(d, *unit)
    return r0 * e, u0 * e, v0 * e


def gcd(alpha: RingElem, beta: RingElem) -> RingElem:
    return ext_gcd(alpha, beta)[0]


_TERM_RE = re.compile(r"([+-]?)(\d*)(\*?w)?")


def parse_ring(d: int, text: str) -> RingElem:
    """Parse "a+b*w" style text ("3", "-w", "2-5*w", "4w") or a JSON pair "[a,b]"."""
    s = text.replace(" ", "")
    if s.startswith("["):
        import json

        a, b = json.loads(s)
        return RingElem(d, int(a), int(b))
    if not s:
        raise ValueError(f"malformed ring element {text!r}")
    a = b = 0
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"malformed ring element {text!r}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"malformed ring element {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(3):
            b += sign * int(m.group(2) or 1)
        else:
            a += sign * int(m.group(2))
        pos = m.end()
    return RingElem(d, a, b)


def format_ring(x: RingElem) -> str:
    """Text form "a+b*w"; zero parts and unit coefficients are dropped."""
    if x.b == 0:
        return str(x.a)
    coef = {1: "", -1: "-"}.get(x.b, f"{x.b}*")
    if x.a == 0:
        return f"{coef}w"
    if x.b > 0:
        return f"{x.a}+{coef}w"
    return f"{x.a}{coef}w"
