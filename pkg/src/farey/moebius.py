"""2x2 matrices over Z[w_d] acting on cusps, and anti-holomorphic reflections."""
from __future__ import annotations

from .field import QElem, make, q_conj
from .ring import RingElem, mul_ab, unit_pairs


class Matrix2:
    """[[m11, m12], [m21, m22]] over Z[w_d]."""

    __slots__ = ("d", "m11", "m12", "m21", "m22", "det")

    def __init__(self, m11, m12, m21, m22, d: int | None = None):
        if d is None:
            d = next(m.d for m in (m11, m12, m21, m22) if isinstance(m, RingElem))
        ents = [m if isinstance(m, RingElem) else RingElem(d, m) for m in (m11, m12, m21, m22)]
        if any(e.d != d for e in ents):
            raise ValueError("matrix entries have mixed discriminants")
        self.d = d
        self.m11, self.m12, self.m21, self.m22 = ents
        self.det = self.m11 * self.m22 - self.m12 * self.m21

    @classmethod
    def identity(cls, d: int) -> Matrix2:
        return cls(1, 0, 0, 1, d=d)

    @classmethod
    def S(cls, alpha: RingElem) -> Matrix2:
        """S_alpha = [[alpha, 1], [1, 0]], so S_alpha(inf) = alpha."""
        return cls(alpha, 1, 1, 0, d=alpha.d)

    @property
    def entries(self):
        return (self.m11, self.m12, self.m21, self.m22)

    def __matmul__(self, other: Matrix2) -> Matrix2:
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Matrix2):
            return NotImplemented
        return self.d == other.d and self.entries == other.entries

    def __hash__(self):
        return hash((self.d,) + self.entries)

    def __neg__(self):
        return Matrix2(-self.m11, -self.m12, -self.m21, -self.m22, d=self.d)

    def scale(self, u: RingElem) -> Matrix2:
        return Matrix2(u * self.m11, u * self.m12, u * self.m21, u * self.m22, d=self.d)

    def __repr__(self):
        return f"Matrix2(d={self.d}, {self.to_json()})"

    def to_json(self):
        return [[self.m11.to_json(), self.m12.to_json()], [self.m21.to_json(), self.m22.to_json()]]

    @classmethod
    def from_json(cls, d: int, rows) -> Matrix2:
        (a, b), (c, e) = rows
        return cls(*(RingElem(d, *x) for x in (a, b, c, e)), d=d)


def same_up_to_sign(A: Matrix2, B: Matrix2) -> bool:
    return A == B or A == -B


def compose(A: Matrix2, B: Matrix2) -> Matrix2:
    if A.d != B.d:
        raise ValueError("matrices have mixed discriminants")
    return Matrix2(
        A.m11 * B.m11 + A.m12 * B.m21,
        A.m11 * B.m12 + A.m12 * B.m22,
        A.m21 * B.m11 + A.m22 * B.m21,
        A.m21 * B.m12 + A.m22 * B.m22,
        d=A.d,
    )


def _require_unit_det(A: Matrix2):
    if A.det.norm() != 1:
        raise ValueError(f"determinant {A.det} is not a unit")


def inverse(A: Matrix2) -> Matrix2:
    """Adjugate times det^-1 (det must be a unit, so det^-1 = conj(det))."""
    _require_unit_det(A)
    e = A.det.conj()
    return Matrix2(e * A.m22, -e * A.m12, -e * A.m21, e * A.m11, d=A.d)


def normalize_det(A: Matrix2) -> Matrix2:
    """Scale A by a unit u so that det(uA) = u^2 det(A) = 1."""
    _require_unit_det(A)
    tried = []
    for ua, ub in unit_pairs(A.d):
        u = RingElem(A.d, ua, ub)
        tried.append(str(u))
        if u * u * A.det == 1:
            return A if (ua, ub) == (1, 0) else A.scale(u)
    raise ValueError(f"no unit scaling gives det 1 (det={A.det}, tried units {tried})")


def _apply(A: Matrix2, x: QElem, coprime: bool) -> QElem:
    d = A.d
    if x.d != d:
        raise ValueError("point and matrix have mixed discriminants")
    m = [(e.a, e.b) for e in A.entries]
    p, q = (x.pa, x.pb), (x.qa, x.qb)

    def lin(r, s):
        t1 = mul_ab(d, *r, *p)
        t2 = mul_ab(d, *s, *q)
        return t1[0] + t2[0], t1[1] + t2[1]

    num = lin(m[0], m[1])
    den = lin(m[2], m[3])
    if coprime:
        return QElem.from_coprime(d, *num, *den)
    return make(RingElem(d, *num), RingElem(d, *den))


def act(A: Matrix2, x: QElem) -> QElem:
    """Projective action w -> (m11 w + m12)/(m21 w + m22); det must be a unit."""
    _require_unit_det(A)
    return _apply(A, x, coprime=True)


class Reflection:
    """A cusp map w -> M(conj(w)) (anti=True) or w -> M(w) (anti=False).

    The matrix determinant is left as is (it need not be a unit); only
    cusp images are computed, and those do not see scalar factors.
    """

    __slots__ = ("mat", "name", "anti")

    def __init__(self, mat: Matrix2, name: str = "", anti: bool = True):
        self.mat = mat
        self.name = name
        self.anti = anti

    @property
    def d(self) -> int:
        return self.mat.d

    def __call__(self, x: QElem) -> QElem:
        return reflect(self, x)

    def __repr__(self):
        return f"Reflection({self.name or self.mat.to_json()}, anti={self.anti})"


def reflect(R: Reflection, x: QElem) -> QElem:
    return _apply(R.mat, q_conj(x) if R.anti else x, coprime=False)
