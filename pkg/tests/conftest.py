import cmath

from hypothesis import strategies as st

from farey.field import make
from farey.ring import EUCLIDEAN_D, RingElem

discs = st.sampled_from(EUCLIDEAN_D)
small = st.integers(-40, 40)


def omega_c(d: int) -> complex:
    return 1j * d ** 0.5 if d in (1, 2) else (1 + 1j * d ** 0.5) / 2


def to_c(x: RingElem) -> complex:
    return x.a + x.b * omega_c(x.d)


@st.composite
def ring_pairs(draw, nonzero_second=False):
    d = draw(discs)
    a = RingElem(d, draw(small), draw(small))
    b = RingElem(d, draw(small), draw(small))
    if nonzero_second and not b:
        b = RingElem(d, 1)
    return a, b


@st.composite
def points(draw, d=None, box=30):
    d = d if d is not None else draw(discs)
    c = st.integers(-box, box)
    q = RingElem(d, draw(c), draw(c))
    if not q:
        q = RingElem(d, 1)
    return make(RingElem(d, draw(c), draw(c)), q)


def close(z: complex, w: complex, tol=1e-9) -> bool:
    return cmath.isclose(z, w, rel_tol=tol, abs_tol=tol)
