from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from farey.contfrac import cf_eval
from farey.expansions import (
    HeckeNum,
    WallNum,
    euclid_expand,
    hecke_convergents,
    hecke_digits,
    in_region,
    nicf_digit,
    nicf_expand,
    pqPQ_check,
    region_digit,
    wall_convergents,
    wall_digits,
)
from farey.field import ComplexRational, embed, infinity, make
from farey.ring import RingElem

from conftest import discs, points

F = Fraction


def translates_in_region(d, x, y):
    # oracle: count lattice translates a + b*w of (x, y) that land in U_d
    hits = 0
    for a in range(-3, 4):
        for b in range(-3, 4):
            bx, by = (F(a), F(b)) if d in (1, 2) else (a + F(b, 2), F(b, 2))
            hits += in_region(ComplexRational(d, x - bx, y - by))
    return hits


@pytest.mark.parametrize("d", [1, 2, 3])
def test_region_tiles_the_plane(d):
    # a fine grid that hits every edge and vertex of U_d
    for i in range(-12, 13):
        for j in range(-36, 37):
            assert translates_in_region(d, F(i, 12), F(j, 36)) == 1, (d, i, j)


@pytest.mark.parametrize("x,y,inside", [
    (F(-1, 2), F(-1, 6), True),
    (F(0), F(-1, 3), True),
    (F(1, 2), F(-1, 6), False),
    (F(0), F(1, 3), False),
    (F(-1, 2), F(1, 6), False),
    (F(1, 2), F(1, 6), False),
    (F(0), F(0), True),
])
def test_hexagon_vertex_convention(x, y, inside):
    assert in_region(ComplexRational(3, x, y)) is inside


def test_region_needs_small_d():
    with pytest.raises(ValueError, match="only defined"):
        in_region(ComplexRational(7, F(0), F(0)))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_nicf_round_trip(d):
    @given(points(d=d))
    def check(z):
        if z.is_inf():
            return
        cf = nicf_expand(z)
        assert cf_eval(cf) == z
        for a in cf.digits[1:]:
            assert a.norm() >= 2  # 1/w for w in U_d has |1/w| >= sqrt(2)

    check()


@given(points())
def test_euclid_round_trip(z):
    if z.is_inf():
        return
    assert cf_eval(euclid_expand(z)) == z


def test_nicf_errors():
    with pytest.raises(ValueError, match="d in"):
        nicf_expand(make(1, 2, d=7))
    with pytest.raises(ValueError, match="no expansion"):
        nicf_expand(infinity(1))
    with pytest.raises(ValueError, match="undefined at 0"):
        nicf_digit(make(0, 1, d=1))


def test_nicf_digit_examples():
    d = 1
    # 1/(1/3) = 3 lies on the lattice
    assert nicf_digit(make(1, 3, d=d)) == RingElem(d, 3)
    assert region_digit(make(RingElem(d, 5, 7), 2)) == RingElem(d, 3, 4)  # 2.5 + 3.5i -> halves round up


@pytest.mark.parametrize("ell,y,digits", [(4, F(1, 3), [2, 1]), (6, F(1, 2), [1, 1]), (6, F(2, 7), [2, 1, 1, 1, 2, 1, 1, 1]), (4, F(1, 2), [1])])
def test_hecke_digits(ell, y, digits):
    assert hecke_digits(HeckeNum(ell, y)) == digits


@given(st.sampled_from([4, 6]), st.fractions(min_value=0, max_value=1, max_denominator=60))
def test_hecke_last_convergent_is_x(ell, y):
    if y >= 1 or y == 0:
        return
    x = HeckeNum(ell, y)
    p, q = hecke_convergents(x)[-1]
    # p/q = y*sqrt(m)  <=>  r = y*m*s' and s = y*r' for p = r + s*sqrt(m), q = r' + s'*sqrt(m)
    assert p.r == y * x.m * q.s and p.s == y * q.r


def test_hecke_domain():
    with pytest.raises(ValueError, match="outside"):
        hecke_digits(HeckeNum(4, F(3, 2)))
    with pytest.raises(ValueError, match="ell must be"):
        HeckeNum(5, F(1, 2))


@pytest.mark.parametrize("d", [2, 7, 11])
@pytest.mark.parametrize("y", [F(1, 3), F(2, 7), F(5, 11), F(13, 40)])
def test_wall_convergents_end_at_target(d, y):
    z = WallNum(d, y)
    assert wall_convergents(z)[-1] == z.to_q()
    assert pqPQ_check(y, d).ok


def test_wall_digits_alternate_sides():
    d = 7
    ds = wall_digits(WallNum(d, F(2, 7)))
    w, wb = RingElem(d, 0, 1), RingElem(d, 0, 1).conj()
    for k, b in enumerate(ds):
        unit = wb if k % 2 == 0 else w
        assert any(b == n * unit for n in range(1, 20))


def test_wall_errors():
    with pytest.raises(ValueError, match="wall maps need"):
        WallNum(3, F(1, 2))
    with pytest.raises(ValueError, match="side"):
        WallNum(7, F(1, 2), "up")
    with pytest.raises(ValueError, match="outside"):
        wall_digits(WallNum(7, F(5, 4)))
