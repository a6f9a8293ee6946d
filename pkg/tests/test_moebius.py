import pytest
from hypothesis import given, strategies as st

from farey.field import infinity, make
from farey.geometry import reflections_d7, standard_cell
from farey.moebius import Matrix2, Reflection, act, compose, inverse, normalize_det, reflect, same_up_to_sign
from farey.ring import RingElem

from conftest import points, small


@st.composite
def unimodular(draw, d):
    A = Matrix2.identity(d)
    for _ in range(draw(st.integers(1, 4))):
        A = A @ Matrix2.S(RingElem(d, draw(st.integers(-3, 3)), draw(st.integers(-3, 3))))
    return A


@pytest.mark.parametrize("d", [1, 2, 3, 7, 11])
def test_action_is_a_homomorphism(d):
    @given(unimodular(d), unimodular(d), points(d=d))
    def check(A, B, z):
        assert act(compose(A, B), z) == act(A, act(B, z))
        assert act(inverse(A), act(A, z)) == z

    check()


def test_S_sends_infinity_to_digit():
    a = RingElem(2, 3, -1)
    assert act(Matrix2.S(a), infinity(2)) == make(a, 1)
    assert Matrix2.S(a).det == -1


def test_normalize_det():
    d = 1
    i = RingElem(d, 0, 1)
    A = Matrix2(i, 0, 0, 1, d=d)  # det i: u^2 i = 1 needs u^2 = -i, impossible in Z[i]
    with pytest.raises(ValueError, match="tried units"):
        normalize_det(A)
    B = Matrix2(-1, 0, 0, 1, d=d)
    assert normalize_det(B).det == 1


def test_inverse_needs_unit_det():
    with pytest.raises(ValueError, match="not a unit"):
        inverse(Matrix2(2, 0, 0, 1, d=2))


def test_same_up_to_sign_and_json():
    A = Matrix2(1, 2, 3, 7, d=7)
    assert same_up_to_sign(A, -A)
    assert Matrix2.from_json(7, A.to_json()) == A


def test_anti_reflection():
    d = 1
    R = Reflection(Matrix2(-1, 1, 0, 1, d=d), anti=True)  # z -> 1 - conj(z)
    z = make(RingElem(d, 1, 2), RingElem(d, 3))
    assert reflect(R, reflect(R, z)) == z


# -- the d = 7 face maps ------------------------------------------------------------

def _names():
    return {R.name: R for R in reflections_d7()}


def test_R1_swaps_0_and_1_and_fixes_infinity():
    R1 = _names()["R1"]
    d = 7
    assert R1(make(0, 1, d=d)) == make(1, 1, d=d)
    assert R1(make(1, 1, d=d)) == make(0, 1, d=d)
    assert R1(infinity(d)).is_inf()


def test_R4_sends_infinity_to_one():
    assert _names()["R4"](infinity(7)) == make(1, 1, d=7)


@pytest.mark.parametrize("name,involution", [("R1", True), ("R2", True), ("R3", True), ("R4", False), ("R5", False)])
def test_which_face_maps_are_involutions(name, involution):
    R = _names()[name]
    cusps = standard_cell(7).cusps
    assert all(R(R(c)) == c for c in cusps) is involution


@pytest.mark.parametrize("name,shared", [("R1", 3), ("R2", 4), ("R3", 4), ("R4", 4), ("R5", 3)])
def test_face_maps_give_neighbouring_cells(name, shared):
    cusps = set(standard_cell(7).cusps)
    img = {_names()[name](c) for c in cusps}
    assert img != cusps
    assert len(img & cusps) == shared


def test_printed_R4_entry_does_not_pair_a_face():
    # m22 = w - 1 as printed; the working map has m22 = -1 - w
    d = 7
    w = RingElem(d, 0, 1)
    cusps = set(standard_cell(7).cusps)
    for anti in (False, True):
        R = Reflection(Matrix2(1, -w, 1, w - 1, d=d), anti=anti)
        assert len({R(c) for c in cusps} & cusps) == 2
