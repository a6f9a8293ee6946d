import pytest
from hypothesis import given, strategies as st

from farey.contfrac import (
    CFExpansion,
    cf_eval,
    cf_to_walk,
    convergents,
    det_identity,
    forbidden_scan,
    parse_cf,
    r5_candidates,
    r5_patterns,
    reverse,
    walk_to_cf,
)
from farey.field import infinity, make
from farey.graph import is_edge
from farey.ring import RingElem
from farey.suites import LONG_D7, example_cusps_d7

from conftest import discs


@st.composite
def expansions(draw, max_len=6):
    d = draw(discs)
    n = draw(st.integers(1, max_len))
    c = st.integers(-4, 4)
    return CFExpansion(d, tuple(RingElem(d, draw(c), draw(c)) for _ in range(n)))


def test_walk_of_two_three():
    cf = CFExpansion.from_pairs(1, [(2, 0), (3, 0)])
    assert cf_to_walk(cf) == [infinity(1), make(2, 1, d=1), make(7, 3, d=1)]


@given(expansions())
def test_walk_is_a_farey_walk(cf):
    walk = cf_to_walk(cf)
    assert len(walk) == len(cf) + 1
    assert all(is_edge(x, y) for x, y in zip(walk, walk[1:]))


@given(expansions())
def test_walk_round_trip(cf):
    assert walk_to_cf(cf_to_walk(cf)) == cf


@given(expansions())
def test_determinant_identity(cf):
    assert det_identity(cf)


@given(expansions())
def test_eval_matches_nested_fraction(cf):
    # independent route: fold a_k + 1/x from the back
    from farey.field import q_add, q_inv

    x = infinity(cf.d)
    for a in reversed(cf.digits):
        x = q_add(q_inv(x), a) if not x.is_inf() else make(a, 1)
    assert cf_eval(cf) == x


@given(expansions())
def test_reverse_is_an_involution(cf):
    assert reverse(reverse(cf)) == cf


def test_worked_walk_gives_printed_digits():
    walk = [infinity(7)] + example_cusps_d7()
    cf = walk_to_cf(walk)
    assert cf == CFExpansion.from_pairs(7, LONG_D7)
    assert len(cf_to_walk(cf)) == 7
    assert convergents(cf) == example_cusps_d7()


def test_walk_to_cf_rejects_non_edges():
    with pytest.raises(ValueError, match="not an edge"):
        walk_to_cf([infinity(2), make(0, 1, d=2), make(RingElem(2, 0, 1), 1)])
    with pytest.raises(ValueError, match="start at inf"):
        walk_to_cf([make(0, 1, d=2)])


def test_parse_cf_forms():
    cf = parse_cf('{"d": 7, "digits": [[1,-1],[0,1]]}')
    assert cf.d == 7 and len(cf) == 2
    assert parse_cf("[[1,0]]", 3).digits[0] == RingElem(3, 1)
    assert str(CFExpansion.from_pairs(7, LONG_D7)) == "[0; 1-w, 2-w, -2+w, -1+2*w, w]"
    with pytest.raises(ValueError, match="d is required"):
        parse_cf("[[1,0]]")
    with pytest.raises(ValueError, match="but d=2"):
        parse_cf('{"d": 7, "digits": [[1,0]]}', 2)


@pytest.mark.parametrize("d,digits,rule,pos", [
    (1, [(5, 0), (1, 0), (5, 0)], "R1", 2),
    (1, [(5, 0), (1, 1), (-1, 1)], "R2", 2),
    (2, [(3, 0), (2, 0), (-2, 0)], "R3", 2),
    (3, [(4, 0), (1, 1), (-2, 1), (1, 1), (-2, 1)], "R4", 2),
    (7, LONG_D7, "R5", 2),
])
def test_forbidden_scan_flags(d, digits, rule, pos):
    hits = forbidden_scan(CFExpansion.from_pairs(d, digits))
    assert (pos, rule) in [(v.position, v.rule) for v in hits]


def test_forbidden_scan_skips_first_digit():
    assert forbidden_scan(CFExpansion.from_pairs(1, [(1, 0), (5, 0)])) == []


@pytest.mark.parametrize("rule,d,long_,short", [
    ("R1", 1, [(3, 1), (0, 1)], [(3, 0)]),
    ("R2", 7, [(2, 0), (0, 1), (-1, 1)], [(3, -1)]),
    ("R3", 3, [(4, 0), (0, 2), (-2, 2)], [(5, -1), (0, -3)]),
    ("R4", 11, [(3, 0), (0, 1), (-1, 1), (0, 1), (-1, 1)], [(4, -1)]),
])
def test_rewrite_identities_examples(rule, d, long_, short):
    assert cf_eval(CFExpansion.from_pairs(d, long_)) == cf_eval(CFExpansion.from_pairs(d, short))


def test_r5_symmetry_images_are_all_confirmed():
    cands = r5_candidates()
    assert len(cands) == 4
    assert r5_patterns() == tuple(cands)
