import json

import pytest
from hypothesis import given, strategies as st

from shapovalov import cartan as C

PRESETS = ("A1", "A1xA1", "A2", "A3", "B2", "G2")


def vec(rank):
    return st.lists(st.integers(0, 6), min_size=rank, max_size=rank).map(tuple)


@st.composite
def datum_and_degrees(draw):
    c = C.preset(draw(st.sampled_from(PRESETS)))
    return c, draw(vec(c.rank)), draw(vec(c.rank))


@given(datum_and_degrees())
def test_dot_product_symmetric_and_lambda_additive(t):
    c, nu, mu = t
    assert C.dot_product(c, nu, mu) == C.dot_product(c, mu, nu)
    assert C.lambda_nu(c, C.add(nu, mu)) == C.add(C.lambda_nu(c, nu), C.lambda_nu(c, mu))
    assert C.pairing(C.lambda_nu(c, nu), mu) == C.dot_product(c, nu, mu)


def test_presets():
    assert C.preset("A2").dot == ((2, -1), (-1, 2))
    assert C.preset("A1×A1").name == "A1xA1"
    assert C.preset("A2").simply_laced
    assert not C.preset("B2").simply_laced
    assert C.preset("B2").d == (1, 2)
    assert C.preset("G2").cartan_integer(0, 1) == -3
    assert C.preset("G2").cartan_integer(1, 0) == -1
    assert C.preset("A0").rank == 0
    with pytest.raises(C.CartanError):
        C.preset("E9")


def test_invalid_matrices():
    with pytest.raises(C.CartanError):
        C.from_matrix([[2, -1], [0, 2]])
    with pytest.raises(C.CartanError):
        C.from_matrix([[2, -1]])


def test_minus_rho():
    assert C.minus_rho(C.preset("A2")) == (-1, -1)
    # stored values are d_i times the coroot pairing
    assert C.minus_rho(C.preset("B2")) == (-1, -2)
    assert C.from_coroot_pairings(C.preset("G2"), [2, 1]) == (2, 3)


def test_degrees():
    assert C.degrees_up_to(1, 3) == [(0,), (1,), (2,), (3,)]
    assert C.degrees_of_depth(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(C.degrees_up_to(2, 6)) == 28
    assert C.sub_degrees((1, 2)) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    assert C.content((0, 1, 1), 2) == (1, 2)
    assert C.depth((3, 4)) == 7


def test_rank_mismatch():
    with pytest.raises(C.RankMismatch):
        C.lambda_nu(C.preset("A2"), (1, 2, 3))
    with pytest.raises(C.RankMismatch):
        C.pairing((1,), (1, 2))


def test_json_round_trip(tmp_path):
    c = C.from_matrix([[2, -1, 0], [-1, 2, -2], [0, -2, 4]], "C3ish")
    p = tmp_path / "cartan.json"
    p.write_text(json.dumps(c.to_json()))
    c2 = C.load(str(p))
    assert c2.dot == c.dot
    assert C.load("A2") == C.preset("A2")
    assert C.from_json({"preset": "B2"}).dot == C.preset("B2").dot
    assert C.preset("A2").to_json() == {"preset": "A2"}
    with pytest.raises(C.CartanError):
        C.from_json({"rank": 3, "dot": [[2]]})
    with pytest.raises(C.CartanError):
        C.load(str(tmp_path / "missing.json"))
