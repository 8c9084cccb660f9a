import pytest
from hypothesis import given, strategies as st

from shapovalov.cartan import degrees_up_to, preset
from shapovalov.free_algebra import FreeAlgebra, lin_equal
from shapovalov.scalars import make_ring
from shapovalov.symmetrize import (
    DegreeMismatch,
    Symmetrizer,
    act_sigma,
    average,
    check_all_squares,
    lifts,
    project,
    unfold,
)

A1 = FreeAlgebra(preset("A1"), make_ring(5))
A2 = FreeAlgebra(preset("A2"), make_ring(5))
A2g = FreeAlgebra(preset("A2"), make_ring("generic"))


def test_unfolding():
    U = unfold((2, 1))
    assert U.pi == (0, 0, 1)
    assert U.labels == ((0, 0), (0, 1), (1, 0))
    assert U.sigma_order == 2
    assert U.fibers() == [[0, 1], [2]]
    assert U.cartan(A2.cartan).dot == ((2, 2, -1), (2, 2, -1), (-1, -1, 2))
    assert U.weight((3, -1)) == (3, 3, -1)
    assert sorted(U.sigma_group()) == [(0, 1, 2), (1, 0, 2)]


def test_lifts():
    U = unfold((2, 1))
    assert lifts(U, (0, 1, 0)) == [(0, 2, 1), (1, 2, 0)]
    with pytest.raises(DegreeMismatch):
        lifts(U, (0, 1))


@given(st.sampled_from([(2, 1), (1, 2), (2, 2), (3, 1)]), st.data())
def test_project_average_is_multiplication_by_sigma_order(nu, data):
    U = unfold(nu)
    w = data.draw(st.sampled_from(A2.words(nu)))
    a = average(U, {w: A2.ring.one})
    assert lin_equal(project(U, a), {w: A2.ring.one * U.sigma_order})
    for s in U.sigma_group():
        assert lin_equal(act_sigma(s, a), a)


@pytest.mark.parametrize("nu", [(2, 1), (2, 2), (1, 1)])
def test_averaging_is_isomorphism_onto_invariants(nu):
    rep = Symmetrizer(A2, nu).averaging_is_isomorphism()
    assert all(rep.values()), rep


def test_squares_generic_mode():
    for rep in check_all_squares(A2g, 3, [(2, -1)], m=1):
        assert rep["pass"], rep


def test_squares_two_factors_and_m2():
    sym = Symmetrizer(A2, (1, 2))
    assert sym.mfold_square(2, [(1, 0), (0, 1)])
    assert sym.coaction_square((3, 1))


@pytest.mark.parametrize("F,nu,weights", [(A1, (3,), [(2,)]), (A2, (2, 1), [(1, 0)]), (A2, (1, 1), [(0, 0), (1, 1)])])
def test_averaged_hochschild(F, nu, weights):
    for row in Symmetrizer(F, nu).hochschild_square(weights):
        assert row["commutes"] and row["injective"]
        assert row["dim_H_I"] == row["dim_H_J_invariant"]


def test_all_degrees_depth_3():
    assert all(rep["pass"] for rep in check_all_squares(A1, 3, [(1,)]))
    assert len(check_all_squares(A1, 3, [(1,)])) == len(degrees_up_to(1, 3))
