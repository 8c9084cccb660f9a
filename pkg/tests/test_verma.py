import itertools

import pytest
from hypothesis import given, strategies as st

from shapovalov.cartan import RankMismatch, preset
from shapovalov.free_algebra import FreeAlgebra, lin_equal
from shapovalov.quotients import shapovalov_det
from shapovalov.scalars import make_ring
from shapovalov.verify import CorruptedVerma
from shapovalov.verma import EmptySubset, VermaModule

ALGEBRAS = {
    (name, l): FreeAlgebra(preset(name), make_ring(l))
    for name in ("A1", "A2", "B2")
    for l in (5, "generic")
}


@st.composite
def module_and_words(draw, count=1, max_len=3):
    F = ALGEBRAS[draw(st.sampled_from(sorted(ALGEBRAS, key=str)))]
    lam = tuple(draw(st.integers(-5, 5)) for _ in range(F.rank))
    ws = [tuple(draw(st.lists(st.integers(0, F.rank - 1), max_size=max_len))) for _ in range(count)]
    return VermaModule(F, lam), ws


def test_S_Lambda_degree_one_is_a_bracket():
    F = ALGEBRAS[("A1", 5)]
    V = VermaModule(F, (3,))
    assert shapovalov_det(V, (1,)) == F.ring.bracket(3)
    assert F.ring.serialize(shapovalov_det(V, (1,))) == "z^3 + z^2 + z + 2"
    assert V._S_words((), ()) == F.ring.one


def test_S_Lambda_vanishes_on_highest_weight_line_when_bracket_does():
    F = ALGEBRAS[("A1", 5)]
    assert shapovalov_det(VermaModule(F, (5,)), (1,)).is_zero()
    assert shapovalov_det(VermaModule(F, (0,)), (1,)).is_zero()


@given(module_and_words(count=2, max_len=4))
def test_S_Lambda_perm_equals_rec_and_is_symmetric(t):
    V, (x, y) = t
    assert V.form_S_Lambda_perm(x, y) == V._S_words(x, y) == V._S_words(y, x)


@given(module_and_words(count=2, max_len=3), st.integers(0, 1))
def test_epsilon_is_adjoint_to_theta(t, i):
    V, (x, y) = t
    i = i % V.F.rank
    one = V.ring.one
    y = y + (i,)
    assert V._S_words((i,) + x, y) == V.form_S_Lambda_rec({x: one}, V.epsilon_i(i, {y: one}))


@given(module_and_words(count=1, max_len=4))
def test_coaction_equals_commutator_formula(t):
    V, (w,) = t
    m = {w: V.ring.one}
    assert lin_equal(V.coaction(m), V.coaction_via_commutators(m))


@given(module_and_words(count=1, max_len=4))
def test_coaction_is_coassociative(t):
    V, (w,) = t
    assert not V.coassociativity_residual({w: V.ring.one})


@given(module_and_words(count=1, max_len=4))
def test_coaction_is_counital(t):
    V, (w,) = t
    D = V.coaction({w: V.ring.one})
    assert D.get(((), w)) == V.ring.one
    assert all(not x or len(x) + len(y) == len(w) for (x, y) in D)


@given(module_and_words(count=1, max_len=4))
def test_coaction_adjoint_to_multiplication(t):
    V, (z,) = t
    one = V.ring.one
    D = V.coaction({z: one})
    for k in range(len(z) + 1):
        for x in itertools.product(range(V.F.rank), repeat=k):
            for y in itertools.product(range(V.F.rank), repeat=len(z) - k):
                assert V._S_words(x + y, z) == V.form_S_1({(x, y): one}, D)


@given(module_and_words(count=1, max_len=3), st.integers(0, 1), st.integers(0, 1))
def test_adjdelta_identity(t, i, j):
    V, (w,) = t
    i, j = i % V.F.rank, j % V.F.rank
    lam = tuple(x + 1 for x in V.weight)
    assert not V.adjdelta_check(i, j, lam, {w: V.ring.one})


def test_quantum_commutator_singleton_and_errors():
    F = ALGEBRAS[("A2", 5)]
    V = VermaModule(F, (2, -1))
    w = (0, 1, 1)
    # Q = {1} picks i_1 = w[-1]; moving it past (0, 1) braids by z^{-1 + 2}
    assert V.quantum_commutator(w, [1]) == {(1,): F.zeta(1)}
    with pytest.raises(EmptySubset):
        V.quantum_commutator(w, [])
    with pytest.raises(ValueError):
        V.quantum_commutator(w, [4])
    with pytest.raises(RankMismatch):
        VermaModule(F, (1,))


def test_corrupted_coaction_is_detected():
    F = ALGEBRAS[("A1", 5)]
    V = CorruptedVerma(F, (1,))
    assert V.coassociativity_residual({(0, 0): F.ring.one})
