import itertools

import pytest
from hypothesis import given, strategies as st

from shapovalov.cartan import preset
from shapovalov.free_algebra import FreeAlgebra, lin_equal
from shapovalov.scalars import make_ring
from shapovalov.tensor import LengthMismatch, ShapeMismatch, TensorModule

F_A2 = FreeAlgebra(preset("A2"), make_ring(5))
F_A1 = FreeAlgebra(preset("A1"), make_ring("generic"))


@st.composite
def tensor_case(draw, max_len=2):
    F = draw(st.sampled_from((F_A2, F_A1)))
    n = draw(st.integers(1, 3))
    weights = [tuple(draw(st.integers(-3, 3)) for _ in range(F.rank)) for _ in range(n)]
    word = lambda: tuple(draw(st.lists(st.integers(0, F.rank - 1), max_size=max_len)))
    return TensorModule(F, weights), word(), word(), tuple(word() for _ in range(n))


@given(tensor_case())
def test_module_axiom(t):
    T, x, y, ys = t
    one = T.ring.one
    m = {ys: one}
    lhs = T.f_action({x + y: one}, m)
    rhs = T.f_action({x: one}, T.f_action({y: one}, m))
    assert lin_equal(lhs, rhs)


@given(tensor_case())
def test_single_factor_action_is_multiplication(t):
    T, x, _, ys = t
    if T.n != 1:
        return
    one = T.ring.one
    assert T.f_action({x: one}, {ys: one}) == {(x + ys[0],): one}


@given(tensor_case(max_len=2))
def test_S_intertwines_actions(t):
    """``s(x . m) == s(x) . s(m)``: the factorwise form turns the F-action into the F*-action."""
    T, x, _, ys = t
    one = T.ring.one
    m = {ys: one}
    lhs = T.s_map(T.f_action({x: one}, m))
    rhs = T.dual_f_action(T.F.s_map({x: one}), T.s_map(m))
    assert lin_equal(lhs, rhs)


def test_twist_on_two_factors():
    T = TensorModule(F_A2, [(1, 0), (0, 2)])
    one = T.ring.one
    # theta_0 acting on v (x) v: 1 (x) theta_0 picks up z^{-<Lambda_0, 0>}
    out = T.f_action({(0,): one}, {((), ()): one})
    assert out == {((0,), ()): one, ((), (0,)): T.F.zeta(-1)}


def test_form_S_tensor_and_errors():
    T = TensorModule(F_A2, [(1, 0)])
    one = T.ring.one
    a = {((0,), (1,)): one}
    assert T.form_S_tensor(a, a, m=1) == T.F._S_words((0,), (0,)) * T.factors[0]._S_words((1,), (1,))
    with pytest.raises(ShapeMismatch):
        T.form_S_tensor(a, a, m=0)
    with pytest.raises(LengthMismatch):
        TensorModule(F_A2, [])
    with pytest.raises(LengthMismatch):
        T.tensor_algebra_action([{(0,): one}, {(1,): one}], {((),): one})


def test_tensor_algebra_action_matches_coproduct_route():
    T = TensorModule(F_A2, [(1, 0), (0, 2)])
    one = T.ring.one
    x = {(0, 1): one}
    direct: dict = {}
    for us, c in F_A2.iterated_coproduct(x, 2).items():
        part = T.tensor_algebra_action([{us[0]: one}, {us[1]: one}], {((), (1,)): one})
        for k, v in part.items():
            direct[k] = direct.get(k, T.ring.zero) + c * v
    assert lin_equal(direct, T.f_action(x, {((), (1,)): one}))
    assert list(itertools.islice(T.highest_vector(), 1)) == [((), ())]
