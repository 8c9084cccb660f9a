import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from shapovalov import _kernels
from shapovalov.cartan import degrees_up_to, preset
from shapovalov.free_algebra import FreeAlgebra, _window, gram_matrix
from shapovalov.scalars import make_ring

needs_numba = pytest.mark.skipif(not _kernels.NUMBA_AVAILABLE, reason="numba disabled")
DOT = np.array(preset("B2").dot, dtype=np.int64)


@st.composite
def word_pair(draw):
    w = draw(st.lists(st.integers(0, 1), max_size=6))
    perm = draw(st.permutations(w))
    return np.array(w, dtype=np.int64), np.array(perm, dtype=np.int64)


@needs_numba
@given(word_pair())
def test_matching_positions_agree(t):
    K, Kp = t
    a = _kernels._matching_positions_py(K, Kp)
    b = _kernels._matching_positions_nb(K, Kp)
    assert sorted(map(tuple, a.tolist())) == sorted(map(tuple, b.tolist()))
    for sig in a:
        assert all(Kp[s] == K[i] for i, s in enumerate(sig))


@needs_numba
@given(word_pair(), st.lists(st.integers(-4, 4), min_size=2, max_size=2), st.booleans(), st.sampled_from((5, 0)))
def test_perm_sum_counts_agree(t, lam, verma, modulus):
    K, Kp = t
    sig = _kernels._matching_positions_py(K, Kp)
    lam = np.array(lam, dtype=np.int64)
    if modulus:
        L, offset = modulus, 0
    else:
        B = 200
        L, offset = 2 * B + 1, B
    a = _kernels._perm_sum_counts_py(K, sig, DOT, lam, verma, modulus, offset, L)
    b = _kernels._perm_sum_counts_nb(K, sig, DOT, lam, verma, modulus, offset, L)
    assert np.array_equal(a, b)


def _gram_with(backend, name, l, lam):
    saved = _kernels.gram_peel_block
    _kernels.gram_peel_block = _kernels.BACKENDS[backend][0]
    try:
        F = FreeAlgebra(preset(name), make_ring(l))
        return {nu: gram_matrix(F, nu, lam) for nu in degrees_up_to(F.rank, 4)}
    finally:
        _kernels.gram_peel_block = saved


@needs_numba
@pytest.mark.parametrize("name,l,lam", [("A2", 5, None), ("B2", 7, (2, -1)), ("A2", "generic", (1, 3))])
def test_gram_peel_agree(name, l, lam):
    assert _gram_with("numpy", name, l, lam) == _gram_with("numba", name, l, lam)


def test_window_is_large_enough_in_generic_mode():
    F = FreeAlgebra(preset("G2"), make_ring("generic"))
    L, offset, modulus = _window(F, 4, (5, -5))
    assert modulus == 0 and L == 2 * offset + 1
    # gram_counts raises OverflowError if anything falls off the window
    gram_matrix(F, (2, 2), (5, -5))


def test_env_flag_selects_numpy_fallback():
    code = (
        "import json; from shapovalov import _kernels; "
        "from shapovalov.cartan import preset; from shapovalov.scalars import make_ring; "
        "from shapovalov.free_algebra import FreeAlgebra; "
        "F = FreeAlgebra(preset('A2'), make_ring(5)); "
        "G = F.gram_matrix((2, 2)); P = F.gram_matrix_perm((2, 2)); "
        "print(json.dumps({'numba': _kernels.USING_NUMBA, "
        "'gram': [[F.ring.serialize(x) for x in r] for r in G], 'perm_equal': G == P}))"
    )
    env = dict(os.environ, SHAPOVALOV_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    res = json.loads(out.stdout)
    assert res["numba"] is False
    assert res["perm_equal"]
    F = FreeAlgebra(preset("A2"), make_ring(5))
    assert res["gram"] == [[F.ring.serialize(x) for x in r] for r in F.gram_matrix((2, 2))]
