import pytest
from hypothesis import given, strategies as st

from shapovalov import linalg
from shapovalov.scalars import CyclotomicField, LaurentRing

K = CyclotomicField(5)
R = LaurentRing()


@st.composite
def matrix(draw, ring, max_n=4):
    rows = draw(st.integers(1, max_n))
    cols = draw(st.integers(1, max_n))
    entries = st.tuples(st.integers(-2, 2), st.integers(-3, 3))
    M = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            c, e = draw(entries)
            row.append(ring.zeta(e) * ring.coerce(c))
        M.append(row)
    return M


@given(matrix(K))
def test_rank_nullity(M):
    cols = len(M[0])
    r = linalg.rank(K, M)
    ns = linalg.nullspace(K, M, cols)
    assert r + len(ns) == cols
    for v in ns:
        assert all(not x for row in linalg.matmul(K, M, [[x] for x in v]) for x in row)
    assert linalg.bareiss_rank(K, M) == r


@given(matrix(R))
def test_bareiss_rank_matches_specialization_bound(M):
    # specializing q -> zeta_5 can only lower the rank
    Mz = [[x.evaluate(K.zeta(1)) for x in row] for row in M]
    assert linalg.rank(K, Mz) <= linalg.rank(R, M)


@given(st.data())
def test_det_multiplicative(data):
    n = data.draw(st.integers(1, 3))
    A = data.draw(matrix(R, n).filter(lambda M: len(M) == len(M[0])))
    B = [[R.zeta(i - j) * R.coerce(i + j + 1) for j in range(len(A))] for i in range(len(A))]
    assert linalg.det(R, linalg.matmul(R, A, B)) == linalg.det(R, A) * linalg.det(R, B)


def test_det_examples_and_guard():
    M = [[K.one, K.zeta(1)], [K.zeta(1), K.one]]
    assert linalg.det(K, M) == K.one - K.zeta(2)
    assert linalg.det(K, []) == K.one
    with pytest.raises(linalg.MatrixTooLarge):
        linalg.det(K, linalg.identity(K, 3), max_dim=2)
    with pytest.raises(TypeError):
        linalg.rref(R, [[R.one]])


def test_kron_and_block_diag():
    A = [[K.one, K.zeta(1)], [K.zero, K.one]]
    I = linalg.identity(K, 2)
    Kr = linalg.kron(K, A, I)
    assert len(Kr) == 4 and Kr[0][2] == K.zeta(1) and Kr[1][3] == K.zeta(1)
    D = linalg.block_diag(K, [A, [[K.coerce(2)]]])
    assert len(D) == 3 and D[2][2] == K.coerce(2) and not D[0][2]
