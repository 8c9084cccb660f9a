import pytest

from shapovalov.cartan import degrees_up_to, preset
from shapovalov.free_algebra import FreeAlgebra
from shapovalov.hochschild import (
    ConfigError,
    HochschildComplex,
    NotARefinement,
    WindowExceeded,
    compositions,
    enumerate_rho,
    homology_table,
    orders_refining,
    refinement_basis,
    refinement_basis_set,
    s_morphism,
)
from shapovalov.scalars import make_ring

A1 = FreeAlgebra(preset("A1"), make_ring(5))
A2 = FreeAlgebra(preset("A2"), make_ring(5))
A3 = FreeAlgebra(preset("A3"), make_ring("generic"))


def test_compositions():
    assert compositions((2,), 1, 1) == [((1,), (1,)), ((2,), (0,))]
    assert compositions((0,), 1, 1) == []
    assert compositions((0,), 0, 1) == [((0,),)]
    assert len(compositions((1, 1), 2, 1)) == 2


def test_degree_zero_has_only_r0():
    H = HochschildComplex(A2, [(1, 0)], "f", "irreducible", 3)
    assert H.homology((0, 0)) == [{"r": 0, "nu": [0, 0], "dim_C": 1, "dim_H": 1}]


@pytest.mark.parametrize("F,weights", [(A1, [(2,)]), (A2, [(1, -1)]), (A2, [(1, 0), (0, 2)]), (A3, [(0, 1, 0)])])
def test_free_complex_is_a_resolution(F, weights):
    H = HochschildComplex(F, weights, "F", "verma", 3)
    for nu in degrees_up_to(F.rank, 3):
        assert H.d_squared_zero(nu)
        rows = H.homology(nu)
        assert all(r["dim_H"] == 0 for r in rows if r["r"] >= 1)
        # H_0 = coinvariants: k at nu = 0 for one factor; V (x) W = F (x) W for two
        expected = (0 if any(nu) else 1) if len(weights) == 1 else len(F.words(nu))
        assert rows[0]["dim_H"] == expected


def test_quotient_complex_d_squared_and_euler():
    H = HochschildComplex(A2, [(1, 0)], "f", "irreducible", 4)
    for nu in degrees_up_to(2, 4):
        assert H.d_squared_zero(nu)
        rows = H.homology(nu)
        assert sum((-1) ** r["r"] * r["dim_C"] for r in rows) == sum((-1) ** r["r"] * r["dim_H"] for r in rows)


def test_truncated_polynomial_tor():
    """Tor over C[x]/x^5 with the trivial module: one class in each degree, at 0,1,5,6,10,11,..."""
    H = HochschildComplex(A1, [(0,)], "f", "irreducible", 11)
    nonzero = [(r["r"], r["nu"][0]) for r in homology_table(H, 11) if r["dim_H"]]
    assert nonzero == [(0, 0), (1, 1), (2, 5), (3, 6), (4, 10), (5, 11)]


def test_s_morphism_A2():
    for row in s_morphism(A2, [(1, 0)], (1, 1)):
        assert row["commutes"]
        assert row["rank_S"] == row["dim_C_f"]
        assert row["image_d_rank"] == row["rank_d_f"]


def test_refinement_bases_equal_cell_bases():
    H = HochschildComplex(A3, [(0, 0, 0)], "F", "verma", 3)
    Hn = HochschildComplex(A3, [(0, 0, 0), (1, 0, 0)], "F", "verma", 3)
    for r in range(4):
        assert sorted(refinement_basis_set(r, 1, (0, 1, 2))) == sorted(H.cell_basis(r, (1, 1, 1)))
        assert sorted(refinement_basis_set(r, 2, (0, 1, 2))) == sorted(Hn.cell_basis(r, (1, 1, 1)))


def test_refinement_helpers():
    assert enumerate_rho(1, 1, (0,)) == [(1,)]
    assert len(enumerate_rho(2, 1, (0, 1))) == 2
    assert orders_refining((1, 0)) == [(2, 1)]
    assert len(orders_refining((0, 0, 1))) == 2
    assert refinement_basis((1, 0), (2, 1), (5, 6), 1, 1) == ((5,), (6,))
    with pytest.raises(NotARefinement):
        refinement_basis((1, 0), (1, 2), (5, 6), 1, 1)


def test_config_errors_and_window():
    with pytest.raises(ConfigError):
        HochschildComplex(A1, [(0,)], "f", "verma")
    with pytest.raises(ConfigError):
        HochschildComplex(FreeAlgebra(preset("A1"), make_ring("generic")), [(0,)], "F", "irreducible")
    with pytest.raises(ConfigError):
        HochschildComplex(A1, [(0,)], "g", "verma")
    H = HochschildComplex(A1, [(0,)], "F", "verma", 2)
    with pytest.raises(WindowExceeded):
        H.cell_basis(1, (3,))
