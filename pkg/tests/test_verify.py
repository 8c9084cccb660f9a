import pytest

from shapovalov.cartan import preset
from shapovalov.free_algebra import FreeAlgebra
from shapovalov.scalars import make_ring
from shapovalov.verify import run_suite, suite_coaction


@pytest.mark.parametrize("name,weights", [("A2", [(1, 0)]), ("A1xA1", [(2, 1)]), ("B2", [(2, -2)])])
def test_all_suites_pass(name, weights):
    F = FreeAlgebra(preset(name), make_ring(5))
    rows = run_suite("all", F, weights, 3)
    assert rows and all(r["pass"] for r in rows), [r for r in rows if not r["pass"]]


def test_corrupted_coaction_fails_with_counterexample():
    F = FreeAlgebra(preset("A1"), make_ring(5))
    rows = suite_coaction(F, [(1,)], 3, corrupt=True)
    assert not any(r["pass"] for r in rows)
    assert all("counterexample" in r for r in rows)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope", FreeAlgebra(preset("A1"), make_ring(5)), [(0,)], 2)
