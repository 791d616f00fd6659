import pytest

from foamcat import relations
from foamcat.relations import SUITES, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    S = run_suite(name)
    assert S.checked > 0
    assert S.failures == []


@pytest.mark.parametrize("name,kw", [("qrep", {"n": 2, "m": 3}), ("nilhecke", {})])
def test_sign_injection_fails(name, kw):
    S = run_suite(name, inject="sign", **kw)
    assert S.failures


def test_injection_unavailable_elsewhere():
    with pytest.raises(ValueError):
        run_suite("sl2", inject="sign")


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_nilhecke_small_window_still_checks_polynomials():
    S = run_suite("nilhecke", n=2, m=2, N=4)
    assert S.failures == [] and S.checked > 100


@pytest.mark.parametrize("strands", [2, 3, 4])
def test_divided_differences(strands):
    assert relations.nilhecke_poly(strands).failures == []


def test_nested_theta_table_is_antisymmetric_under_swap():
    T = relations.nested_theta_table()
    assert T == {(0, 3): 0, (1, 2): 1, (2, 1): -1, (3, 0): 0}
    assert all(T[(a, b)] == -T[(b, a)] for a, b in T)
