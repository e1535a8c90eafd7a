import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eqalg.fgab import FgAbGroup
from eqalg.graded import (
    Generator,
    GradedAbGroup,
    MonomialRing,
    UnboundedSliceError,
    concentrated,
    crt_consistent,
    graded_tor,
    p_valuation,
    phi_thr_f2_dims,
    phi_thr_z_dims,
    polynomial_mod,
    presentation_resolution,
    thh_z_table,
    thr_fp_ring,
    weight_slice,
    z_bar_epsilon_resolution,
)


def test_tor_of_coprime_cyclics_is_trivial():
    A = concentrated((1, [[2]]), 0)
    B = concentrated((1, [[3]]), 0)
    t = graded_tor(A, B, 0)
    assert t.tor0[0].order == 1 and t.tor1[0].order == 1 and t.agree


def test_tor1_with_free_is_trivial():
    A = polynomial_mod(0, 1, 4)
    B = polynomial_mod(5, 2, 4)
    t = graded_tor(A, B, 4)
    assert all(G.order == 1 for G in t.tor1.degrees)
    assert [G.invariants()["torsion"] for G in t.tor0.degrees] == [[5], [5], [5, 5], [5, 5], [5, 5, 5]]


@given(st.integers(0, 30), st.integers(0, 30))
def test_tor_of_cyclics(a, b):
    A, B = concentrated((1, [[a]]), 0), concentrated((1, [[b]]), 0)
    t = graded_tor(A, B, 0)
    g = math.gcd(a, b)
    assert t.tor0[0].same_type(FgAbGroup.cyclic(g) if g else FgAbGroup.free(1))
    if a and b:
        assert t.tor1[0].same_type(FgAbGroup.cyclic(g))
    else:
        assert t.tor1[0].order == 1
    assert t.agree


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=0, max_size=3), st.integers(0, 12))
def test_sheared_presentation_agrees(rels, m):
    A = GradedAbGroup.from_presentations(1, {1: (3, rels)})
    B = polynomial_mod(m, 1, 1)
    assert not presentation_resolution(A).check_resolves(A)
    assert graded_tor(A, B, 1).agree


def test_z_bar_epsilon_resolves_f2_polynomial():
    A = polynomial_mod(2, 2, 10)
    assert z_bar_epsilon_resolution(10).check_resolves(A) == []
    assert z_bar_epsilon_resolution(10).check_resolves(polynomial_mod(3, 2, 10)) != []


def test_window_error():
    A = polynomial_mod(2, 2, 4)
    with pytest.raises(ValueError):
        graded_tor(A, A, 5)


def test_phi_z_examples():
    r = phi_thr_z_dims(20)
    assert r.agree
    assert r.dims[5] == 3
    assert r.dims == [n // 2 + 1 for n in range(21)]
    assert phi_thr_z_dims(0).dims == [1]


def test_phi_f2():
    r = phi_thr_f2_dims(12)
    assert r.agree and r.dims == list(range(1, 14))
    odd = phi_thr_f2_dims(6, p=3)
    assert odd.dims == [0] * 7 and odd.notes


def test_slice_examples():
    R = thr_fp_ring(3)
    assert R.count(4, 0) == 1
    assert R.count(2, 0) == 0
    assert thr_fp_ring(2).count(2, 0) == 2


@pytest.mark.parametrize("p", [3, 5, 7])
def test_slice_four_periodic_in_weight(p):
    R = thr_fp_ring(p)
    for k in range(-3, 1):
        assert weight_slice(R, k, 12) == weight_slice(R, k + 4, 12)


def test_slice_counts_match_enumeration():
    for p in (2, 3):
        R = thr_fp_ring(p)
        for n in range(0, 9):
            for k in range(-4, 5):
                assert R.count(n, k) == len(R.monomials(n, k))


def test_unbounded_slice():
    R = MonomialRing(3, [Generator("u", (0, 2), invertible=True), Generator("v", (0, 2), invertible=True)])
    with pytest.raises(UnboundedSliceError):
        R.count(0, 0)


def test_empty_ring_counts():
    R = MonomialRing(2, [])
    assert R.count(0) == 1 and R.count(3) == 0


def test_thh_z_examples():
    assert thh_z_table(0).same_type(FgAbGroup.free(1))
    assert thh_z_table(2).order == 1
    assert thh_z_table(5).same_type(FgAbGroup.cyclic(3))
    assert thh_z_table(11, 2).same_type(FgAbGroup.cyclic(2))
    assert thh_z_table(15, 2).same_type(FgAbGroup.cyclic(8))
    assert thh_z_table(11, 5).order == 1
    assert thh_z_table(9, 3).order == 1
    assert thh_z_table(11, 3).same_type(FgAbGroup.cyclic(3))
    with pytest.raises(ValueError):
        thh_z_table(-1)


@given(st.integers(1, 200))
def test_crt(k):
    assert crt_consistent(k)


@given(st.integers(1, 10**6), st.sampled_from([2, 3, 5, 7]))
def test_p_valuation(k, p):
    v = p_valuation(k, p)
    assert k % p**v == 0 and k % p ** (v + 1) != 0
