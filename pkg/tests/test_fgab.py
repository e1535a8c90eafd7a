import itertools
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eqalg.fgab import (
    FgAbGroup,
    GroupHom,
    WellDefinednessError,
    canonicalize,
    cokernel,
    direct_sum,
    group_from_json,
    image,
    invariants_and_coinvariants,
    kernel,
    quotient,
    tensor,
    tor1,
)
from eqalg.intlinalg import imat, smith


def inv(G):
    return (G.free_rank, list(G.torsion))


def test_canonicalize_examples():
    assert inv(canonicalize(2, [])) == (2, [])
    assert inv(canonicalize(2, [[2, 4], [4, 8]])) == (1, [2])
    assert canonicalize(1, [[1]]).is_trivial()


def test_kernel_examples():
    Z, Z4 = FgAbGroup.free(1), FgAbGroup.cyclic(4)
    assert kernel(GroupHom(Z, Z, [[2]]))[0].is_trivial()
    K, incl = kernel(GroupHom(Z4, Z4, [[2]]))
    assert inv(K) == (0, [2])
    assert sorted(incl(x) for x in K.elements()) == [(0,), (2,)]
    K, incl = kernel(GroupHom(Z, Z, [[0]]))
    assert inv(K) == (1, []) and incl.is_isomorphism()


def test_cokernel_examples():
    Z = FgAbGroup.free(1)
    assert inv(cokernel(GroupHom(Z, Z, [[2]]))[0]) == (0, [2])
    assert cokernel(GroupHom(Z, Z, [[1]]))[0].is_trivial()
    Z2 = FgAbGroup.free(2)
    Q, p = cokernel(GroupHom(Z2, Z2, [[2, 0], [0, 3]]))
    assert inv(Q) == (0, [6]) and p.is_surjective()


def test_ill_defined_hom_is_rejected():
    Z2, Z = FgAbGroup.cyclic(2), FgAbGroup.free(1)
    h = GroupHom(Z2, Z, [[1]], check=False)
    assert not h.is_well_defined()
    with pytest.raises(WellDefinednessError):
        kernel(h)
    with pytest.raises(WellDefinednessError):
        GroupHom(Z2, Z, [[1]])


def test_tensor_and_tor_examples():
    C = FgAbGroup.cyclic
    assert tensor(C(2), C(3)).group.is_trivial()
    G = canonicalize(3, [[2, 0, 0], [0, 6, 0]])
    assert tensor(FgAbGroup.free(1), G).group.same_type(G)
    assert inv(tensor(C(4), C(6)).group) == (0, [2])
    assert tor1(FgAbGroup.free(1), G).is_trivial()
    assert inv(tor1(C(2), C(2))) == (0, [2])
    assert inv(tor1(C(4), C(6))) == (0, [2])


def test_invariants_and_coinvariants_examples():
    Z = FgAbGroup.free(1)
    r = invariants_and_coinvariants(Z, Z.identity_hom())
    assert inv(r.invariants) == (1, []) and inv(r.coinvariants) == (1, [])
    assert r.norm.matrix_list() == [[2]]
    Z2 = FgAbGroup.free(2)
    r = invariants_and_coinvariants(Z2, GroupHom(Z2, Z2, [[0, 1], [1, 0]]))
    assert inv(r.invariants) == (1, []) and inv(r.coinvariants) == (1, [])
    x = r.coinvariants.gen(0)
    y = r.inclusion(r.norm(x))
    assert y[0] == y[1] and abs(y[0]) == 1
    r = invariants_and_coinvariants(Z, GroupHom(Z, Z, [[-1]]))
    assert r.invariants.is_trivial() and inv(r.coinvariants) == (0, [2])


def test_invariants_need_an_involution():
    Z = FgAbGroup.free(1)
    with pytest.raises(ValueError):
        invariants_and_coinvariants(Z, GroupHom(Z, Z, [[2]]))


def test_json_forms_agree():
    a = group_from_json({"generators": 2, "relations": [[2, 4], [4, 8]]})
    b = group_from_json({"free_rank": 1, "torsion": [2]})
    assert a.same_type(b)


def test_direct_sum_handles_trivial_summands():
    S, inj, proj = direct_sum(canonicalize(2, [[1, 0], [0, 1]]), FgAbGroup.cyclic(3))
    assert inv(S) == (0, [3])
    assert (proj[1] @ inj[1]).is_isomorphism()


# -- properties ---------------------------------------------------------------------------

small = st.integers(-10, 10)


@st.composite
def int_matrices(draw, max_rows=4, max_cols=4):
    m = draw(st.integers(0, max_rows))
    n = draw(st.integers(1, max_cols))
    return [[draw(small) for _ in range(n)] for _ in range(m)], n


@given(int_matrices())
def test_smith_normal_form(data):
    rows, n = data
    if not rows:
        return
    A = imat(rows, n)
    s = smith(A)
    assert (s.U.dot(A).dot(s.V) == s.D).all()
    assert round(abs(float(_det(s.U)))) == 1 and round(abs(float(_det(s.V)))) == 1
    nz = [d for d in s.diag if d]
    assert all(d > 0 for d in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert all(s.D[i, j] == 0 for i in range(A.shape[0]) for j in range(n) if i != j)


def _det(M):
    import sympy

    return sympy.Matrix([[int(x) for x in row] for row in M]).det()


@given(int_matrices())
def test_canonical_form_is_invariant_factor_form(data):
    rows, n = data
    G = canonicalize(n, rows)
    assert all(d >= 2 for d in G.torsion)
    assert all(G.torsion[i + 1] % G.torsion[i] == 0 for i in range(len(G.torsion) - 1))
    # user -> canonical -> user is the identity modulo the relations
    for k in range(n):
        e = [int(k == j) for j in range(n)]
        assert G.canon(G.lift(G.canon(e))) == G.canon(e)


@st.composite
def finite_hom(draw):
    def group():
        k = draw(st.integers(1, 2))
        return canonicalize(k, [[draw(st.integers(1, 8)) * int(i == j) for j in range(k)] for i in range(k)])

    A, B = group(), group()
    if A.rank == 0 or B.rank == 0:
        return A, B, GroupHom(A, B, [[0] * A.rank for _ in range(B.rank)])
    # random images of the generators, accepted only if well defined
    M = [[draw(st.integers(0, 8)) for _ in range(A.rank)] for _ in range(B.rank)]
    h = GroupHom(A, B, M, check=False)
    if not h.is_well_defined():
        h = GroupHom(A, B, [[0] * A.rank for _ in range(B.rank)])
    return A, B, h


@given(finite_hom())
def test_kernel_image_orders(data):
    A, B, h = data
    assert A.order <= 256
    K, incl = kernel(h)
    I, _ = image(h)
    assert A.order == K.order * I.order
    assert (h @ incl).is_zero()
    by_enumeration = sum(1 for x in A.elements() if B.is_zero(h(x)))
    assert by_enumeration == K.order
    Q, p = cokernel(h)
    assert (p @ h).is_zero() and p.is_surjective()
    assert B.order == Q.order * I.order


def test_cyclic_gcd_formulas():
    C = FgAbGroup.cyclic
    for a, b in itertools.product(range(1, 31), repeat=2):
        g = gcd(a, b)
        assert tensor(C(a), C(b)).group.same_type(C(g)), (a, b)
        assert tor1(C(a), C(b)).same_type(C(g)), (a, b)


@given(st.integers(1, 3), st.lists(st.integers(1, 6), min_size=0, max_size=3))
def test_norm_then_projection_is_one_plus_t(r, tors):
    A = canonicalize(r + len(tors), [[d * int(i == j) for j in range(r + len(tors))] for i, d in enumerate(tors)])
    # the swap of the first two free coordinates, or identity
    if A.free_rank >= 2:
        n = A.rank
        M = [[int(i == j) for j in range(n)] for i in range(n)]
        a, b = n - 1, n - 2
        M[a][a] = M[b][b] = 0
        M[a][b] = M[b][a] = 1
        t = GroupHom(A, A, M)
    else:
        t = A.identity_hom()
    r_ = invariants_and_coinvariants(A, t)
    for x in A.gens():
        cls = r_.projection(x)
        lhs = r_.projection(r_.inclusion(r_.norm(cls)))
        rhs = r_.projection(A.add(x, t(x)))
        assert lhs == rhs


def test_quotient_by_elements():
    Q, p = quotient(FgAbGroup.free(2), [(2, 0), (0, 3)])
    assert inv(Q) == (0, [6])
