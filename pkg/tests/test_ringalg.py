import itertools

import pytest

from eqalg.fgab import FgAbGroup, GroupHom, canonicalize
from eqalg.intlinalg import zeros
from eqalg.ringalg import (
    PresRing,
    builtin_monoid,
    commutator_quotient,
    cyclic_group,
    flip_square,
    gaussian_integers,
    integers,
    matrix_ring,
    monoid_from_table,
    monoid_ring,
    product_monoid,
    residue_ring,
    ring_from_json,
    ring_to_json,
    trivial_monoid,
    validate_monoid,
    validate_ring,
)

ALL_GROUPS = ["c2", "c3", "c4", "c2xc2", "c5", "s3", "c6", "c7", "c8", "c4xc2", "c2^3", "d4", "q8"]


def test_validate_ring_examples():
    assert validate_ring(integers()).ok
    assert validate_ring(gaussian_integers()).ok
    assert validate_ring(matrix_ring(2)).ok
    bad = PresRing(FgAbGroup.free(1), [[(1,)]], (0,))
    rep = validate_ring(bad)
    assert "unit" in rep.laws()


def test_validate_ring_catches_bad_involution():
    Z2 = FgAbGroup.free(2)
    R = gaussian_integers().with_involution(GroupHom(Z2, Z2, [[1, 0], [0, 2]]))
    assert "involution" in validate_ring(R).laws()


def test_presentation_data_is_checked():
    G = FgAbGroup.cyclic(2)
    assert validate_ring(PresRing.from_presentation(G, [[[1]]], [1])).ok
    # Z/2 presented on two generators with g0 = g1, but products disagree
    K = canonicalize(2, [[1, -1], [2, 0]])
    R = PresRing.from_presentation(K, [[[1, 0], [1, 0]], [[0, 0], [1, 0]]], [1, 0])
    assert "well-defined" in validate_ring(R).laws()
    Z = FgAbGroup.free(1)
    assert "unit" in validate_ring(PresRing.from_presentation(Z, [[[2]]], [1])).laws()


def test_commutator_quotient_examples():
    cq = commutator_quotient(integers())
    assert cq.projection.is_isomorphism()
    cq = commutator_quotient(matrix_ring(2))
    assert cq.group.same_type(FgAbGroup.free(1))
    E = matrix_ring(2).carrier
    # E11 and E22 have the same class, E12 and E21 vanish: the trace
    assert cq.projection(E.gen(0)) == cq.projection(E.gen(3))
    assert cq.group.is_zero(cq.projection(E.gen(1))) and cq.group.is_zero(cq.projection(E.gen(2)))
    cq = commutator_quotient(monoid_ring(integers(), builtin_monoid("s3")))
    assert cq.group.same_type(FgAbGroup.free(3))


def test_flip_square_examples():
    for S in (integers(), residue_ring(2)):
        F = flip_square(S)
        assert F.tau.is_isomorphism() and F.tau.equals(F.ring.carrier.identity_hom())
    F = flip_square(monoid_ring(integers(), cyclic_group(2)))
    assert F.ring.carrier.same_type(FgAbGroup.free(4))
    T = F.tensor
    a, b = F.base.carrier.gen(0), F.base.carrier.gen(1)
    assert F.tau(T.elem(a, b)) == T.elem(b, a)
    assert F.tau(T.elem(a, a)) == T.elem(a, a)
    assert validate_ring(F.ring).ok


def test_monoid_ring_examples():
    R = monoid_ring(integers(), trivial_monoid())
    assert R.carrier.same_type(FgAbGroup.free(1)) and validate_ring(R).ok
    R = monoid_ring(integers(), cyclic_group(2))
    assert R.carrier.same_type(FgAbGroup.free(2))
    assert R.w.equals(R.carrier.identity_hom())
    R = monoid_ring(residue_ring(2), cyclic_group(3))
    G = R.carrier
    assert G.same_type(FgAbGroup.from_invariants(0, [2, 2, 2]))
    one, g, g2 = (G.canon([int(k == j) for j in range(3)]) for k in range(3))
    assert R.w(g) == g2 and R.w(g2) == g and R.w(one) == one
    assert validate_ring(R).ok


@pytest.mark.parametrize("name", ALL_GROUPS + ["trivial", "zero"])
def test_builtin_monoids_are_valid(name):
    M = builtin_monoid(name)
    assert validate_monoid(M).ok
    assert validate_ring(monoid_ring(integers(), M)).ok


def test_validate_monoid_catches_faults():
    M = monoid_from_table(["1", "a"], [[0, 1], [1, 0]], iota=[1, 0])
    assert "anti-multiplicative" in validate_monoid(M).laws()
    N = monoid_from_table(["1", "a", "b"], [[0, 1, 2], [1, 2, 0], [2, 1, 2]])
    assert "associativity" in validate_monoid(N).laws()


def test_unknown_group_name():
    with pytest.raises(ValueError):
        builtin_monoid("x9")


def test_ring_json_roundtrip():
    R = gaussian_integers()
    S = ring_from_json(ring_to_json(R))
    assert S.table == R.table and S.unit == R.unit and S.w.equals(R.w)


SMALL = ["trivial", "c2", "c3", "c4", "c2xc2"]


@pytest.mark.parametrize("base", ["Z", "F2"])
@pytest.mark.parametrize("m,n", list(itertools.product(SMALL, SMALL))[::2])
def test_monoid_ring_of_product(base, m, n):
    R = integers() if base == "Z" else residue_ring(2)
    M, N = builtin_monoid(m), builtin_monoid(n)
    A = monoid_ring(R, product_monoid(M, N))
    RM = monoid_ring(R, M)
    B = monoid_ring(RM, N)
    r, rk = R.rank, RM.rank
    # basis element r_i * (a, b) goes to (r_i * a) * b
    mat = zeros(B.carrier.ngens, A.carrier.ngens)
    for a, b, i in itertools.product(range(M.size), range(N.size), range(r)):
        inner = RM.carrier.canon([int(k == a * r + i) for k in range(RM.carrier.ngens)])
        for k, c in enumerate(inner):
            mat[b * rk + k, (a * N.size + b) * r + i] = c
    f = GroupHom.from_presentation(A.carrier, B.carrier, mat)
    assert f.is_isomorphism()
    gens = A.carrier.gens()
    for x, y in itertools.product(gens, repeat=2):
        assert f(A.mul(x, y)) == B.mul(f(x), f(y))
    assert f(A.unit) == B.unit
    for x in gens:
        assert f(A.w(x)) == B.w(f(x))


@pytest.mark.parametrize("S", [monoid_ring(residue_ring(2), cyclic_group(2)), monoid_ring(residue_ring(3), cyclic_group(3)), residue_ring(4)])
def test_flip_orbit_counts(S):
    F = flip_square(S)
    r = S.rank
    p = S.carrier.torsion[0]
    orbits = r + r * (r - 1) // 2
    o = F.orbits
    assert o.invariants.order == p**orbits
    assert o.coinvariants.order == p**orbits
