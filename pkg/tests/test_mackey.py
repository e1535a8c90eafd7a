import itertools

import pytest

from eqalg.fgab import FgAbGroup, GroupHom
from eqalg.mackey import (
    MackeyMorphism,
    box,
    box_over_green,
    burnside,
    burnside_hermitian,
    burnside_mackey,
    burnside_norm,
    constant_mackey,
    hermitian_from_json,
    hermitian_witt_actions,
    mackey_from_json,
    random_mackey,
    same_type,
    swap_map,
    two_inverted_map,
    unit_map_left,
    unit_map_right,
    unit_module,
    validate_green,
    validate_hermitian,
    validate_mackey,
    validate_module,
    witt_green,
)
from eqalg.mackey.core import hermitian_from_ring
from eqalg.mackey.witt import WittRing
from eqalg.ringalg import builtin_monoid, gaussian_integers, integers, matrix_ring, monoid_ring, residue_ring


def test_validate_mackey_examples():
    assert validate_mackey(burnside_mackey()).ok
    assert validate_mackey(constant_mackey()).ok
    bad = constant_mackey().with_maps(tran=[[3]])
    assert validate_mackey(bad).laws() == {"double coset"}


def test_burnside_green_and_hermitian():
    assert validate_green(burnside()).ok
    assert validate_hermitian(burnside_hermitian()).ok
    M = burnside_mackey()
    assert M.res(M.tran((1,))) == (2,)


def test_burnside_norm():
    R = burnside().ring_fix
    assert burnside_norm(2) == (2, 1)
    H = burnside_hermitian()
    for n in range(-5, 6):
        assert H.norm((n,)) == burnside_norm(n)
        for m in range(-5, 6):
            assert burnside_norm(n * m) == R.mul(burnside_norm(n), burnside_norm(m))
            # (n + m) . 1 = n . 1 + m . 1 + tran(n m)
            lhs = burnside_norm(n + m)
            rhs = R.carrier.add(R.carrier.add(burnside_norm(n), burnside_norm(m)), H.mackey.tran((n * m,)))
            assert lhs == rhs


def test_hermitian_from_ring_examples():
    H = hermitian_from_ring(integers())
    assert H.mackey.tran.matrix_list() == [[2]]
    assert validate_hermitian(H).ok
    H = hermitian_from_ring(gaussian_integers())
    M = H.mackey
    assert M.level_fix.same_type(FgAbGroup.free(1))
    for a, b in itertools.product(range(-3, 4), repeat=2):
        assert M.res(M.tran((a, b))) == (2 * a, 0)
    assert validate_hermitian(H).ok
    H = hermitian_from_ring(residue_ring(2))
    assert H.mackey.tran.is_zero()


def test_hermitian_requires_involution():
    R = integers().with_involution(None)
    with pytest.raises(ValueError):
        hermitian_from_ring(R)


def test_hermitian_json_roundtrip():
    H = burnside_hermitian()
    obj = H.to_json()
    K = hermitian_from_json(obj)
    assert K.action == H.action and K.unit_fix == H.unit_fix
    assert validate_hermitian(K).ok


def test_mackey_json_roundtrip():
    M = box(constant_mackey(2), burnside_mackey()).result
    N = mackey_from_json(M.to_json())
    assert same_type(M, N) and N.res.equals(M.res) and N.tran.equals(M.tran)


def test_mackey_json_checks_relations():
    obj = {"level_e": {"generators": 1, "relations": [[2]]}, "level_fix": {"free_rank": 1}, "res": [[1]], "tran": [[1]], "w": [[1]]}
    with pytest.raises(ValueError):
        mackey_from_json(obj)


# -- Witt vectors ---------------------------------------------------------------------------


def test_witt_addition_example():
    W = WittRing(integers())
    one = W.N((1,))
    assert W.add(one, one) == ((2,), (-1,))


@pytest.mark.parametrize("S", [integers(), residue_ring(2), residue_ring(3), residue_ring(4), gaussian_integers()])
def test_witt_norm_and_ghosts(S):
    W = WittRing(S)
    gens = S.carrier.gens()
    for a in gens:
        assert W.w0(W.N(a)) == S.carrier.reduce(a)
        for b in gens:
            assert W.mul(W.N(a), W.N(b)) == W.N(S.mul(a, b))
    elems = [W.N(a) for a in gens] + [W.V(u) for u in W.T.gens()]
    for x, y in itertools.product(elems, repeat=2):
        assert W.w0(W.mul(x, y)) == S.mul(W.w0(x), W.w0(y))
        assert W.w1(W.mul(x, y)) == W.flip.mul(W.w1(x), W.w1(y))
        assert W.w1(W.add(x, y)) == W.T.add(W.w1(x), W.w1(y))
    for x, y, z in itertools.product(elems, repeat=3):
        assert W.mul(W.mul(x, y), z) == W.mul(x, W.mul(y, z))
        assert W.add(W.add(x, y), z) == W.add(x, W.add(y, z))
    for x in elems:
        assert W.mul(W.one(), x) == x == W.mul(x, W.one())
    for u, v in itertools.product(W.T.gens(), repeat=2):
        assert W.add(W.V(u), W.V(v)) == W.V(W.T.add(u, v))


@pytest.mark.parametrize("p,want", [(2, [4]), (3, [3, 3]), (5, [5, 5])])
def test_witt_green_finite_fields(p, want):
    wg = witt_green(residue_ring(p), finite_decomposition=True)
    assert wg.decomposition == want
    assert validate_green(wg.green).ok


def test_witt_green_decompose_needs_finite_ring():
    with pytest.raises(ValueError):
        witt_green(integers(), finite_decomposition=True)


def test_two_inverted_is_a_ring_isomorphism():
    S = residue_ring(3)
    W = WittRing(S)
    ghost = two_inverted_map(W)
    inv = W.flip.orbits
    elems = list(W.elements())
    images = set()
    for x in elems:
        a, u = ghost(x)
        assert W.flip.tau(u) == u
        images.add((a, u))
    assert len(images) == len(elems) == S.carrier.order * inv.invariants.order
    for x, y in itertools.product(elems, repeat=2):
        assert ghost(W.mul(x, y)) == (S.mul(x[0], y[0]), W.flip.mul(ghost(x)[1], ghost(y)[1]))


@pytest.mark.parametrize("S,window", [(integers(), 16), (residue_ring(3), None), (residue_ring(5), None)])
def test_ghosts_jointly_injective(S, window):
    W = WittRing(S)
    if window:
        elems = [W.element((a,), (c,)) for a in range(-window, window) for c in range(-window, window)]
    else:
        elems = list(W.elements())
    seen = {}
    for x in elems:
        key = (W.w0(x), W.w1(x))
        assert seen.setdefault(key, x) == x


# -- Hermitian additivity -----------------------------------------------------------------

FINITE_HERMITIAN = [
    monoid_ring(residue_ring(2), builtin_monoid("c2")),
    monoid_ring(residue_ring(2), builtin_monoid("c2xc2")),
    monoid_ring(residue_ring(4), builtin_monoid("c3")),
    monoid_ring(residue_ring(2), builtin_monoid("s3")),
]


@pytest.mark.parametrize("R", FINITE_HERMITIAN)
def test_action_independent_of_decomposition(R, rng):
    H = hermitian_from_ring(R)
    assert validate_hermitian(H).ok
    E, F, M = H.level_e, H.level_fix, H.mackey
    elems = list(E.elements())
    assert len(elems) <= 64
    for a in elems:
        b = rng.choice(elems)
        c = E.sub(a, b)
        for x in F.gens():
            split = F.add(F.add(H.act(b, x), H.act(c, x)), M.tran(R.mul(R.mul(b, M.res(x)), M.w(c))))
            assert H.act(a, x) == split
            neg = F.add(F.neg(H.act(a, x)), M.tran(R.mul(R.mul(a, M.res(x)), M.w(a))))
            assert H.act(E.neg(a), x) == neg


def test_hermitian_torsion_well_definedness():
    # on Z/2 the rule 1 . 1 = 1 is fine; a Z/4 action table claiming 1 . x = x
    # with tran = 0 forces 2 . x = 2x + tran(...) = 0 consistency
    H = hermitian_from_ring(residue_ring(4))
    assert validate_hermitian(H).ok


# -- modules and box products -----------------------------------------------------------------


def test_witt_actions_examples():
    H = hermitian_from_ring(integers())
    left, right = hermitian_witt_actions(H)
    W = left.green
    assert validate_module(left).ok and validate_module(right).ok
    wg = witt_green(integers())
    for a in range(-3, 4):
        alpha = wg.witt.to_group(wg.witt.N((a,)))
        assert left.on_fix(alpha, (1,)) == (a * a,)
    B = burnside_hermitian()
    left, _ = hermitian_witt_actions(B)
    wgB = witt_green(B.ring_e)
    one = wgB.witt.to_group(wgB.witt.one())
    for x in B.level_fix.gens():
        assert left.on_fix(one, x) == x
    assert W is not None


def test_burnside_is_a_unit():
    B = burnside_mackey()
    for M in (constant_mackey(), B, constant_mackey(2)):
        assert unit_map_left(M, box(B, M)).is_isomorphism()
        assert unit_map_right(M, box(M, B)).is_isomorphism()


def test_box_f2_f2():
    F2 = hermitian_from_ring(residue_ring(2)).mackey
    P = box(F2, F2)
    assert validate_mackey(P.result).ok
    assert P.result.level_e.same_type(FgAbGroup.cyclic(2))
    assert P.result.level_fix.same_type(FgAbGroup.cyclic(2))


def test_box_symmetry_random(rng):
    for _ in range(6):
        M, N = random_mackey(rng), random_mackey(rng)
        assert swap_map(box(M, N), box(N, M)).is_isomorphism()


def test_box_over_burnside_is_box(rng):
    for _ in range(4):
        M, N = random_mackey(rng), random_mackey(rng)
        P = box_over_green(unit_module(M, "right"), unit_module(N, "left"))
        Q = box(M, N)
        assert same_type(P.result, Q.result)


@pytest.mark.parametrize("p", [2, 3])
def test_box_over_witt_finite_field(p):
    H = hermitian_from_ring(residue_ring(p))
    left, right = hermitian_witt_actions(H)
    P = box_over_green(right, left)
    F = FgAbGroup.cyclic(p)
    assert P.result.level_e.same_type(F) and P.result.level_fix.same_type(F)
    assert P.result.res.is_isomorphism()


def test_box_over_witt_integers():
    H = hermitian_from_ring(integers())
    left, right = hermitian_witt_actions(H)
    P = box_over_green(right, left)
    assert P.result.level_fix.same_type(FgAbGroup.free(1)) and P.result.tran.is_injective()


def test_box_over_green_rejects_bad_modules():
    M = constant_mackey()
    D = unit_module(M)
    D.act_fix = [GroupHom(M.level_fix, M.level_fix, [[2]]), D.act_fix[1]]
    with pytest.raises(ValueError):
        box_over_green(unit_module(M, "right"), D)


def test_morphism_composition():
    B = burnside_mackey()
    P = box(B, B)
    f = unit_map_left(B, P)
    g = MackeyMorphism(P.result, P.result, P.result.level_e.identity_hom(), P.result.level_fix.identity_hom())
    assert (g @ f).is_isomorphism()


def test_noncommutative_hermitian_is_valid():
    assert validate_hermitian(hermitian_from_ring(matrix_ring(2))).ok
