import itertools

import pytest

from eqalg.fgab import FgAbGroup, GroupHom
from eqalg.mackey import MackeyMorphism, burnside_hermitian, burnside_mackey, same_type, validate_mackey
from eqalg.mackey.core import hermitian_from_ring
from eqalg.ringalg import builtin_monoid, gaussian_integers, integers, matrix_ring, monoid_ring, residue_ring, trivial_monoid
from eqalg.thr import (
    dihedral_pi0,
    laurent_closed_form,
    laurent_thr_pi0,
    laurent_window_inclusion,
    thr_group_ring,
    thr_pi0,
    thr_pi0_commutative,
)


def _burnside_map(rep):
    B = burnside_mackey()
    M = rep.result
    f_e = GroupHom.from_images(B.level_e, M.level_e, [rep.unit_e()])
    f_fix = GroupHom.from_images(B.level_fix, M.level_fix, [rep.unit_fix(), M.tran(rep.unit_e())])
    return MackeyMorphism(B, M, f_e, f_fix)


def test_burnside_is_its_own_pi0():
    rep = thr_pi0(burnside_hermitian())
    assert rep.ok
    m = _burnside_map(rep)
    assert m.is_morphism() and m.is_isomorphism()


def test_dihedral_of_trivial_group_is_burnside():
    D = dihedral_pi0(trivial_monoid())
    B = burnside_mackey()
    assert same_type(D.mackey, B)
    assert D.mackey.res.matrix_list() == [[2, 1]]


def test_dihedral_s3_shape():
    D = dihedral_pi0(builtin_monoid("s3"))
    assert len(D.class_names) == 3 and D.n_orbits == 3
    assert D.mackey.level_fix.same_type(FgAbGroup.free(3 + len(D.pair_names)))
    assert validate_mackey(D.mackey).ok


@pytest.mark.parametrize("p", [2, 3, 5])
def test_finite_fields(p):
    rep = thr_pi0(hermitian_from_ring(residue_ring(p)))
    F = FgAbGroup.cyclic(p)
    assert rep.ok
    assert rep.result.level_e.same_type(F) and rep.result.level_fix.same_type(F)
    assert rep.result.res.is_isomorphism()


def test_integers_commutative():
    H = hermitian_from_ring(integers())
    rep = thr_pi0_commutative(H)
    assert rep.ok
    assert rep.result.level_fix.same_type(FgAbGroup.free(1)) and rep.result.tran.is_injective()
    p, T = rep.fix_projection, rep.tensor
    for n in range(-4, 5):
        assert rep.ring.carrier.reduce(p(T.elem(H.norm((n,)), H.unit_fix))) == rep.ring.carrier.reduce(
            rep.ring.carrier.scale(n * n, rep.ring.unit)
        )


def test_commutative_needs_commutative_ring():
    with pytest.raises(ValueError):
        thr_pi0_commutative(hermitian_from_ring(matrix_ring(2)))


def test_group_ring_c2_integral_ring_structure():
    H = hermitian_from_ring(monoid_ring(integers(), builtin_monoid("c2")))
    rep = thr_pi0_commutative(H)
    assert rep.ok
    F = rep.result.level_fix
    assert F.invariants() == {"free_rank": 2, "torsion": [2, 2]}
    assert rep.result.level_e.same_type(FgAbGroup.free(2))
    # multiplication is associative, commutative and unital on the quotient
    R = rep.ring
    gens = F.gens()
    for x, y in itertools.product(gens, repeat=2):
        assert R.mul(x, y) == R.mul(y, x)
        assert R.mul(R.unit, x) == F.reduce(x)
    for x, y, z in itertools.product(gens, repeat=3):
        assert R.mul(R.mul(x, y), z) == R.mul(x, R.mul(y, z))


@pytest.mark.parametrize(
    "R",
    [
        monoid_ring(residue_ring(2), builtin_monoid("s3")),
        matrix_ring(2),
        gaussian_integers(),
        monoid_ring(residue_ring(3), builtin_monoid("c3")),
    ],
    ids=["F2[S3]", "M2(Z)", "Z[i]", "F3[C3]"],
)
def test_relations_hold_for_all_elements(R, rng):
    """The quotient is cut out by generator relations only; relations for
    arbitrary elements then hold automatically."""
    H = hermitian_from_ring(R)
    rep = thr_pi0(H, oracle=False)
    assert rep.ok
    M, T, p = H.mackey, rep.tensor, rep.fix_projection
    Q = rep.result.level_fix
    X = M.level_fix
    gens = R.carrier.gens()

    def rand_elem():
        acc = R.carrier.zero()
        for g in gens:
            acc = R.carrier.add(acc, R.carrier.scale(rng.randint(-3, 3), g))
        return acc

    def rand_fix():
        acc = X.zero()
        for g in X.gens():
            acc = X.add(acc, X.scale(rng.randint(-3, 3), g))
        return acc

    for _ in range(15):
        a, b, x, y = rand_elem(), rand_elem(), rand_fix(), rand_fix()
        one = T.group.sub(T.elem(x, H.act(a, y)), T.elem(H.act(M.w(a), x), y))
        assert Q.is_zero(p(one))
        wb = M.w(b)
        two = T.group.sub(
            T.elem(x, M.tran(R.mul(R.mul(a, M.res(y)), wb))),
            T.elem(M.tran(R.mul(R.mul(wb, M.res(x)), a)), y),
        )
        assert Q.is_zero(p(two))


@pytest.mark.parametrize("base", ["F2", "F3", "burnside"])
@pytest.mark.parametrize("group", ["c2", "c3", "s3", "c2xc2", "c4"])
def test_group_rings_are_mackey(group, base):
    H = burnside_hermitian() if base == "burnside" else hermitian_from_ring(residue_ring(int(base[1:])))
    rep = thr_group_ring(builtin_monoid(group), thr_pi0(H, oracle=False))
    assert rep.ok
    assert validate_mackey(rep.result).ok


def test_group_ring_over_burnside_is_dihedral():
    rep = thr_group_ring(builtin_monoid("c3"), thr_pi0(burnside_hermitian(), oracle=False))
    assert rep.inclusion.is_isomorphism()


def test_group_ring_rejects_monoids():
    from eqalg.ringalg import zero_monoid

    with pytest.raises(ValueError):
        thr_group_ring(zero_monoid(), hermitian_from_ring(integers()))


def test_laurent_small_windows():
    M = laurent_thr_pi0(1)
    assert M.level_e.same_type(FgAbGroup.free(3)) and M.level_fix.same_type(FgAbGroup.free(2))
    for N in (1, 2, 3):
        assert same_type(laurent_closed_form(N), laurent_thr_pi0(N))
        assert validate_mackey(laurent_closed_form(N)).ok
    inc = laurent_window_inclusion(2, 4)
    assert inc.is_morphism() and inc.is_injective()
    with pytest.raises(ValueError):
        laurent_thr_pi0(0)
