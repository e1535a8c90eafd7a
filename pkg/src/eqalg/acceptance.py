"""The acceptance criteria as library checks, shared by the test suite and
``eqalg selftest``.

Each check returns a :class:`Criterion` with a verdict and a short detail
line; nothing here raises on a failed identity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .fgab import FgAbGroup, GroupHom, canonicalize, image, kernel
from .graded import crt_consistent, p_valuation, phi_thr_f2_dims, phi_thr_z_dims, thh_z_table, thr_fp_ring, weight_slice
from .mackey import (
    MackeyMorphism,
    MackeyZ2,
    box,
    burnside,
    burnside_hermitian,
    burnside_mackey,
    random_mackey,
    swap_map,
    unit_map_left,
    unit_map_right,
    validate_green,
    validate_hermitian,
    validate_mackey,
    witt_green,
)
from .mackey.witt import WittRing
from .intlinalg import zeros
from .ringalg import builtin_monoid, integers, residue_ring
from .thr import (
    dihedral_pi0,
    group_ring_presentation,
    laurent_closed_form,
    laurent_thr_pi0,
    laurent_window_inclusion,
    thr_group_ring,
    thr_pi0,
)
from .mackey.core import hermitian_from_ring

GROUPS_UP_TO_8 = ["c2", "c3", "c4", "c2xc2", "c5", "s3", "c6", "c7", "c8", "c4xc2", "c2^3", "d4", "q8"]


@dataclass
class Criterion:
    number: int
    title: str
    ok: bool
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} [{self.number:2d}] {self.title}"


def _ring(name: str):
    if name == "Z":
        return integers()
    return residue_ring(int(name[1:]) if name.startswith("F") else int(name))


# -- 1 --------------------------------------------------------------------------------------


def criterion_1() -> Criterion:
    want = {"F2": [4], "F3": [3, 3], "F5": [5, 5]}
    ok, details = True, []
    for name, factors in want.items():
        wg = witt_green(_ring(name), finite_decomposition=True)
        presented = wg.witt.group.torsion
        good = wg.decomposition == factors and list(presented) == factors and validate_green(wg.green).ok
        ok &= good
        details.append(f"W({name}): enumeration {wg.decomposition}, presentation {list(presented)}")
    return Criterion(1, "Witt vector isomorphism types", ok, details)


# -- 2 --------------------------------------------------------------------------------------


def criterion_2() -> Criterion:
    WZ, W2 = WittRing(integers()), WittRing(residue_ring(2))
    details = []
    i = lambda m: WZ.element((2 * m,), (-2 * m * m,))  # noqa: E731
    in_kernel = all(all(v == 0 for v in WZ.w1(i(m))) for m in range(-10, 11))
    # i is additive and every kernel element of the window is some i(m)
    additive = all(WZ.scale(m, i(1)) == i(m) for m in range(-10, 11))
    window = [WZ.element((a,), (c,)) for a in range(-20, 21) for c in range(-200, 201)]
    ker_z = [x for x in window if all(v == 0 for v in WZ.w1(x))]
    generated = all(x in [i(m) for m in range(-10, 11)] for x in ker_z)
    details.append(f"Z: {len(ker_z)} kernel elements in the window, all of the form i(m)")
    ker_2 = [x for x in W2.elements() if all(v == 0 for v in W2.w1(x))]
    j = [W2.element((0,), (l,)) for l in (0, 1)]
    spans = sorted(ker_2) == sorted(j)
    details.append(f"F2: kernel {sorted(ker_2)}")
    # reduction mod 2 of a pair (a, c) is (a mod 2, c mod 2)
    reduce2 = lambda x: W2.element((x[0][0] % 2,), (x[1][0] % 2,))  # noqa: E731
    zero_map = all(reduce2(i(m)) == W2.zero() for m in range(-10, 11))
    group_level = kernel(witt_green(integers()).green.mackey.res)[0].invariants() == {"free_rank": 1, "torsion": []}
    ok = in_kernel and additive and generated and spans and zero_map and group_level
    return Criterion(2, "ghost kernel facts", ok, details)


# -- 3 --------------------------------------------------------------------------------------


def _witt_ses(S) -> tuple[bool, str]:
    W = WittRing(S)
    G = W.group
    V = GroupHom.from_images(W.C, G, [W.to_group(W.V_class(c)) for c in W.C.gens()])
    w0 = GroupHom.from_images(G, S.carrier, [W.w0(W.from_group(g)) for g in G.gens()])
    ker_w0, incl = kernel(w0)
    img, img_incl = image(V)
    same = all(incl.preimage(img_incl(x)) is not None for x in img.gens()) and all(
        img_incl.preimage(incl(x)) is not None for x in ker_w0.gens()
    )
    ok = V.is_injective() and w0.is_surjective() and same and (w0 @ V).is_zero()
    return ok, f"{S.carrier}: V injective {V.is_injective()}, image V = ker w0 {same}"


def criterion_3() -> Criterion:
    ok, details = True, []
    for S in (residue_ring(2), residue_ring(3), residue_ring(4), integers()):
        good, d = _witt_ses(S)
        ok &= good
        details.append(d)
    # element-level over Z on a window of about a thousand pairs
    W = WittRing(integers())
    window = [W.element((a,), (c,)) for a in range(-15, 16) for c in range(-15, 16)]
    elementwise = all((W.w0(x) == (0,)) == (x == W.V_class(x[1])) for x in window)
    elementwise &= all(W.V_class((c,)) != W.V_class((d,)) for c in range(-15, 16) for d in range(-15, 16) if c != d)
    details.append(f"Z window of {len(window)} pairs: elementwise check {elementwise}")
    return Criterion(3, "Witt vector short exact sequence", ok and elementwise, details)


# -- 4, 5 -----------------------------------------------------------------------------------


def criterion_4() -> Criterion:
    ok, details = True, []
    for p in (2, 3, 5):
        rep = thr_pi0(hermitian_from_ring(residue_ring(p)))
        M = rep.result
        Fp = FgAbGroup.cyclic(p)
        good = M.level_e.same_type(Fp) and M.level_fix.same_type(Fp) and M.res.is_isomorphism() and rep.ok
        ok &= good
        details.append(f"F{p}: {M.summary()}, res iso {M.res.is_isomorphism()}, checks {rep.ok}")
    return Criterion(4, "thr_pi0 over F_p", ok, details)


def criterion_5() -> Criterion:
    rep = thr_pi0(hermitian_from_ring(integers()))
    M = rep.result
    ok = M.level_fix.same_type(FgAbGroup.free(1)) and M.tran.is_injective() and rep.ok
    return Criterion(5, "thr_pi0 over Z", ok, [f"{M.summary()}, tran {M.tran.matrix_list()}"])


# -- 6 --------------------------------------------------------------------------------------


def zz2_target() -> MackeyZ2:
    """``(Z[C2]; Z[C2] + (Z/2)^2)`` with ``tran = (x2, 0)`` and ``res`` the
    projection onto the first summand."""
    E = FgAbGroup.free(2)
    F = canonicalize(4, [[0, 0, 2, 0], [0, 0, 0, 2]])
    res = GroupHom.from_presentation(F, E, [[1, 0, 0, 0], [0, 1, 0, 0]])
    tran = GroupHom.from_presentation(E, F, [[2, 0], [0, 2], [0, 0], [0, 0]])
    return MackeyZ2(E, F, res, tran, E.identity_hom(), ["1", "g"], ["[1,1]", "[1,g]", "[g,g]-[1,1]", "[g,1]-[1,g]"])


def zz2_comparison() -> MackeyMorphism:
    """Explicit map from :func:`zz2_target` into the computed answer."""
    D = dihedral_pi0(builtin_monoid("c2"))
    direct, proj = group_ring_presentation(D)
    T = zz2_target()
    no = D.n_orbits
    idx = {name: no + q for q, name in enumerate(D.pair_names)}

    def pair(name, sign=1):
        v = [0] * D.mackey.level_fix.rank
        v[idx[name]] = sign
        return v

    def diff(a, b):
        return [x + y for x, y in zip(pair(a), pair(b, -1))]

    lifts = [pair("[1,1]"), pair("[1,g]"), diff("[g,g]", "[1,1]"), diff("[g,1]", "[1,g]")]
    cols = zeros(direct.level_fix.rank, 4)
    for j, v in enumerate(lifts):
        cols[:, j] = proj(D.mackey.level_fix.canon(v))
    f_fix = GroupHom.from_lifts(T.level_fix, direct.level_fix, cols)
    return MackeyMorphism(T, direct, T.level_e.identity_hom(), f_fix)


def criterion_6() -> Criterion:
    details = []
    C2 = builtin_monoid("c2")
    rep = thr_group_ring(C2, hermitian_from_ring(integers()), base_is_integers=True)
    m = zz2_comparison()
    ok_z = rep.ok and m.is_isomorphism() and validate_mackey(zz2_target()).ok
    details.append(f"base Z: {rep.result.summary()}, explicit map iso {m.is_isomorphism()}")
    rep_b = thr_group_ring(C2, thr_pi0(burnside_hermitian()))
    free2, free6 = FgAbGroup.free(2), FgAbGroup.free(6)
    ok_b = (
        rep_b.ok
        and rep_b.result.level_e.same_type(free2)
        and rep_b.result.level_fix.same_type(free6)
        and rep_b.inclusion.is_isomorphism()
    )
    details.append(f"base Burnside: {rep_b.result.summary()}, sphere-coefficient map iso {rep_b.inclusion.is_isomorphism()}")
    return Criterion(6, "group ring of C2", ok_z and ok_b, details)


# -- 7 --------------------------------------------------------------------------------------


def laurent_comparison(N: int) -> MackeyMorphism:
    """Closed form -> direct presentation: ``t^n -> orbit of t^n``,
    ``u -> [1,1]``."""
    C = laurent_closed_form(N)
    from .thr import laurent_dihedral

    D = laurent_dihedral(N)
    direct, proj = group_ring_presentation(D)
    F = D.mackey.level_fix
    cols = zeros(direct.level_fix.rank, N + 1)
    for n in range(1, N + 1):
        v = [0] * F.rank
        v[D.orbit_of(n + N)] = 1
        cols[:, n - 1] = proj(F.canon(v))
    v = [0] * F.rank
    v[D.n_orbits] = 1
    cols[:, N] = proj(F.canon(v))
    f_fix = GroupHom.from_lifts(C.level_fix, direct.level_fix, cols)
    return MackeyMorphism(C, direct, C.level_e.identity_hom(), f_fix)


def criterion_7() -> Criterion:
    N = 5
    C = laurent_closed_form(N)
    direct = laurent_thr_pi0(N)
    tran_ok = all(
        C.tran(C.level_e.gen(n + N)) == C.level_fix.gen(abs(n) - 1) for n in range(-N, N + 1) if n
    ) and C.tran(C.level_e.gen(N)) == C.level_fix.scale(2, C.level_fix.gen(N))
    iso = laurent_comparison(N).is_isomorphism()
    inc = laurent_window_inclusion(5, 8)
    split = (
        inc.is_morphism()
        and inc.is_injective()
        and all(c.is_finite() is False or c.order == 1 for c in (inc.f_e.cokernel()[0], inc.f_fix.cokernel()[0]))
        and not inc.f_e.cokernel()[0].torsion
        and not inc.f_fix.cokernel()[0].torsion
    )
    iso8 = laurent_comparison(8).is_isomorphism()
    ok = direct.level_fix.same_type(FgAbGroup.free(6)) and tran_ok and iso and split and iso8 and validate_mackey(C).ok
    details = [f"N = 5: {direct.summary()}, closed form iso {iso}", f"window 5 -> 8 split inclusion {split}"]
    return Criterion(7, "Laurent polynomials, truncated", ok, details)


# -- 8 --------------------------------------------------------------------------------------


def criterion_8(groups: list[str] | None = None) -> Criterion:
    ok, details = True, []
    base = thr_pi0(hermitian_from_ring(integers()), oracle=False)
    for name in groups or GROUPS_UP_TO_8:
        rep = thr_group_ring(builtin_monoid(name), base, base_is_integers=True)
        good = rep.checks.get("direct presentation agrees with box product", False) and rep.ok
        ok &= good
        details.append(f"{name}: {rep.result.summary()} {'agree' if good else 'DISAGREE'}")
    return Criterion(8, "group rings: presentation vs box product", ok, details)


# -- 9 --------------------------------------------------------------------------------------


def criterion_9(seed: int = 20240, count: int = 10) -> Criterion:
    rng = random.Random(seed)
    B = burnside_mackey()
    ok, details = True, []
    for k in range(count):
        M = random_mackey(rng, max_order=16)
        N = random_mackey(rng, max_order=16)
        left = unit_map_left(M, box(B, M)).is_isomorphism()
        right = unit_map_right(M, box(M, B)).is_isomorphism()
        P, Q = box(M, N), box(N, M)
        sym = swap_map(P, Q).is_isomorphism() and validate_mackey(P.result).ok
        ok &= left and right and sym
        details.append(f"#{k}: {M.summary()} box {N.summary()} = {P.result.summary()}; unit {left and right}, swap {sym}")
    return Criterion(9, "box product unit and symmetry", ok, details)


# -- 10 - 13 -----------------------------------------------------------------------------------


def criterion_10(N: int = 20) -> Criterion:
    r = phi_thr_z_dims(N)
    ok = r.agree and r.dims == [n // 2 + 1 for n in range(N + 1)]
    return Criterion(10, "geometric fixed points of THR(Z)", ok, [f"dims {r.dims}"] + r.notes)


def criterion_11(N: int = 20) -> Criterion:
    r = phi_thr_f2_dims(N)
    ok = r.agree and r.dims == [n + 1 for n in range(N + 1)]
    details = [f"p = 2: {r.dims}"]
    for p in (3, 5):
        o = phi_thr_f2_dims(N, p)
        ok &= o.dims == [0] * (N + 1)
        details.append(f"p = {p}: {o.dims}")
    return Criterion(11, "geometric fixed points of THR(F_p)", ok, details)


def criterion_12(N: int = 20) -> Criterion:
    details = []
    ok = True
    for p in (3, 5):
        s = weight_slice(thr_fp_ring(p), 0, N)
        ok &= s == [int(n % 4 == 0) for n in range(N + 1)]
        details.append(f"p = {p}: {s}")
    s2 = weight_slice(thr_fp_ring(2), 0, N)
    ok &= s2 == [n // 2 + 1 for n in range(N + 1)]
    details.append(f"p = 2: {s2}")
    return Criterion(12, "weight-0 slices", ok, details)


def criterion_13(K: int = 50) -> Criterion:
    ok = True
    for p in (3, 5):
        for k in range(1, K + 1):
            ok &= thh_z_table(2 * k - 1, p).same_type(FgAbGroup.cyclic(p ** p_valuation(k, p)))
    crt = all(crt_consistent(k) for k in range(1, K + 1))
    return Criterion(13, "THH(Z) tables", ok and crt, [f"k <= {K}, p in (3, 5); CRT consistent {crt}"])


# -- 14 ---------------------------------------------------------------------------------------


@dataclass
class Mutation:
    axiom: str
    description: str
    validator: str
    build: Callable[[], object]


def _burnside_green_with(ring_fix_table=None):
    G = burnside()
    if ring_fix_table is not None:
        from .ringalg import PresRing

        G.ring_fix = PresRing(G.ring_fix.carrier, ring_fix_table, G.ring_fix.unit, names=G.ring_fix.names)
    return G


def mutations() -> list[Mutation]:
    """One single-entry mutation of the Burnside input per axiom."""
    B = burnside_mackey()
    H = burnside_hermitian()
    return [
        Mutation("w^2 = id", "w = [2]", "validate_mackey", lambda: B.with_maps(w=[[2]])),
        Mutation("w res = res", "w = [-1]", "validate_mackey", lambda: B.with_maps(w=[[-1]])),
        Mutation("tran w = tran", "w = [-1]", "validate_mackey", lambda: B.with_maps(w=[[-1]])),
        Mutation("double coset", "tran(1) = 1 + t, so res tran(1) = 3", "validate_mackey", lambda: B.with_maps(tran=[[1], [1]])),
        Mutation(
            "Frobenius",
            "t^2 = 3t on the fixed level",
            "validate_green",
            lambda: _burnside_green_with([[(1, 0), (0, 1)], [(0, 1), (0, 3)]]),
        ),
        Mutation(
            "res(a.x) = a res(x) w(a)",
            "1 . 1 = 1 + t",
            "validate_hermitian",
            lambda: H.with_action([[(1, 1), (0, 1)]]),
        ),
        Mutation(
            "tran(a b w(a)) = a.tran(b)",
            "1 . t = 2t",
            "validate_hermitian",
            lambda: H.with_action([[(1, 0), (0, 2)]]),
        ),
    ]


VALIDATORS = {"validate_mackey": validate_mackey, "validate_green": validate_green, "validate_hermitian": validate_hermitian}


def run_mutation(m: Mutation):
    return VALIDATORS[m.validator](m.build())


def criterion_14() -> Criterion:
    ok, details = True, []
    clean = validate_mackey(burnside_mackey()).ok and validate_green(burnside()).ok and validate_hermitian(burnside_hermitian()).ok
    for m in mutations():
        rep = run_mutation(m)
        caught = m.axiom in rep.laws()
        ok &= caught
        details.append(f"{m.axiom}: {m.description} -> {'caught' if caught else 'MISSED'} by {m.validator}")
    return Criterion(14, "axiom mutation testing", ok and clean, details)


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
    criterion_12,
    criterion_13,
    criterion_14,
]


def run_all() -> list[Criterion]:
    out = []
    for fn in CRITERIA:
        try:
            out.append(fn())
        except Exception as exc:  # a crash is a failure, reported with its source
            n = CRITERIA.index(fn) + 1
            out.append(Criterion(n, fn.__name__, False, [f"{type(exc).__name__}: {exc}"]))
    return out


# module and operation behind each criterion, for failure reports
SOURCES = {
    1: "mackey.witt_green",
    2: "mackey.witt_arith",
    3: "mackey.witt_arith",
    4: "thr.thr_pi0",
    5: "thr.thr_pi0",
    6: "thr.thr_group_ring",
    7: "thr.laurent",
    8: "thr.thr_group_ring",
    9: "mackey.box",
    10: "graded.phi_thr_z_dims",
    11: "graded.phi_thr_f2_dims",
    12: "graded.weight_slice",
    13: "graded.thh_z_table",
    14: "mackey.validate_*",
}
