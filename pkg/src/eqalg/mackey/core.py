"""Z/2-Mackey functors, Green functors and Hermitian Mackey functors.

A Mackey functor is a pair of groups ``level_e`` (the value at Z/2) and
``level_fix`` (the value at the point) with restriction, transfer and the
Weyl involution ``w`` on ``level_e``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb

from ..fgab import (
    FgAbGroup,
    GroupHom,
    WellDefinednessError,
    direct_sum,
    group_from_json,
    invariants_and_coinvariants,
)
from ..intlinalg import zeros
from ..report import Report
from ..ringalg import PresRing, integers, ring_from_json, ring_to_json, validate_ring

Vec = tuple[int, ...]


@dataclass
class MackeyZ2:
    level_e: FgAbGroup
    level_fix: FgAbGroup
    res: GroupHom
    tran: GroupHom
    w: GroupHom
    names_e: list[str] | None = None
    names_fix: list[str] | None = None

    def summary(self) -> str:
        return f"({self.level_e}; {self.level_fix})"

    def to_json(self) -> dict:
        out = {
            "level_e": self.level_e.invariants(),
            "level_fix": self.level_fix.invariants(),
            "res": self.res.matrix_list(),
            "tran": self.tran.matrix_list(),
            "w": self.w.matrix_list(),
        }
        if self.names_e is not None:
            out["names_e"] = list(self.names_e)
        if self.names_fix is not None:
            out["names_fix"] = list(self.names_fix)
        return out

    def with_maps(self, res=None, tran=None, w=None) -> "MackeyZ2":
        """Copy with some structure matrices replaced (no checks; used to
        inject faults)."""

        def make(old, new):
            if new is None:
                return old
            return GroupHom(old.source, old.target, new, check=False)

        return MackeyZ2(
            self.level_e,
            self.level_fix,
            make(self.res, res),
            make(self.tran, tran),
            make(self.w, w),
            self.names_e,
            self.names_fix,
        )


def mackey_from_json(obj: dict) -> MackeyZ2:
    E = group_from_json(obj["level_e"])
    F = group_from_json(obj["level_fix"])
    # structure matrices are over the presentation generators of the levels
    res = GroupHom.from_presentation(F, E, _matrix(obj["res"], E.ngens, F.ngens))
    tran = GroupHom.from_presentation(E, F, _matrix(obj["tran"], F.ngens, E.ngens))
    w = GroupHom.from_presentation(E, E, _matrix(obj["w"], E.ngens, E.ngens))
    return MackeyZ2(E, F, res, tran, w, obj.get("names_e"), obj.get("names_fix"))


def _matrix(rows, m: int, n: int):
    from ..intlinalg import imat

    if isinstance(rows, dict):
        rows = rows["matrix"]
    M = imat(rows, n) if rows else zeros(m, n)
    if M.shape != (m, n):
        raise ValueError(f"expected a {m} x {n} matrix, got {M.shape[0]} x {M.shape[1]}")
    return M


# -- validation ------------------------------------------------------------------


def _first_bad(f: GroupHom, g: GroupHom) -> int | None:
    return f.first_difference(g)


def validate_mackey(M: MackeyZ2) -> Report:
    """The four Mackey axioms, each checked on generators."""
    rep = Report("Mackey functor")
    for name, h in (("res", M.res), ("tran", M.tran), ("w", M.w)):
        bad = h.ill_defined_generators()
        if bad:
            rep.add("well-defined", (name, bad[0]), f"{name} does not respect relations")
    if not rep.ok:
        return rep
    one = M.level_e.identity_hom()
    j = _first_bad(M.w @ M.w, one)
    if j is not None:
        rep.add("w^2 = id", (j,), f"w(w(e{j})) != e{j}")
    j = _first_bad(M.w @ M.res, M.res)
    if j is not None:
        rep.add("w res = res", (j,), f"w(res(x{j})) != res(x{j})")
    j = _first_bad(M.tran @ M.w, M.tran)
    if j is not None:
        rep.add("tran w = tran", (j,), f"tran(w(e{j})) != tran(e{j})")
    j = _first_bad(M.res @ M.tran, one + M.w)
    if j is not None:
        got = (M.res @ M.tran).column(j)
        want = (one + M.w).column(j)
        rep.add("double coset", (j,), f"res(tran(e{j})) = {list(got)} but (1 + w)(e{j}) = {list(want)}")
    return rep


@dataclass
class MackeyMorphism:
    source: MackeyZ2
    target: MackeyZ2
    f_e: GroupHom
    f_fix: GroupHom

    def commutation_failures(self) -> list[str]:
        s, t = self.source, self.target
        out = []
        if not (self.f_e @ s.res).equals(t.res @ self.f_fix):
            out.append("res")
        if not (self.f_fix @ s.tran).equals(t.tran @ self.f_e):
            out.append("tran")
        if not (self.f_e @ s.w).equals(t.w @ self.f_e):
            out.append("w")
        return out

    def is_morphism(self) -> bool:
        return not self.commutation_failures()

    def is_isomorphism(self) -> bool:
        return self.is_morphism() and self.f_e.is_isomorphism() and self.f_fix.is_isomorphism()

    def is_injective(self) -> bool:
        return self.f_e.is_injective() and self.f_fix.is_injective()

    def __matmul__(self, other: "MackeyMorphism") -> "MackeyMorphism":
        return MackeyMorphism(other.source, self.target, self.f_e @ other.f_e, self.f_fix @ other.f_fix)


def same_type(M: MackeyZ2, N: MackeyZ2) -> bool:
    return M.level_e.same_type(N.level_e) and M.level_fix.same_type(N.level_fix)


def mackey_direct_sum(*functors: MackeyZ2) -> MackeyZ2:
    E, inj_e, proj_e = direct_sum(*(M.level_e for M in functors))
    F, inj_f, proj_f = direct_sum(*(M.level_fix for M in functors))

    def block(maps, inj, proj):
        total = None
        for h, i, p in zip(maps, inj, proj):
            term = i @ h @ p
            total = term if total is None else total + term
        return total

    res = block([M.res for M in functors], inj_e, proj_f)
    tran = block([M.tran for M in functors], inj_f, proj_e)
    w = block([M.w for M in functors], inj_e, proj_e)
    return MackeyZ2(E, F, res, tran, w)


# -- standard examples ------------------------------------------------------------


def constant_mackey(n: int = 0) -> MackeyZ2:
    """Constant functor ``Z/n`` (``Z`` for ``n = 0``): res = 1, tran = 2, w = 1."""
    G = FgAbGroup.cyclic(n)
    one = [[1]] if G.rank else []
    two = [[2]] if G.rank else []
    return MackeyZ2(G, G, GroupHom(G, G, one), GroupHom(G, G, two), GroupHom(G, G, one))


def fixed_point_functor(A: FgAbGroup, t: GroupHom) -> MackeyZ2:
    """``level_fix = A^t`` with res the inclusion and tran = 1 + t."""
    ic = invariants_and_coinvariants(A, t)
    inv, incl = ic.invariants, ic.inclusion
    images = []
    for g in A.gens():
        pre = incl.preimage(A.add(g, t(g)))
        images.append(pre)
    tran = GroupHom.from_images(A, inv, images)
    return MackeyZ2(A, inv, incl, tran, t)


def orbit_functor(A: FgAbGroup, t: GroupHom) -> MackeyZ2:
    """``level_fix = A_t`` with tran the projection and res the additive norm."""
    ic = invariants_and_coinvariants(A, t)
    res = ic.inclusion @ ic.norm
    return MackeyZ2(A, ic.coinvariants, res, ic.projection, t)


def random_mackey(rng: random.Random, max_order: int = 16) -> MackeyZ2:
    """A random finite Mackey functor with both levels of order <= max_order."""
    while True:
        pieces = []
        for _ in range(rng.randint(1, 2)):
            kind = rng.choice(["cyclic", "cyclic", "swap"])
            if kind == "cyclic":
                n = rng.randint(2, max_order)
                A = FgAbGroup.cyclic(n)
                t = GroupHom(A, A, [[rng.choice([1, -1])]])
            else:
                n = rng.randint(2, 4)
                A = FgAbGroup.from_invariants(0, [n, n])
                t = GroupHom(A, A, [[0, 1], [1, 0]])
            build = rng.choice([fixed_point_functor, orbit_functor])
            pieces.append(build(A, t))
        M = mackey_direct_sum(*pieces) if len(pieces) > 1 else pieces[0]
        if M.level_e.order <= max_order and M.level_fix.order <= max_order and not M.level_e.is_trivial():
            return M


# -- Green functors -------------------------------------------------------------------


@dataclass
class GreenZ2:
    mackey: MackeyZ2
    ring_e: PresRing
    ring_fix: PresRing


def validate_green(G: GreenZ2) -> Report:
    rep = validate_mackey(G.mackey)
    rep.subject = "Green functor"
    for label, R in (("level e", G.ring_e), ("fixed level", G.ring_fix)):
        sub = validate_ring(R)
        for v in sub.violations:
            rep.add(f"ring {v.law}", (label,) + v.witness, v.detail)
    if not rep.ok:
        return rep
    M, A, X = G.mackey, G.ring_e, G.ring_fix
    a_gens = M.level_e.gens()
    x_gens = M.level_fix.gens()
    if M.res(X.unit) != A.unit:
        rep.add("res unital", (), "res(1) != 1")
    for i, j in itertools.product(range(len(x_gens)), repeat=2):
        x, y = x_gens[i], x_gens[j]
        if M.res(X.mul(x, y)) != A.mul(M.res(x), M.res(y)):
            rep.add("res multiplicative", (i, j), "res(xy) != res(x)res(y)")
    for i, j in itertools.product(range(len(a_gens)), repeat=2):
        a, b = a_gens[i], a_gens[j]
        if M.w(A.mul(a, b)) != A.mul(M.w(a), M.w(b)):
            rep.add("w multiplicative", (i, j), "w(ab) != w(a)w(b)")
    for i, j in itertools.product(range(len(a_gens)), range(len(x_gens))):
        a, x = a_gens[i], x_gens[j]
        if M.tran(A.mul(a, M.res(x))) != X.mul(M.tran(a), x):
            rep.add("Frobenius", (i, j), "tran(a res(x)) != tran(a) x")
        if M.tran(A.mul(M.res(x), a)) != X.mul(x, M.tran(a)):
            rep.add("Frobenius", (i, j), "tran(res(x) a) != x tran(a)")
    return rep


# -- Hermitian Mackey functors ------------------------------------------------------------


class HermitianMackey:
    """A Mackey functor whose ``level_e`` is a ring with anti-involution ``w``
    acting on ``level_fix``.

    ``action[i][k]`` is ``g_i . x_k`` for canonical generators ``g_i`` of the
    ring and ``x_k`` of ``level_fix``. The action of an arbitrary element is
    obtained from the sum rule
    ``(a + b).x = a.x + b.x + tran(a res(x) w(b))``.
    """

    def __init__(self, mackey: MackeyZ2, ring_e: PresRing, action, unit_fix=None, ring_fix: PresRing | None = None):
        self.mackey = mackey
        self.ring_e = ring_e
        F = mackey.level_fix
        self.action = [[F.reduce(action[i][k]) for k in range(F.rank)] for i in range(ring_e.rank)]
        self.unit_fix = F.reduce(unit_fix) if unit_fix is not None else None
        self.ring_fix = ring_fix
        self._gen_maps = None

    @property
    def level_e(self) -> FgAbGroup:
        return self.mackey.level_e

    @property
    def level_fix(self) -> FgAbGroup:
        return self.mackey.level_fix

    def res(self, x) -> Vec:
        return self.mackey.res(x)

    def tran(self, a) -> Vec:
        return self.mackey.tran(a)

    def w(self, a) -> Vec:
        return self.mackey.w(a)

    def generator_map(self, i: int) -> GroupHom:
        """``x -> g_i . x`` as a group homomorphism (unchecked)."""
        if self._gen_maps is None:
            F = self.level_fix
            self._gen_maps = [
                GroupHom.from_images(F, F, self.action[i], check=False) for i in range(self.ring_e.rank)
            ]
        return self._gen_maps[i]

    def cross(self, a, b, x) -> Vec:
        """``tran(a res(x) w(b))``."""
        R = self.ring_e
        return self.tran(R.mul(R.mul(a, self.res(x)), self.w(b)))

    def act_terms(self, terms, x) -> Vec:
        """Action of ``sum(k * g_i for k, i in terms)`` on ``x``; each term
        ``k * g_i`` uses ``(k g).x = k (g.x) + C(k, 2) tran(g res(x) w(g))``."""
        F = self.level_fix
        R = self.ring_e
        acc = F.zero()
        parts = []
        for k, i in terms:
            g = R.gen(i)
            gx = self.generator_map(i)(x)
            acc = F.add(acc, F.scale(k, gx))
            acc = F.add(acc, F.scale(comb(k, 2) if k >= 0 else k * (k - 1) // 2, self.cross(g, g, x)))
            parts.append(R.scale(k, g))
        for p, q in itertools.combinations(parts, 2):
            acc = F.add(acc, self.cross(p, q, x))
        return acc

    def act(self, a, x) -> Vec:
        a = self.level_e.reduce(a)
        return self.act_terms([(int(k), i) for i, k in enumerate(a) if k], x)

    def action_map(self, a) -> GroupHom:
        """``x -> a . x`` (additive in ``x``)."""
        F = self.level_fix
        return GroupHom.from_images(F, F, [self.act(a, x) for x in F.gens()], check=False)

    def norm(self, a) -> Vec:
        """``N(a) = a . 1``."""
        if self.unit_fix is None:
            raise ValueError("Hermitian Mackey functor has no unit")
        return self.act(a, self.unit_fix)

    def with_action(self, action) -> "HermitianMackey":
        return HermitianMackey(self.mackey, self.ring_e, action, self.unit_fix, self.ring_fix)

    def with_mackey(self, mackey: MackeyZ2) -> "HermitianMackey":
        return HermitianMackey(mackey, self.ring_e, self.action, self.unit_fix, self.ring_fix)

    def to_json(self) -> dict:
        out = self.mackey.to_json()
        out["ring_e"] = ring_to_json(self.ring_e)
        out["action"] = [[list(v) for v in row] for row in self.action]
        if self.unit_fix is not None:
            out["unit_fix"] = list(self.unit_fix)
        if self.ring_fix is not None:
            out["ring_fix"] = ring_to_json(self.ring_fix)
        return out


def hermitian_from_json(obj: dict) -> HermitianMackey:
    """Action tables are read in canonical coordinates, so both levels must
    be given in invariant-factor form."""
    M = mackey_from_json(obj)
    R = ring_from_json(obj["ring_e"])
    E, F = M.level_e, M.level_fix
    if not (_is_identity(E) and _is_identity(F)):
        raise ValueError("Hermitian input needs both levels in invariant-factor form")
    if not R.carrier.same_type(E):
        raise ValueError("ring_e does not live on level_e")
    raw = obj["action"]
    if len(raw) != E.rank or any(len(row) != F.rank for row in raw):
        raise ValueError("action table must be (level_e generators) x (level_fix generators)")
    ring_fix = ring_from_json(obj["ring_fix"]) if "ring_fix" in obj else None
    return HermitianMackey(M, R, raw, obj.get("unit_fix"), ring_fix)


def _is_identity(G: FgAbGroup) -> bool:
    return G.rank == G.ngens and all(
        int(G.to_canon[i, j]) == int(i == j) for i in range(G.rank) for j in range(G.ngens)
    )


def validate_hermitian(H: HermitianMackey) -> Report:
    """Mackey axioms, ring laws, the monoid-action law and axioms ii), iii)
    on generators, plus well-definedness of the sum rule on relations."""
    rep = validate_mackey(H.mackey)
    rep.subject = "Hermitian Mackey functor"
    R, M = H.ring_e, H.mackey
    if not R.carrier.same_type(M.level_e):
        rep.add("ring on level e", (), "ring_e does not live on level_e")
        return rep
    for v in validate_ring(R).violations:
        rep.add(f"ring {v.law}", v.witness, v.detail)
    if R.w is None or not R.w.equals(M.w):
        rep.add("involution", (), "ring anti-involution differs from the Weyl involution")
    if not rep.ok:
        return rep
    E, F = M.level_e, M.level_fix
    a_gens, x_gens = E.gens(), F.gens()
    for i in range(len(a_gens)):
        if not H.generator_map(i).is_well_defined():
            rep.add("well-defined", (i,), "g . x does not respect relations of level_fix")
    for i, s in enumerate(E.torsion):
        g = a_gens[i]
        for k, x in enumerate(x_gens):
            val = F.add(F.scale(s, H.generator_map(i)(x)), F.scale(comb(s, 2), H.cross(g, g, x)))
            if not F.is_zero(val):
                rep.add("well-defined", (i, k), f"({s} g{i}) . x{k} != 0 although {s} g{i} = 0")
    if not rep.ok:
        return rep
    for k, x in enumerate(x_gens):
        if H.act(R.unit, x) != x:
            rep.add("unit action", (k,), "1 . x != x")
    for i, j in itertools.product(range(len(a_gens)), repeat=2):
        ab = R.mul(a_gens[i], a_gens[j])
        for k, x in enumerate(x_gens):
            if H.act(ab, x) != H.act(a_gens[i], H.act(a_gens[j], x)):
                rep.add("action associativity", (i, j, k), "(ab).x != a.(b.x)")
    for i, a in enumerate(a_gens):
        for k, x in enumerate(x_gens):
            lhs = M.res(H.act(a, x))
            rhs = R.mul(R.mul(a, M.res(x)), M.w(a))
            if lhs != rhs:
                rep.add("res(a.x) = a res(x) w(a)", (i, k), f"{list(lhs)} != {list(rhs)}")
    for i, a in enumerate(a_gens):
        for j, b in enumerate(a_gens):
            lhs = M.tran(R.mul(R.mul(a, b), M.w(a)))
            rhs = H.act(a, M.tran(b))
            if lhs != rhs:
                rep.add("tran(a b w(a)) = a.tran(b)", (i, j), f"{list(lhs)} != {list(rhs)}")
    if H.unit_fix is not None and M.res(H.unit_fix) != R.unit:
        rep.add("unit_fix", (), "res(unit_fix) != 1")
    return rep


def hermitian_from_ring(R: PresRing) -> HermitianMackey:
    """``level_e = R``, ``level_fix = R^w``, res the inclusion, tran = 1 + w
    and ``a.x = a x w(a)``."""
    if R.w is None:
        raise ValueError("ring has no anti-involution")
    A = R.carrier
    M = fixed_point_functor(A, R.w)
    incl = M.res
    F = M.level_fix
    action = []
    for a in A.gens():
        row = []
        for x in F.gens():
            v = R.mul(R.mul(a, incl(x)), R.w(a))
            pre = incl.preimage(v)
            if pre is None:  # pragma: no cover - a x w(a) is fixed
                raise WellDefinednessError("a x w(a) is not w-fixed")
            row.append(pre)
        action.append(row)
    unit_fix = incl.preimage(R.unit)
    ring_fix = None
    if R.is_commutative():
        table = [[incl.preimage(R.mul(incl(x), incl(y))) for y in F.gens()] for x in F.gens()]
        ring_fix = PresRing(F, table, unit_fix)
    names_fix = None
    if R.names is not None and _is_identity(F) and _is_identity_embedding(incl):
        names_fix = list(R.names)
    M.names_e = R.names
    M.names_fix = names_fix
    return HermitianMackey(M, R, action, unit_fix, ring_fix)


def _is_identity_embedding(h: GroupHom) -> bool:
    return h.source.rank == h.target.rank and h.equals(GroupHom(h.source, h.target, _eye(h.source.rank), check=False))


def _eye(n):
    from ..intlinalg import identity

    return identity(n)


# -- Burnside ------------------------------------------------------------------------------


def burnside_mackey() -> MackeyZ2:
    E = FgAbGroup.free(1)
    F = FgAbGroup.free(2)
    return MackeyZ2(
        E,
        F,
        GroupHom(F, E, [[1, 2]]),
        GroupHom(E, F, [[0], [1]]),
        GroupHom(E, E, [[1]]),
        ["1"],
        ["1", "t"],
    )


def burnside_ring() -> PresRing:
    F = FgAbGroup.free(2)
    return PresRing(F, [[(1, 0), (0, 1)], [(0, 1), (0, 2)]], (1, 0), names=["1", "t"])


def burnside() -> GreenZ2:
    """The Burnside Green functor: ``Z`` and ``Z{1, t}`` with ``t^2 = 2t``."""
    return GreenZ2(burnside_mackey(), integers(), burnside_ring())


def burnside_hermitian() -> HermitianMackey:
    """Burnside data with ``n . x = N(n) x`` where ``N(n) = n + C(n, 2) t``;
    on the generator ``1`` the action is the identity."""
    M = burnside_mackey()
    return HermitianMackey(M, integers(), [[(1, 0), (0, 1)]], (1, 0), burnside_ring())


def burnside_norm(n: int) -> Vec:
    return (n, n * (n - 1) // 2)
