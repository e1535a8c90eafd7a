"""Box products of Z/2-Mackey functors, plain and relative to a Green functor.

The fixed level of ``M box N`` is presented on two blocks of generators:
``[m (x) n]`` for canonical generators of ``M_e`` and ``N_e`` (the image of
the transfer) and ``x (x) y`` for canonical generators of the fixed levels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..fgab import FgAbGroup, GroupHom, Tensor, canonicalize
from ..intlinalg import zeros
from ..report import Report
from .core import GreenZ2, HermitianMackey, MackeyMorphism, MackeyZ2, burnside, validate_mackey
from .witt import WittRing

Vec = tuple[int, ...]


@dataclass
class ModuleData:
    """Action of a Green functor ``A`` on a Mackey functor.

    ``act_e[i]`` is the action of the ``i``-th canonical generator of
    ``A.level_e`` on ``level_e``; ``act_fix[k]`` likewise on the fixed level.
    For ``side == "right"`` the maps are ``m -> m . alpha``.
    """

    mackey: MackeyZ2
    green: GreenZ2
    act_e: list[GroupHom]
    act_fix: list[GroupHom]
    side: str = "left"

    def on_e(self, alpha, m) -> Vec:
        E = self.mackey.level_e
        acc = E.zero()
        for i, c in enumerate(alpha):
            if c:
                acc = E.add(acc, E.scale(c, self.act_e[i](m)))
        return acc

    def on_fix(self, alpha, x) -> Vec:
        F = self.mackey.level_fix
        acc = F.zero()
        for i, c in enumerate(alpha):
            if c:
                acc = F.add(acc, F.scale(c, self.act_fix[i](x)))
        return acc


def validate_module(D: ModuleData) -> Report:
    """Unit, associativity and compatibility with res, tran and w, on
    generators."""
    rep = Report(f"{D.side} module")
    M, A = D.mackey, D.green
    Me, Mf = M.level_e, M.level_fix
    Ae, Af = A.mackey.level_e, A.mackey.level_fix
    Re, Rf = A.ring_e, A.ring_fix
    for i, h in enumerate(D.act_e):
        if not h.is_well_defined():
            rep.add("well-defined", ("e", i))
    for i, h in enumerate(D.act_fix):
        if not h.is_well_defined():
            rep.add("well-defined", ("fix", i))
    if not rep.ok:
        return rep

    def prod(R, a, b):
        return R.mul(a, b) if D.side == "left" else R.mul(b, a)

    for k, m in enumerate(Me.gens()):
        if D.on_e(Re.unit, m) != m:
            rep.add("unit", ("e", k))
        for i, j in itertools.product(range(Ae.rank), repeat=2):
            a, b = Ae.gen(i), Ae.gen(j)
            if D.on_e(prod(Re, a, b), m) != D.on_e(a, D.on_e(b, m)):
                rep.add("associativity", ("e", i, j, k))
        for i in range(Ae.rank):
            a = Ae.gen(i)
            if M.w(D.on_e(a, m)) != D.on_e(A.mackey.w(a), M.w(m)):
                rep.add("w equivariance", (i, k))
            # alpha . tran(m) = tran(res(alpha) . m) is checked below per alpha
    for k, x in enumerate(Mf.gens()):
        if D.on_fix(Rf.unit, x) != x:
            rep.add("unit", ("fix", k))
        for i, j in itertools.product(range(Af.rank), repeat=2):
            a, b = Af.gen(i), Af.gen(j)
            if D.on_fix(prod(Rf, a, b), x) != D.on_fix(a, D.on_fix(b, x)):
                rep.add("associativity", ("fix", i, j, k))
        for i in range(Af.rank):
            a = Af.gen(i)
            if M.res(D.on_fix(a, x)) != D.on_e(A.mackey.res(a), M.res(x)):
                rep.add("res compatibility", (i, k), "res(alpha . x) != res(alpha) . res(x)")
        for i in range(Ae.rank):
            b = Ae.gen(i)
            if D.on_fix(A.mackey.tran(b), x) != M.tran(D.on_e(b, M.res(x))):
                rep.add("Frobenius", (i, k), "tran(beta) . x != tran(beta . res(x))")
    for k, m in enumerate(Me.gens()):
        for i in range(Af.rank):
            a = Af.gen(i)
            if D.on_fix(a, M.tran(m)) != M.tran(D.on_e(A.mackey.res(a), m)):
                rep.add("Frobenius", (i, k), "alpha . tran(m) != tran(res(alpha) . m)")
    return rep


def unit_module(M: MackeyZ2, side: str = "left") -> ModuleData:
    """``M`` as a module over the Burnside Green functor."""
    B = burnside()
    Me, Mf = M.level_e, M.level_fix
    tr = M.tran @ M.res
    return ModuleData(M, B, [Me.identity_hom()], [Mf.identity_hom(), tr], side)


def hermitian_witt_actions(H: HermitianMackey, W: "WittRing | None" = None, green: GreenZ2 | None = None):
    """Left and right actions of ``W(ring_e)`` on ``H``.

    On ``level_e`` the tensor ``a (x) a'`` acts by ``b -> a b w(a')`` from the
    left and ``b -> w(a') b a`` from the right. On the fixed level
    ``(a, c) . x = a . x + tran(mu(c (x) res x))`` and
    ``x . (a, c) = w(a) . x + tran(mu'(res x (x) c))``.
    """
    from .witt import witt_green

    if W is None or green is None:
        wg = witt_green(H.ring_e)
        W, green = wg.witt, wg.green
    R = H.ring_e
    M = H.mackey
    E, F = M.level_e, M.level_fix
    T = W.T

    def mu_left(u, b):
        acc = E.zero()
        for c, i, j in W.flip.tensor.pair_coordinates(u):
            acc = E.add(acc, E.scale(c, R.mul(R.mul(E.gen(i), b), M.w(E.gen(j)))))
        return acc

    def mu_right(b, u):
        acc = E.zero()
        for c, i, j in W.flip.tensor.pair_coordinates(u):
            acc = E.add(acc, E.scale(c, R.mul(R.mul(M.w(E.gen(j)), b), E.gen(i))))
        return acc

    left_e, right_e = [], []
    for u in T.gens():
        left_e.append(GroupHom.from_images(E, E, [mu_left(u, b) for b in E.gens()]))
        right_e.append(GroupHom.from_images(E, E, [mu_right(b, u) for b in E.gens()]))
    left_f, right_f = [], []
    for g in W.group.gens():
        a, c = W.from_group(g)
        u = W.lift(c)
        lf, rf = [], []
        for x in F.gens():
            rx = M.res(x)
            lf.append(F.add(H.act(a, x), M.tran(mu_left(u, rx))))
            rf.append(F.add(H.act(M.w(a), x), M.tran(mu_right(rx, u))))
        left_f.append(GroupHom.from_images(F, F, lf))
        right_f.append(GroupHom.from_images(F, F, rf))
    left = ModuleData(M, green, left_e, left_f, "left")
    right = ModuleData(M, green, right_e, right_f, "right")
    return left, right


# -- box products ------------------------------------------------------------------------


@dataclass
class BoxProduct:
    left: MackeyZ2
    right: MackeyZ2
    result: MackeyZ2
    tensor_e: Tensor
    tensor_fix: Tensor
    trace: list[str] = field(default_factory=list)

    @property
    def n_block1(self) -> int:
        return self.left.level_e.rank * self.right.level_e.rank

    def _block1_vector(self, m, n) -> list[int]:
        return [int(v) for v in self.tensor_e.pair_vector(m, n)]

    def _block2_vector(self, x, y) -> list[int]:
        return [int(v) for v in self.tensor_fix.pair_vector(x, y)]

    def elem_e(self, m, n) -> Vec:
        """Class of ``m (x) n`` at level e."""
        return self.result.level_e.canon(self._block1_vector(m, n))

    def elem_fix(self, x, y) -> Vec:
        """Class of ``x (x) y`` at the fixed level."""
        v = [0] * self.n_block1 + self._block2_vector(x, y)
        return self.result.level_fix.canon(v)

    def elem_tran(self, m, n) -> Vec:
        """Class ``[m (x) n]`` (the transfer of ``m (x) n``)."""
        v = self._block1_vector(m, n) + [0] * (self.left.level_fix.rank * self.right.level_fix.rank)
        return self.result.level_fix.canon(v)


def _tensor_relations(A: FgAbGroup, B: FgAbGroup, offset: int, width: int) -> list[list[int]]:
    rels = []
    from math import gcd

    for i, a in enumerate(A.moduli):
        for j, b in enumerate(B.moduli):
            g = gcd(a, b)
            if g:
                row = [0] * width
                row[offset + i * B.rank + j] = g
                rels.append(row)
    return rels


def _box(M: MackeyZ2, N: MackeyZ2, right_mod: ModuleData | None, left_mod: ModuleData | None) -> BoxProduct:
    Me, Ne, Mf, Nf = M.level_e, N.level_e, M.level_fix, N.level_fix
    Te = Tensor(Me, Ne)
    Tf = Tensor(Mf, Nf)
    n1 = Me.rank * Ne.rank
    n2 = Mf.rank * Nf.rank
    width = n1 + n2
    trace = []

    def v1(m, n):
        return [int(v) for v in Te.pair_vector(m, n)]

    def v2(x, y):
        return [int(v) for v in Tf.pair_vector(x, y)]

    def sub(a, b):
        return [p - q for p, q in zip(a, b)]

    # level e
    rels_e = _tensor_relations(Me, Ne, 0, n1)
    if right_mod is not None:
        Ae = right_mod.green.mackey.level_e
        for b in range(Ae.rank):
            beta = Ae.gen(b)
            for m in Me.gens():
                for n in Ne.gens():
                    rels_e.append(sub(v1(right_mod.on_e(beta, m), n), v1(m, left_mod.on_e(beta, n))))
        trace.append(f"level e: m.b (x) n - m (x) b.n for {Ae.rank} generators b")
    Be = canonicalize(n1, rels_e)

    # fixed level
    rels = [r + [0] * n2 for r in rels_e]
    rels += _tensor_relations(Mf, Nf, n1, width)
    for m in Me.gens():
        for n in Ne.gens():
            rels.append(sub(v1(M.w(m), N.w(n)), v1(m, n)) + [0] * n2)
    trace.append("w(m) (x) w(n) - m (x) n")
    for x in Mf.gens():
        for n in Ne.gens():
            rels.append([-t for t in v1(M.res(x), n)] + v2(x, N.tran(n)))
    trace.append("x (x) tran(n) - res(x) (x) n")
    for m in Me.gens():
        for y in Nf.gens():
            rels.append([-t for t in v1(m, N.res(y))] + v2(M.tran(m), y))
    trace.append("tran(m) (x) y - m (x) res(y)")
    if right_mod is not None:
        Af = right_mod.green.mackey.level_fix
        for k in range(Af.rank):
            alpha = Af.gen(k)
            for x in Mf.gens():
                for y in Nf.gens():
                    rels.append([0] * n1 + sub(v2(right_mod.on_fix(alpha, x), y), v2(x, left_mod.on_fix(alpha, y))))
        trace.append(f"x.a (x) y - x (x) a.y for {Af.rank} generators a")
    Bf = canonicalize(width, rels)

    tran = zeros(width, n1)
    for k in range(n1):
        tran[k, k] = 1
    res = zeros(n1, width)
    for i, m in enumerate(Me.gens()):
        for j, n in enumerate(Ne.gens()):
            col = [p + q for p, q in zip(v1(m, n), v1(M.w(m), N.w(n)))]
            res[:, i * Ne.rank + j] = col
    for i, x in enumerate(Mf.gens()):
        for j, y in enumerate(Nf.gens()):
            res[:, n1 + i * Nf.rank + j] = v1(M.res(x), N.res(y))
    w = zeros(n1, n1)
    for i, m in enumerate(Me.gens()):
        for j, n in enumerate(Ne.gens()):
            w[:, i * Ne.rank + j] = v1(M.w(m), N.w(n))
    result = MackeyZ2(
        Be,
        Bf,
        GroupHom.from_presentation(Bf, Be, res),
        GroupHom.from_presentation(Be, Bf, tran),
        GroupHom.from_presentation(Be, Be, w),
    )
    return BoxProduct(M, N, result, Te, Tf, trace)


def box(M: MackeyZ2, N: MackeyZ2) -> BoxProduct:
    """``M box N`` by the generators-and-relations formula."""
    return _box(M, N, None, None)


def box_over_green(right_mod: ModuleData, left_mod: ModuleData, A: GreenZ2 | None = None) -> BoxProduct:
    """``M box_A N`` for a right ``A``-module ``M`` and a left ``A``-module ``N``."""
    for D in (right_mod, left_mod):
        rep = validate_module(D)
        if not rep.ok:
            raise ValueError(f"invalid module data: {rep}")
    return _box(right_mod.mackey, left_mod.mackey, right_mod, left_mod)


# -- canonical maps --------------------------------------------------------------------------


def unit_map_left(N: MackeyZ2, P: BoxProduct) -> MackeyMorphism:
    """``N -> Burnside box N``, ``n -> 1 (x) n`` and ``y -> 1 (x) y``."""
    f_e = GroupHom.from_images(N.level_e, P.result.level_e, [P.elem_e((1,), n) for n in N.level_e.gens()])
    f_fix = GroupHom.from_images(
        N.level_fix, P.result.level_fix, [P.elem_fix((1, 0), y) for y in N.level_fix.gens()]
    )
    return MackeyMorphism(N, P.result, f_e, f_fix)


def unit_map_right(M: MackeyZ2, P: BoxProduct) -> MackeyMorphism:
    f_e = GroupHom.from_images(M.level_e, P.result.level_e, [P.elem_e(m, (1,)) for m in M.level_e.gens()])
    f_fix = GroupHom.from_images(
        M.level_fix, P.result.level_fix, [P.elem_fix(x, (1, 0)) for x in M.level_fix.gens()]
    )
    return MackeyMorphism(M, P.result, f_e, f_fix)


def swap_map(P: BoxProduct, Q: BoxProduct) -> MackeyMorphism:
    """``M box N -> N box M`` exchanging tensor factors."""
    M, N = P.left, P.right
    Be, Bf = P.result.level_e, P.result.level_fix
    n1 = P.n_block1
    img_e = []
    for k in range(Be.rank):
        v = Be.lift(Be.gen(k))
        acc = Q.result.level_e.zero()
        for idx, c in enumerate(v):
            if c:
                i, j = divmod(idx, N.level_e.rank)
                acc = Q.result.level_e.add(acc, Q.result.level_e.scale(int(c), Q.elem_e(N.level_e.gen(j), M.level_e.gen(i))))
        img_e.append(acc)
    img_f = []
    for k in range(Bf.rank):
        v = Bf.lift(Bf.gen(k))
        acc = Q.result.level_fix.zero()
        for idx, c in enumerate(v):
            if not c:
                continue
            if idx < n1:
                i, j = divmod(idx, N.level_e.rank)
                t = Q.elem_tran(N.level_e.gen(j), M.level_e.gen(i))
            else:
                i, j = divmod(idx - n1, N.level_fix.rank)
                t = Q.elem_fix(N.level_fix.gen(j), M.level_fix.gen(i))
            acc = Q.result.level_fix.add(acc, Q.result.level_fix.scale(int(c), t))
        img_f.append(acc)
    f_e = GroupHom.from_images(Be, Q.result.level_e, img_e)
    f_fix = GroupHom.from_images(Bf, Q.result.level_fix, img_f)
    return MackeyMorphism(P.result, Q.result, f_e, f_fix)


def check_box(P: BoxProduct) -> Report:
    return validate_mackey(P.result)
