"""Closed-form presentations of pi_0 of real topological Hochschild homology.

``thr_pi0`` presents the fixed level as ``(X (x) X) / T`` for the fixed level
``X`` of a Hermitian Mackey functor. Every result is cross-checked against
the box product over the Witt Green functor by an explicit comparison map.
Group rings go through the dihedral bar construction of the group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .fgab import FgAbGroup, GroupHom, Tensor, induced_hom, quotient
from .mackey.box import box, box_over_green, hermitian_witt_actions
from .mackey.core import (
    HermitianMackey,
    MackeyMorphism,
    MackeyZ2,
    validate_hermitian,
    validate_mackey,
)
from .mackey.witt import witt_green
from .intlinalg import zeros
from .ringalg import CommutatorQuotient, FinMonoid, PresRing, commutator_quotient, validate_monoid

Vec = tuple[int, ...]


@dataclass
class Pi0Report:
    result: MackeyZ2
    trace: list[str] = field(default_factory=list)
    ring: PresRing | None = None
    norm: list[Vec] | None = None
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    # internals kept for comparison maps
    hermitian: HermitianMackey | None = None
    commutator: CommutatorQuotient | None = None
    tensor: Tensor | None = None
    fix_projection: GroupHom | None = None
    inclusion: MackeyMorphism | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def unit_e(self) -> Vec:
        H = self.hermitian
        return self.commutator.projection(H.ring_e.unit)

    def unit_fix(self) -> Vec:
        H = self.hermitian
        return self.fix_projection(self.tensor.elem(H.unit_fix, H.unit_fix))

    def to_json(self) -> dict:
        out = {"mackey": self.result.to_json(), "relations": list(self.trace), "checks": dict(sorted(self.checks.items()))}
        if self.ring is not None:
            out["ring_fix"] = {"mul": [[list(v) for v in row] for row in self.ring.table], "unit": list(self.ring.unit)}
        if self.norm is not None:
            out["norm"] = [list(v) for v in self.norm]
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _require_unit(H: HermitianMackey) -> None:
    if H.unit_fix is None:
        raise ValueError("Hermitian Mackey functor needs a unit on the fixed level")
    rep = validate_hermitian(H)
    if not rep.ok:
        raise ValueError(f"invalid Hermitian data: {rep}")


def _pi0(H: HermitianMackey, relations, trace: list[str]) -> Pi0Report:
    R, M = H.ring_e, H.mackey
    X = M.level_fix
    cq = commutator_quotient(R)
    T = Tensor(X, X)
    G = T.group
    Q, p = quotient(G, relations)
    cols = zeros(cq.group.rank, X.rank * X.rank)
    for i, x in enumerate(X.gens()):
        for j, y in enumerate(X.gens()):
            cols[:, i * X.rank + j] = cq.projection(R.mul(M.res(x), M.res(y)))
    res_on_tensor = GroupHom.from_lifts(G, cq.group, cols)
    res = induced_hom(p, cq.group.identity_hom(), res_on_tensor)
    tran_on_ring = GroupHom.from_images(
        R.carrier, Q, [p(T.elem(M.tran(a), H.unit_fix)) for a in R.carrier.gens()]
    )
    tran = induced_hom(cq.projection, Q.identity_hom(), tran_on_ring)
    result = MackeyZ2(cq.group, Q, res, tran, cq.involution)
    rep = Pi0Report(result, trace, hermitian=H, commutator=cq, tensor=T, fix_projection=p)
    rep.checks["Mackey axioms"] = validate_mackey(result).ok
    return rep


def thr_pi0(H: HermitianMackey, oracle: bool = True) -> Pi0Report:
    """``(R/[R,R]; (X (x) X)/T)`` with ``T`` generated by
    ``x (x) a.y - w(a).x (x) y`` and
    ``x (x) tran(a res(y) w(b)) - tran(w(b) res(x) a) (x) y``."""
    _require_unit(H)
    R, M = H.ring_e, H.mackey
    X = M.level_fix
    T = Tensor(X, X)
    xs, gs = X.gens(), R.carrier.gens()
    rels = []
    for a in gs:
        wa = M.w(a)
        for x in xs:
            wax = H.act(wa, x)
            for y in xs:
                rels.append(T.group.sub(T.elem(x, H.act(a, y)), T.elem(wax, y)))
    for a, b in itertools.product(gs, repeat=2):
        wb = M.w(b)
        for x in xs:
            left = M.tran(R.mul(R.mul(wb, M.res(x)), a))
            for y in xs:
                right = M.tran(R.mul(R.mul(a, M.res(y)), wb))
                rels.append(T.group.sub(T.elem(x, right), T.elem(left, y)))
    trace = [
        f"x (x) a.y - w(a).x (x) y over {len(gs)} ring and {len(xs)}^2 fixed-level generators",
        f"x (x) tran(a res(y) w(b)) - tran(w(b) res(x) a) (x) y over {len(gs)}^2 x {len(xs)}^2 generators",
    ]
    rep = _pi0(H, rels, trace)
    if oracle:
        rep.checks["agrees with box over Witt vectors"] = _witt_oracle(rep).is_isomorphism()
    return rep


def _witt_oracle(rep: Pi0Report) -> MackeyMorphism:
    """Comparison map into ``H box_W H``: ``[a] -> a (x) 1`` and
    ``x (x) y -> x (x) y``."""
    H = rep.hermitian
    R = H.ring_e
    wg = witt_green(R)
    left, right = hermitian_witt_actions(H, wg.witt, wg.green)
    P = box_over_green(right, left)
    X = H.level_fix
    f_e = GroupHom.from_images(R.carrier, P.result.level_e, [P.elem_e(a, R.unit) for a in R.carrier.gens()])
    phi_e = induced_hom(rep.commutator.projection, P.result.level_e.identity_hom(), f_e)
    cols = zeros(P.result.level_fix.rank, X.rank * X.rank)
    for i, x in enumerate(X.gens()):
        for j, y in enumerate(X.gens()):
            cols[:, i * X.rank + j] = P.elem_fix(x, y)
    f_fix = GroupHom.from_lifts(rep.tensor.group, P.result.level_fix, cols)
    phi_fix = induced_hom(rep.fix_projection, P.result.level_fix.identity_hom(), f_fix)
    return MackeyMorphism(rep.result, P.result, phi_e, phi_fix)


def thr_pi0_commutative(H: HermitianMackey, oracle: bool = True) -> Pi0Report:
    """Commutative case: ``T`` generated by ``x (x) N(a)y - x N(a) (x) y`` and
    ``x (x) tran(a)y - x tran(a) (x) y``; the fixed level is a ring and the
    norm is ``a -> N(a) (x) 1``."""
    _require_unit(H)
    R, M, RF = H.ring_e, H.mackey, H.ring_fix
    if not R.is_commutative():
        raise ValueError("ring is not commutative")
    if RF is None:
        raise ValueError("commutative case needs a ring structure on the fixed level")
    X = M.level_fix
    T = Tensor(X, X)
    xs, gs = X.gens(), R.carrier.gens()
    rels = []
    for a in gs:
        na, ta = H.norm(a), M.tran(a)
        for x in xs:
            for y in xs:
                rels.append(T.group.sub(T.elem(x, RF.mul(na, y)), T.elem(RF.mul(x, na), y)))
                rels.append(T.group.sub(T.elem(x, RF.mul(ta, y)), T.elem(RF.mul(x, ta), y)))
    trace = [
        f"x (x) N(a)y - xN(a) (x) y over {len(gs)} ring generators",
        f"x (x) tran(a)y - x tran(a) (x) y over {len(gs)} ring generators",
    ]
    rep = _pi0(H, rels, trace)
    p, Q = rep.fix_projection, rep.result.level_fix

    def tensor_mul(u, v):
        acc = T.group.zero()
        for c, i, j in T.pair_coordinates(u):
            for d, k, l in T.pair_coordinates(v):
                t = T.elem(RF.mul(xs[i], xs[k]), RF.mul(xs[j], xs[l]))
                acc = T.group.add(acc, T.group.scale(c * d, t))
        return acc

    lifts = [T.group.reduce(p.preimage(g)) for g in Q.gens()]
    table = [[p(tensor_mul(u, v)) for v in lifts] for u in lifts]
    ring = PresRing(Q, table, p(T.elem(H.unit_fix, H.unit_fix)))
    rep.ring = ring

    def norm(a):
        return p(T.elem(H.norm(a), H.unit_fix))

    rep.norm = [norm(a) for a in gs]
    # ideal check: the relation subgroup is closed under multiplication
    K, incl = p.kernel()
    closed = True
    for k in range(K.rank):
        r = incl.column(k)
        for g in T.group.gens():
            if not Q.is_zero(p(tensor_mul(r, g))):
                closed = False
    rep.checks["relations form an ideal"] = closed
    res = rep.result.res
    QR = rep.commutator.group

    def rmul(u, v):
        return rep.commutator.projection(R.mul(_lift(rep, u), _lift(rep, v)))

    rep.checks["res is a unital ring map"] = res(ring.unit) == rep.unit_e() and all(
        res(ring.mul(Q.gen(i), Q.gen(j))) == rmul(res(Q.gen(i)), res(Q.gen(j)))
        for i in range(Q.rank)
        for j in range(Q.rank)
    )
    rep.checks["norm is multiplicative"] = all(
        norm(R.mul(a, b)) == ring.mul(norm(a), norm(b)) for a in gs for b in gs
    ) and norm(R.unit) == ring.unit
    if oracle:
        plain = thr_pi0(H, oracle=False)
        f_fix = induced_hom(plain.fix_projection, Q.identity_hom(), p)
        m = MackeyMorphism(plain.result, rep.result, QR.identity_hom(), f_fix)
        rep.checks["agrees with the general presentation"] = m.is_isomorphism()
    return rep


def _lift(rep: Pi0Report, u) -> Vec:
    pre = rep.commutator.projection.preimage(u)
    return rep.hermitian.ring_e.carrier.reduce(pre)


# -- dihedral bar construction ------------------------------------------------------


@dataclass
class DihedralPi0:
    """pi_0 of the dihedral bar construction: conjugation classes at level e;
    orbits of classes plus fixed pairs at the fixed level."""

    mackey: MackeyZ2
    class_names: list[str]
    class_w: list[int]
    orbits: list[tuple[int, int]]
    pair_names: list[str]
    pair_res: list[int]

    @property
    def n_orbits(self) -> int:
        return len(self.orbits)

    def orbit_of(self, k: int) -> int:
        for o, (a, b) in enumerate(self.orbits):
            if k in (a, b):
                return o
        raise KeyError(k)


def _dihedral_from_data(class_names, class_w, pair_names, pair_res) -> DihedralPi0:
    nc = len(class_names)
    orbits = sorted({(min(k, class_w[k]), max(k, class_w[k])) for k in range(nc)})
    no, npairs = len(orbits), len(pair_names)
    E = FgAbGroup.free(nc)
    F = FgAbGroup.free(no + npairs)
    w = zeros(nc, nc)
    for k in range(nc):
        w[class_w[k], k] = 1
    tran = zeros(no + npairs, nc)
    res = zeros(nc, no + npairs)
    for o, (a, b) in enumerate(orbits):
        tran[o, a] = 1
        tran[o, b] = 1
        res[a, o] += 1
        res[b, o] += 1
    for q, k in enumerate(pair_res):
        res[k, no + q] = 1
    orbit_names = [class_names[a] for a, _ in orbits]
    M = MackeyZ2(
        E, F, GroupHom(F, E, res), GroupHom(E, F, tran), GroupHom(E, E, w), list(class_names), orbit_names + list(pair_names)
    )
    return DihedralPi0(M, list(class_names), list(class_w), orbits, list(pair_names), list(pair_res))


def dihedral_pi0(Mon: FinMonoid) -> DihedralPi0:
    rep = validate_monoid(Mon)
    if not rep.ok:
        raise ValueError(f"invalid monoid: {rep}")
    table = np.ascontiguousarray(Mon.table, dtype=np.int64)
    labels = [int(x) for x in _kernels.conjugation_classes(table)]
    reps = sorted(set(labels))
    index = {r: k for k, r in enumerate(reps)}
    class_of = [index[labels[m]] for m in range(Mon.size)]
    class_names = [Mon.names[r] for r in reps]
    class_w = [class_of[Mon.iota[r]] for r in reps]
    fixed = Mon.fixed()
    f = len(fixed)
    if f:
        plabels = [
            int(x)
            for x in _kernels.pair_classes(table, np.array(Mon.iota, dtype=np.int64), np.array(fixed, dtype=np.int64))
        ]
    else:
        plabels = []
    preps = sorted(set(plabels))
    pair_names, pair_res = [], []
    for pr in preps:
        x, y = fixed[pr // f], fixed[pr % f]
        pair_names.append(f"[{Mon.names[x]},{Mon.names[y]}]")
        pair_res.append(class_of[Mon.mul(x, y)])
    return _dihedral_from_data(class_names, class_w, pair_names, pair_res)


def group_ring_presentation(D: DihedralPi0) -> tuple[MackeyZ2, GroupHom]:
    """The integral group-ring answer: the fixed level of ``D`` modulo
    ``2[g,g'] - [gg']``, with the quotient map from ``D``'s fixed level."""
    M = D.mackey
    F = M.level_fix
    no = D.n_orbits
    rels = []
    for q, k in enumerate(D.pair_res):
        v = [0] * F.rank
        v[no + q] = 2
        v[D.orbit_of(k)] -= 1
        rels.append(v)
    Q, p = quotient(F, rels)
    res = induced_hom(p, M.level_e.identity_hom(), M.res)
    tran = p @ M.tran
    return MackeyZ2(M.level_e, Q, res, tran, M.w, M.names_e), p


def thr_group_ring(G: FinMonoid, base: Pi0Report | HermitianMackey, base_is_integers: bool = False) -> Pi0Report:
    """``pi_0 THR(A[G]) = pi_0 THR(A) box pi_0(dihedral bar construction of G)``,
    and for ``A = Z`` also the direct presentation, compared by an explicit
    isomorphism."""
    if not G.is_group():
        raise ValueError(f"{G.label} is not a group")
    if isinstance(base, HermitianMackey):
        base = thr_pi0(base, oracle=False)
    D = dihedral_pi0(G)
    P = box(base.result, D.mackey)
    rep = Pi0Report(P.result, list(P.trace))
    rep.checks["Mackey axioms"] = validate_mackey(P.result).ok
    ue, uf = base.unit_e(), base.unit_fix()
    E, F = D.mackey.level_e, D.mackey.level_fix
    f_e = GroupHom.from_images(E, P.result.level_e, [P.elem_e(ue, e) for e in E.gens()])
    fix_images = []
    for o, (a, _) in enumerate(D.orbits):
        fix_images.append(P.elem_tran(ue, E.gen(a)))
    for q in range(len(D.pair_names)):
        fix_images.append(P.elem_fix(uf, F.gen(D.n_orbits + q)))
    f_fix = GroupHom.from_images(F, P.result.level_fix, fix_images)
    rep.notes.append(f"dihedral part: {len(D.class_names)} classes, {len(D.pair_names)} fixed pairs")
    if base_is_integers:
        direct, proj = group_ring_presentation(D)
        phi_fix = induced_hom(proj, P.result.level_fix.identity_hom(), f_fix)
        m = MackeyMorphism(direct, P.result, f_e, phi_fix)
        rep.checks["Mackey axioms (direct presentation)"] = validate_mackey(direct).ok
        rep.checks["direct presentation agrees with box product"] = m.is_isomorphism()
        rep.result = direct
        rep.result.names_e = D.class_names
    rep.inclusion = MackeyMorphism(D.mackey, P.result, f_e, f_fix)
    rep.checks["unit inclusion is a morphism"] = rep.inclusion.is_morphism()
    rep.commutator = None
    return rep


# -- Laurent polynomials -----------------------------------------------------------------


def laurent_dihedral(N: int) -> DihedralPi0:
    """Dihedral data of ``Z`` with inversion restricted to ``t^n, |n| <= N``:
    classes are single elements and the only fixed pair is ``[1,1]``."""
    if N < 1:
        raise ValueError("window must be positive")
    names = [_tname(n) for n in range(-N, N + 1)]
    class_w = [2 * N - k for k in range(2 * N + 1)]
    return _dihedral_from_data(names, class_w, ["[1,1]"], [N])


def _tname(n: int) -> str:
    return "1" if n == 0 else ("t" if n == 1 else f"t^{n}")


def laurent_thr_pi0(N: int) -> MackeyZ2:
    """Truncation of the integral answer for ``Z[t, t^-1]``: level e free on
    ``t^n`` (``|n| <= N``), fixed level free on ``t^1..t^N`` and ``u`` with
    ``tran(1) = 2u``."""
    D = laurent_dihedral(N)
    M, _ = group_ring_presentation(D)
    return M


def laurent_closed_form(N: int) -> MackeyZ2:
    """The same Mackey functor written down directly on the basis
    ``t^1..t^N, u`` of the fixed level."""
    E = FgAbGroup.free(2 * N + 1)
    F = FgAbGroup.free(N + 1)
    idx = lambda n: n + N  # noqa: E731
    tran = zeros(N + 1, 2 * N + 1)
    res = zeros(2 * N + 1, N + 1)
    w = zeros(2 * N + 1, 2 * N + 1)
    for n in range(-N, N + 1):
        w[idx(-n), idx(n)] = 1
        if n == 0:
            tran[N, idx(0)] = 2
        else:
            tran[abs(n) - 1, idx(n)] = 1
    for n in range(1, N + 1):
        res[idx(n), n - 1] = 1
        res[idx(-n), n - 1] = 1
    res[idx(0), N] = 1
    names_e = [_tname(n) for n in range(-N, N + 1)]
    names_fix = [_tname(n) for n in range(1, N + 1)] + ["u"]
    return MackeyZ2(E, F, GroupHom(F, E, res), GroupHom(E, F, tran), GroupHom(E, E, w), names_e, names_fix)


def laurent_window_inclusion(small: int, large: int) -> MackeyMorphism:
    """Inclusion of the closed form at window ``small`` into ``large``."""
    A, B = laurent_closed_form(small), laurent_closed_form(large)
    fe = zeros(2 * large + 1, 2 * small + 1)
    for n in range(-small, small + 1):
        fe[n + large, n + small] = 1
    ff = zeros(large + 1, small + 1)
    for n in range(1, small + 1):
        ff[n - 1, n - 1] = 1
    ff[large, small] = 1
    return MackeyMorphism(A, B, GroupHom(A.level_e, B.level_e, fe), GroupHom(A.level_fix, B.level_fix, ff))
