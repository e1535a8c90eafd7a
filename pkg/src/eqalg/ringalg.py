"""Rings given by structure constants, finite monoids with anti-involution,
monoid rings and the quotients needed for pi_0 computations."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .fgab import (
    FgAbGroup,
    GroupHom,
    InvariantsCoinvariants,
    Tensor,
    canonicalize,
    group_from_json,
    induced_hom,
    invariants_and_coinvariants,
    quotient,
)
from .intlinalg import imat, zeros
from .report import Report

Vec = tuple[int, ...]


class PresRing:
    """A unital ring whose additive group is ``carrier``.

    ``table[i][j]`` is the product of canonical generators ``i`` and ``j`` in
    canonical coordinates; ``w`` is an optional anti-involution.
    """

    def __init__(self, carrier: FgAbGroup, table, unit, w: GroupHom | None = None, names=None):
        self.carrier = carrier
        r = carrier.rank
        self.table = [[carrier.reduce(table[i][j]) for j in range(r)] for i in range(r)]
        self.unit = carrier.reduce(unit)
        self.w = w
        self.names = list(names) if names is not None else None
        # filled by from_presentation when the user table disagrees with itself
        self.presentation_errors: list[tuple[int, int]] = []

    @classmethod
    def from_presentation(cls, group: FgAbGroup, mul, unit, w=None, names=None) -> "PresRing":
        """Build from data over the presentation generators of ``group``:
        ``mul[a][b]`` expands ``g_a * g_b``, ``unit`` and the columns of ``w``
        are vectors over the same generators."""
        n = group.ngens
        mul = [[[int(x) for x in mul[a][b]] for b in range(n)] for a in range(n)]

        def user_product(x, y):
            acc = [0] * n
            for a, xa in enumerate(x):
                if xa:
                    for b, yb in enumerate(y):
                        if yb:
                            for c, v in enumerate(mul[a][b]):
                                acc[c] += xa * yb * v
            return acc

        r = group.rank
        lifts = [group.lift(group.gen(i)) for i in range(r)]
        table = [[group.canon(user_product(lifts[i], lifts[j])) for j in range(r)] for i in range(r)]
        wh = None
        if w is not None:
            wh = GroupHom.from_presentation(group, group, imat(w, n))
        ring = cls(group, table, group.canon(unit), wh, names)
        for a in range(n):
            for b in range(n):
                ea = group.canon([int(a == c) for c in range(n)])
                eb = group.canon([int(b == c) for c in range(n)])
                if ring.mul(ea, eb) != group.canon(mul[a][b]):
                    ring.presentation_errors.append((a, b))
        return ring

    # -- arithmetic ------------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.carrier.rank

    def one(self) -> Vec:
        return self.unit

    def zero(self) -> Vec:
        return self.carrier.zero()

    def gen(self, i: int) -> Vec:
        return self.carrier.gen(i)

    def add(self, x, y) -> Vec:
        return self.carrier.add(x, y)

    def sub(self, x, y) -> Vec:
        return self.carrier.sub(x, y)

    def neg(self, x) -> Vec:
        return self.carrier.neg(x)

    def scale(self, k: int, x) -> Vec:
        return self.carrier.scale(k, x)

    def mul(self, x, y) -> Vec:
        acc = [0] * self.rank
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, v in enumerate(row[j]):
                    if v:
                        acc[k] += c * v
        return self.carrier.reduce(acc)

    def mul_many(self, *xs) -> Vec:
        acc = self.unit
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def power(self, x, n: int) -> Vec:
        acc = self.unit
        for _ in range(n):
            acc = self.mul(acc, x)
        return acc

    def involution(self, x) -> Vec:
        if self.w is None:
            raise ValueError("ring has no anti-involution")
        return self.w(x)

    def left_mult(self, a) -> GroupHom:
        return GroupHom.from_images(self.carrier, self.carrier, [self.mul(a, g) for g in self.carrier.gens()])

    def right_mult(self, a) -> GroupHom:
        return GroupHom.from_images(self.carrier, self.carrier, [self.mul(g, a) for g in self.carrier.gens()])

    def is_commutative(self) -> bool:
        r = self.rank
        return all(self.table[i][j] == self.table[j][i] for i in range(r) for j in range(i + 1, r))

    def with_involution(self, w: GroupHom | None) -> "PresRing":
        return PresRing(self.carrier, self.table, self.unit, w, self.names)

    def describe_element(self, x) -> str:
        names = self.names or [f"e{i}" for i in range(self.rank)]
        terms = []
        for c, n in zip(self.carrier.reduce(x), names):
            if c == 1:
                terms.append(n)
            elif c:
                terms.append(f"{c}*{n}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"PresRing({self.carrier}, w={'yes' if self.w else 'no'})"


def validate_ring(R: PresRing) -> Report:
    """Check bilinearity, associativity, unit laws and, if present, the
    anti-involution laws on generators."""
    rep = Report("ring")
    G = R.carrier
    r = R.rank
    for a, b in R.presentation_errors:
        rep.add("well-defined", (a, b), "product of presentation generators disagrees with the relations")
    for i, d in enumerate(G.torsion):
        for j in range(r):
            if not G.is_zero(G.scale(d, R.table[i][j])):
                rep.add("well-defined", (i, j), f"{d} * g{i} = 0 but {d} * g{i}g{j} != 0")
            if not G.is_zero(G.scale(d, R.table[j][i])):
                rep.add("well-defined", (j, i), f"{d} * g{i} = 0 but {d} * g{j}g{i} != 0")
    gens = G.gens()
    for i, j, k in itertools.product(range(r), repeat=3):
        if R.mul(R.mul(gens[i], gens[j]), gens[k]) != R.mul(gens[i], R.mul(gens[j], gens[k])):
            rep.add("associativity", (i, j, k))
    for i in range(r):
        if R.mul(R.unit, gens[i]) != gens[i] or R.mul(gens[i], R.unit) != gens[i]:
            rep.add("unit", (i,), "1 * g != g or g * 1 != g")
    if R.w is not None:
        w = R.w
        if not w.is_well_defined():
            rep.add("well-defined", ("w",), "involution does not respect relations")
        for i in range(r):
            if w(w(gens[i])) != gens[i]:
                rep.add("involution", (i,), "w(w(g)) != g")
        if w(R.unit) != R.unit:
            rep.add("involution unit", (), "w(1) != 1")
        for i in range(r):
            for j in range(r):
                if w(R.mul(gens[i], gens[j])) != R.mul(w(gens[j]), w(gens[i])):
                    rep.add("anti-multiplicative", (i, j), "w(ab) != w(b)w(a)")
    return rep


# -- built-in rings ------------------------------------------------------------


def integers() -> PresRing:
    return PresRing(FgAbGroup.free(1), [[(1,)]], (1,), GroupHom(FgAbGroup.free(1), FgAbGroup.free(1), [[1]]), ["1"])


def residue_ring(n: int) -> PresRing:
    """``Z/n`` with the trivial involution; ``n = 0`` gives ``Z``."""
    if n == 0:
        return integers()
    G = FgAbGroup.cyclic(n)
    if G.rank == 0:
        return PresRing(G, [], (), G.identity_hom(), [])
    return PresRing(G, [[(1,)]], (1,), G.identity_hom(), ["1"])


def gaussian_integers() -> PresRing:
    """``Z[i]`` on the basis ``1, i`` with complex conjugation."""
    G = FgAbGroup.free(2)
    table = [[(1, 0), (0, 1)], [(0, 1), (-1, 0)]]
    return PresRing(G, table, (1, 0), GroupHom(G, G, [[1, 0], [0, -1]]), ["1", "i"])


def matrix_ring(n: int = 2) -> PresRing:
    """``M_n(Z)`` on elementary matrices ``E_ij`` (row-major), with the
    transpose as anti-involution."""
    N = n * n
    G = FgAbGroup.free(N)
    table = [[[0] * N for _ in range(N)] for _ in range(N)]
    for (i, j), (k, l) in itertools.product(itertools.product(range(n), repeat=2), repeat=2):
        if j == k:
            table[i * n + j][k * n + l][i * n + l] = 1
    unit = [int(i == j) for i in range(n) for j in range(n)]
    T = zeros(N, N)
    for i in range(n):
        for j in range(n):
            T[j * n + i, i * n + j] = 1
    names = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return PresRing(G, table, unit, GroupHom(G, G, T), names)


# -- commutator quotient and the tensor square ----------------------------------


@dataclass
class CommutatorQuotient:
    group: FgAbGroup
    projection: GroupHom
    involution: GroupHom | None


def commutator_quotient(R: PresRing) -> CommutatorQuotient:
    """``R / [R, R]``. Generator commutators suffice since ``ab - ba`` is
    additive in each variable."""
    gens = R.carrier.gens()
    comms = [R.sub(R.mul(a, b), R.mul(b, a)) for a, b in itertools.combinations(gens, 2)]
    Q, p = quotient(R.carrier, comms)
    w = induced_hom(p, p, R.w) if R.w is not None else None
    return CommutatorQuotient(Q, p, w)


@dataclass
class FlipSquare:
    """``S (x) S`` as a ring with the flip automorphism ``tau``."""

    base: PresRing
    tensor: Tensor
    ring: PresRing
    tau: GroupHom

    @cached_property
    def orbits(self) -> InvariantsCoinvariants:
        return invariants_and_coinvariants(self.ring.carrier, self.tau)

    def elem(self, a, b) -> Vec:
        return self.tensor.elem(a, b)

    def mul(self, x, y) -> Vec:
        return self.ring.mul(x, y)


def flip_square(S: PresRing) -> FlipSquare:
    T = Tensor(S.carrier, S.carrier)
    G = T.group
    r = S.rank
    gens = S.carrier.gens()
    # structure constants on presentation pairs, then pushed to canonical form
    npairs = r * r
    mul_user = [[None] * npairs for _ in range(npairs)]
    for (i, j), (k, l) in itertools.product(itertools.product(range(r), repeat=2), repeat=2):
        prod_ = T.pair_vector(S.mul(gens[i], gens[k]), S.mul(gens[j], gens[l]))
        mul_user[i * r + j][k * r + l] = [int(x) for x in prod_]
    unit = [int(x) for x in T.pair_vector(S.unit, S.unit)]
    tau_user = zeros(npairs, npairs)
    for i in range(r):
        for j in range(r):
            tau_user[j * r + i, i * r + j] = 1
    ring = PresRing.from_presentation(G, mul_user, unit)
    if S.names and _is_identity(G):
        ring.names = [f"{a}(x){b}" for a in S.names for b in S.names]
    tau = GroupHom.from_presentation(G, G, tau_user)
    return FlipSquare(S, T, ring, tau)


def _is_identity(G: FgAbGroup) -> bool:
    return all(
        int(G.to_canon[i, j]) == int(i == j) for i in range(G.rank) for j in range(G.ngens)
    ) and G.rank == G.ngens


# -- finite monoids ------------------------------------------------------------------


@dataclass(frozen=True)
class FinMonoid:
    names: tuple[str, ...]
    table: np.ndarray
    iota: tuple[int, ...]
    identity: int
    label: str = field(default="M", compare=False)

    @property
    def size(self) -> int:
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def index(self, name: str) -> int:
        return self.names.index(name)

    def inverse(self, a: int) -> int | None:
        for b in range(self.size):
            if self.table[a, b] == self.identity and self.table[b, a] == self.identity:
                return b
        return None

    def is_group(self) -> bool:
        return all(self.inverse(a) is not None for a in range(self.size))

    def fixed(self) -> list[int]:
        return [m for m in range(self.size) if self.iota[m] == m]

    def with_involution(self, iota) -> "FinMonoid":
        return FinMonoid(self.names, self.table, tuple(iota), self.identity, self.label)


def validate_monoid(M: FinMonoid) -> Report:
    rep = Report(f"monoid {M.label}")
    n = M.size
    t = M.table
    if t.shape != (n, n) or (n and (t.min() < 0 or t.max() >= n)):
        rep.add("table", (), "table must be n x n with entries in range(n)")
        return rep
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a, b], c] != t[a, t[b, c]]:
            rep.add("associativity", (a, b, c))
            break
    for a in range(n):
        if t[M.identity, a] != a or t[a, M.identity] != a:
            rep.add("unit", (a,))
    if sorted(M.iota) != list(range(n)) and len(M.iota) != n:
        rep.add("involution", (), "iota must be a map on the elements")
        return rep
    for a in range(n):
        if M.iota[M.iota[a]] != a:
            rep.add("involution", (a,), "iota(iota(m)) != m")
    for a in range(n):
        for b in range(n):
            if M.iota[t[a, b]] != t[M.iota[b], M.iota[a]]:
                rep.add("anti-multiplicative", (a, b), "iota(mn) != iota(n)iota(m)")
    return rep


def monoid_from_table(names, table, iota=None, identity=None, label="M") -> FinMonoid:
    t = np.array(table, dtype=np.int64)
    n = len(names)
    if identity is None:
        cands = [e for e in range(n) if all(t[e, a] == a and t[a, e] == a for a in range(n))]
        if not cands:
            raise ValueError("monoid has no identity element")
        identity = cands[0]
    if iota is None:
        iota = tuple(range(n))
    return FinMonoid(tuple(names), t, tuple(int(i) for i in iota), int(identity), label)


def group_with_inversion(names, table, label="G") -> FinMonoid:
    M = monoid_from_table(names, table, label=label)
    inv = [M.inverse(a) for a in range(M.size)]
    if any(i is None for i in inv):
        raise ValueError(f"{label} is not a group")
    return M.with_involution(inv)


def trivial_monoid() -> FinMonoid:
    return monoid_from_table(["1"], [[0]], label="1")


def cyclic_group(n: int) -> FinMonoid:
    names = ["1", "g"] + [f"g^{k}" for k in range(2, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return group_with_inversion(names[:n], table, label=f"C{n}")


def _closure(gens, compose, identity):
    elems = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
                    new.append(y)
        frontier = new
    return elems


def _cycles(p) -> str:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = p[j]
        out.append("(" + " ".join(cyc) + ")")
    return "".join(out) or "()"


def permutation_group(generators, label="G") -> FinMonoid:
    """The group generated by permutations (tuples of images of 0..n-1)."""
    gens = [tuple(g) for g in generators]
    n = len(gens[0])
    ident = tuple(range(n))

    def compose(p, q):  # p after q
        return tuple(p[q[i]] for i in range(n))

    elems = sorted(_closure(gens, compose, ident), key=lambda p: (p != ident, p))
    index = {p: k for k, p in enumerate(elems)}
    table = [[index[compose(a, b)] for b in elems] for a in elems]
    return group_with_inversion([_cycles(p) for p in elems], table, label)


def symmetric_group(n: int = 3) -> FinMonoid:
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return permutation_group(gens, label=f"S{n}")


def dihedral_group(n: int = 4) -> FinMonoid:
    """Symmetries of a regular ``n``-gon, order ``2n``."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return permutation_group([rot, ref], label=f"D{n}")


def quaternion_group() -> FinMonoid:
    """``{±1, ±i, ±j, ±k}``, elements as integer quaternions."""

    def qmul(a, b):
        a0, a1, a2, a3 = a
        b0, b1, b2, b3 = b
        return (
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    elems = _closure([(0, 1, 0, 0), (0, 0, 1, 0)], qmul, (1, 0, 0, 0))
    letters = "1ijk"

    def name(q):
        k = next(i for i, c in enumerate(q) if c)
        return ("-" if q[k] < 0 else "") + letters[k]

    index = {q: k for k, q in enumerate(elems)}
    table = [[index[qmul(a, b)] for b in elems] for a in elems]
    return group_with_inversion([name(q) for q in elems], table, label="Q8")


def product_monoid(M: FinMonoid, N: FinMonoid) -> FinMonoid:
    pairs = list(itertools.product(range(M.size), range(N.size)))
    index = {p: k for k, p in enumerate(pairs)}
    table = [[index[(M.mul(a, c), N.mul(b, d))] for (c, d) in pairs] for (a, b) in pairs]
    names = [f"({M.names[a]},{N.names[b]})" for a, b in pairs]
    iota = [index[(M.iota[a], N.iota[b])] for a, b in pairs]
    return FinMonoid(tuple(names), np.array(table, dtype=np.int64), tuple(iota), index[(M.identity, N.identity)], f"{M.label}x{N.label}")


def zero_monoid() -> FinMonoid:
    """``{1, 0}`` under multiplication: a monoid that is not a group."""
    return monoid_from_table(["1", "0"], [[0, 1], [1, 1]], label="{1,0}")


_GROUP_RE = re.compile(r"^c(\d+)$")


def builtin_monoid(name: str) -> FinMonoid:
    """Named groups (with inversion): ``c<n>``, products like ``c4xc2`` or
    ``c2xc2xc2``, ``c2^3``, ``s3``, ``d4``, ``q8``; also ``trivial`` and ``zero``."""
    key = name.strip().lower()
    if key in ("trivial", "1", "c1"):
        return trivial_monoid()
    if key == "zero":
        return zero_monoid()
    if key == "s3":
        return symmetric_group(3)
    if key == "d4":
        return dihedral_group(4)
    if key == "q8":
        return quaternion_group()
    m = re.match(r"^(c\d+)\^(\d+)$", key)
    if m:
        key = "x".join([m.group(1)] * int(m.group(2)))
    parts = key.split("x")
    groups = []
    for part in parts:
        mm = _GROUP_RE.match(part)
        if not mm or int(mm.group(1)) < 1:
            raise ValueError(f"unknown group {name!r}")
        groups.append(cyclic_group(int(mm.group(1))))
    G = groups[0]
    for H in groups[1:]:
        G = product_monoid(G, H)
    return G.with_involution(G.iota) if len(groups) == 1 else _relabel(G, name)


def _relabel(M: FinMonoid, label: str) -> FinMonoid:
    return FinMonoid(M.names, M.table, M.iota, M.identity, label)


# -- monoid rings ---------------------------------------------------------------------


def monoid_ring(R: PresRing, M: FinMonoid) -> PresRing:
    """``R[M]`` with the anti-involution ``r*m -> w(r)*iota(m)``.

    Presentation generators are ``e_i * m`` for canonical generators ``e_i``
    of ``R``, ordered with the monoid index outermost."""
    r = R.rank
    n = M.size * r
    rels = []
    for m in range(M.size):
        for i, d in enumerate(R.carrier.torsion):
            row = [0] * n
            row[m * r + i] = d
            rels.append(row)
    G = canonicalize(n, rels)
    gens = R.carrier.gens()
    mul = [[None] * n for _ in range(n)]
    for m1, i in itertools.product(range(M.size), range(r)):
        for m2, j in itertools.product(range(M.size), range(r)):
            v = [0] * n
            p = M.mul(m1, m2)
            for k, c in enumerate(R.mul(gens[i], gens[j])):
                v[p * r + k] = c
            mul[m1 * r + i][m2 * r + j] = v
    unit = [0] * n
    for k, c in enumerate(R.unit):
        unit[M.identity * r + k] = c
    w = None
    if R.w is not None:
        w = zeros(n, n)
        for m in range(M.size):
            for i in range(r):
                for k, c in enumerate(R.w(gens[i])):
                    w[M.iota[m] * r + k, m * r + i] = c
    names = None
    if R.names is not None:
        if r == 1 and R.names == ["1"]:
            names = list(M.names)
        else:
            names = [f"{a}*{m}" for m in M.names for a in R.names]
    ring = PresRing.from_presentation(G, mul, unit, w)
    if _is_identity(G):
        ring.names = names
    return ring


# -- JSON ------------------------------------------------------------------------------


def ring_to_json(R: PresRing) -> dict:
    out = {
        "group": R.carrier.invariants(),
        "mul": [[list(v) for v in row] for row in R.table],
        "unit": list(R.unit),
    }
    if R.w is not None:
        out["involution"] = R.w.matrix_list()
    if R.names is not None:
        out["names"] = list(R.names)
    return out


def ring_from_json(obj: dict) -> PresRing:
    G = group_from_json(obj["group"])
    return PresRing.from_presentation(G, obj["mul"], obj["unit"], obj.get("involution"), obj.get("names"))


def monoid_to_json(M: FinMonoid) -> dict:
    return {
        "elements": list(M.names),
        "table": [[int(x) for x in row] for row in M.table],
        "anti_involution": list(M.iota),
        "identity": M.identity,
    }


def monoid_from_json(obj: dict) -> FinMonoid:
    return monoid_from_table(
        obj["elements"], obj["table"], obj.get("anti_involution"), obj.get("identity"), obj.get("label", "M")
    )
