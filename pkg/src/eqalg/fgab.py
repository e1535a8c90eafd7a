"""Finitely generated abelian groups and their homomorphisms.

A group is stored in invariant-factor form ``Z/d1 + ... + Z/dk + Z^r`` with
``d1 | d2 | ... | dk`` and every ``di >= 2``. Torsion coordinates come first,
free coordinates last. Each group also remembers the presentation it was
built from: ``to_canon`` turns a coefficient vector over the presentation
generators into canonical coordinates and ``from_canon`` goes back.

Homomorphisms are integer matrices in canonical coordinates, acting on column
vectors: ``h(x) = matrix @ x``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Sequence

import numpy as np

from .intlinalg import (
    identity,
    imat,
    ivec,
    right_kernel,
    row_basis,
    smith,
    solve,
    zeros,
)

Vec = tuple[int, ...]


class WellDefinednessError(ValueError):
    """A matrix does not send relations of the source to relations of the target."""


class FgAbGroup:
    __slots__ = ("torsion", "free_rank", "ngens", "to_canon", "from_canon", "names")

    def __init__(self, torsion, free_rank, to_canon=None, from_canon=None, names=None):
        self.torsion = tuple(int(d) for d in torsion)
        self.free_rank = int(free_rank)
        if any(d < 2 for d in self.torsion):
            raise ValueError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("invariant factors must divide each other")
        m = self.rank
        self.to_canon = identity(m) if to_canon is None else to_canon
        self.from_canon = identity(m) if from_canon is None else from_canon
        self.ngens = self.to_canon.shape[1]
        self.names = names

    # -- constructors ------------------------------------------------------

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls((), rank)

    @classmethod
    def cyclic(cls, n: int) -> "FgAbGroup":
        """``Z/n``; ``n = 0`` gives ``Z`` and ``n = 1`` the trivial group."""
        return canonicalize(1, [[n]] if n else [])

    @classmethod
    def from_invariants(cls, free_rank: int, torsion: Sequence[int]) -> "FgAbGroup":
        n = len(torsion) + free_rank
        return canonicalize(n, [[d if j == i else 0 for j in range(n)] for i, d in enumerate(torsion)])

    # -- basic data --------------------------------------------------------

    @property
    def rank(self) -> int:
        """Number of canonical generators."""
        return len(self.torsion) + self.free_rank

    @property
    def moduli(self) -> Vec:
        return self.torsion + (0,) * self.free_rank

    @property
    def order(self) -> int | None:
        return None if self.free_rank else prod(self.torsion)

    def is_trivial(self) -> bool:
        return self.rank == 0

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def same_type(self, other: "FgAbGroup") -> bool:
        return self.torsion == other.torsion and self.free_rank == other.free_rank

    def invariants(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __repr__(self) -> str:
        return f"FgAbGroup({self})"

    def __str__(self) -> str:
        parts = []
        for d, run in itertools.groupby(self.torsion):
            k = len(list(run))
            parts.append(f"Z/{d}" if k == 1 else f"(Z/{d})^{k}")
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    # -- elements ----------------------------------------------------------

    def reduce(self, v) -> Vec:
        out = []
        for x, d in zip(v, self.moduli):
            x = int(x)
            out.append(x % d if d else x)
        return tuple(out)

    def canon(self, v) -> Vec:
        """Canonical coordinates of a vector over the presentation generators."""
        if self.rank == 0:
            return ()
        return self.reduce(self.to_canon.dot(ivec(v)))

    def lift(self, v) -> np.ndarray:
        """Some vector over the presentation generators representing ``v``."""
        if self.ngens == 0:
            return ivec([])
        if self.rank == 0:
            return ivec([0] * self.ngens)
        return self.from_canon.dot(ivec(v))

    def zero(self) -> Vec:
        return (0,) * self.rank

    def gen(self, i: int) -> Vec:
        return tuple(int(i == j) for j in range(self.rank))

    def gens(self) -> list[Vec]:
        return [self.gen(i) for i in range(self.rank)]

    def add(self, x, y) -> Vec:
        return self.reduce(a + b for a, b in zip(x, y))

    def sub(self, x, y) -> Vec:
        return self.reduce(a - b for a, b in zip(x, y))

    def neg(self, x) -> Vec:
        return self.reduce(-a for a in x)

    def scale(self, k: int, x) -> Vec:
        return self.reduce(k * a for a in x)

    def combo(self, terms: Iterable[tuple[int, Sequence[int]]]) -> Vec:
        acc = [0] * self.rank
        for k, x in terms:
            for i, a in enumerate(x):
                acc[i] += k * a
        return self.reduce(acc)

    def is_zero(self, x) -> bool:
        return all(a == 0 for a in self.reduce(x))

    def element(self, coeffs) -> "Element":
        return Element(self, self.reduce(coeffs))

    def elements(self):
        """Iterate over all elements of a finite group."""
        if not self.is_finite():
            raise ValueError(f"cannot enumerate the infinite group {self}")
        return itertools.product(*(range(d) for d in self.torsion))

    def element_order(self, x) -> int:
        """Order of ``x``; ``0`` for elements of infinite order."""
        x = self.reduce(x)
        if any(x[len(self.torsion):]):
            return 0
        n = 1
        for a, d in zip(x, self.torsion):
            n = n * (d // gcd(a, d)) // gcd(n, d // gcd(a, d))
        return n

    def identity_hom(self) -> "GroupHom":
        return GroupHom(self, self, identity(self.rank))

    def zero_hom(self, target: "FgAbGroup") -> "GroupHom":
        return GroupHom(self, target, zeros(target.rank, self.rank))


@dataclass(frozen=True)
class Element:
    group: FgAbGroup
    coefficients: Vec

    def __add__(self, other: "Element") -> "Element":
        return Element(self.group, self.group.add(self.coefficients, other.coefficients))

    def __sub__(self, other: "Element") -> "Element":
        return Element(self.group, self.group.sub(self.coefficients, other.coefficients))

    def __neg__(self) -> "Element":
        return Element(self.group, self.group.neg(self.coefficients))

    def __rmul__(self, k: int) -> "Element":
        return Element(self.group, self.group.scale(k, self.coefficients))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.group.same_type(other.group)
            and self.coefficients == other.coefficients
        )

    def __hash__(self) -> int:
        return hash((self.group.moduli, self.coefficients))


def _inverse_unimodular(V: np.ndarray) -> np.ndarray:
    n = V.shape[0]
    if n == 0:
        return V.copy()
    s = smith(V)
    if any(d != 1 for d in s.diag):
        raise ValueError("matrix is not unimodular")
    # U V W = I  =>  V^-1 = W U
    return s.V.dot(s.U)


def canonicalize(generator_count: int, relations, names=None) -> FgAbGroup:
    """The group generated by ``generator_count`` symbols subject to the rows
    of ``relations``, in invariant-factor form."""
    n = int(generator_count)
    R = imat(relations, n) if not isinstance(relations, np.ndarray) else relations
    if R.shape[0] and R.shape[1] != n:
        raise ValueError(f"relations need {n} columns, got {R.shape[1]}")
    R = row_basis(R) if R.shape[0] else zeros(0, n)
    if R.shape[0] == 0:
        return FgAbGroup((), n, identity(n), identity(n), names)
    s = smith(R)
    r = s.rank
    keep = [i for i in range(r) if s.diag[i] != 1] + list(range(r, n))
    torsion = [s.diag[i] for i in range(r) if s.diag[i] != 1]
    Vt = s.V.T
    Vinv_t = _inverse_unimodular(s.V).T
    to_canon = Vt[keep, :] if keep else zeros(0, n)
    from_canon = Vinv_t[:, keep] if keep else zeros(n, 0)
    group = FgAbGroup(torsion, n - r, to_canon, from_canon, names)
    # keep stored matrix entries small: reduce torsion rows of to_canon
    for i, d in enumerate(group.torsion):
        group.to_canon[i, :] = [int(x) % d for x in group.to_canon[i, :]]
    return group


class GroupHom:
    """``source -> target`` given by a matrix in canonical coordinates."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FgAbGroup, target: FgAbGroup, matrix, check: bool = True):
        M = imat(matrix, source.rank) if not isinstance(matrix, np.ndarray) else matrix.copy()
        if M.shape != (target.rank, source.rank):
            if M.size == 0:
                M = zeros(target.rank, source.rank)
            else:
                raise ValueError(f"matrix shape {M.shape} does not fit {source} -> {target}")
        for i, d in enumerate(target.moduli):
            if d:
                M[i, :] = [int(x) % d for x in M[i, :]]
        self.source = source
        self.target = target
        self.matrix = M
        if check:
            bad = self.ill_defined_generators()
            if bad:
                raise WellDefinednessError(
                    f"map {source} -> {target} does not respect relations of generators {bad}"
                )

    # -- construction helpers -----------------------------------------------

    @classmethod
    def from_lifts(cls, source: FgAbGroup, target: FgAbGroup, M, check: bool = True) -> "GroupHom":
        """``M`` sends presentation coordinates of ``source`` to canonical
        coordinates of ``target``."""
        M = imat(M, source.ngens) if not isinstance(M, np.ndarray) else M
        if source.rank == 0:
            return cls(source, target, zeros(target.rank, 0), check)
        if M.shape[1] == 0:
            return cls(source, target, zeros(target.rank, source.rank), check)
        return cls(source, target, M.dot(source.from_canon), check)

    @classmethod
    def from_presentation(cls, source: FgAbGroup, target: FgAbGroup, M, check: bool = True) -> "GroupHom":
        """``M`` maps presentation generators of ``source`` to vectors over
        presentation generators of ``target``."""
        M = imat(M, source.ngens) if not isinstance(M, np.ndarray) else M
        if target.rank == 0 or M.shape[0] == 0:
            return cls(source, target, zeros(target.rank, source.rank), check)
        h = cls.from_lifts(source, target, target.to_canon.dot(M), check)
        if check:
            # the user matrix must agree with h on every presentation generator,
            # otherwise it does not respect the relations among them
            for a in range(source.ngens):
                e = [int(a == b) for b in range(source.ngens)]
                if h(source.canon(e)) != target.canon(M[:, a]):
                    raise WellDefinednessError(
                        f"image of presentation generator {a} does not respect the relations"
                    )
        return h

    @classmethod
    def from_images(cls, source: FgAbGroup, target: FgAbGroup, images, check: bool = True) -> "GroupHom":
        """Images of the canonical generators, as canonical target vectors."""
        images = list(images)
        M = zeros(target.rank, source.rank)
        for j, im in enumerate(images):
            M[:, j] = [int(x) for x in im]
        return cls(source, target, M, check)

    # -- evaluation ----------------------------------------------------------

    def __call__(self, x) -> Vec:
        if self.source.rank == 0:
            return self.target.zero()
        return self.target.reduce(self.matrix.dot(ivec(x)))

    def column(self, j: int) -> Vec:
        return self.target.reduce(self.matrix[:, j])

    def ill_defined_generators(self) -> list[int]:
        bad = []
        for j, d in enumerate(self.source.torsion):
            if not self.target.is_zero(d * int(x) for x in self.matrix[:, j]):
                bad.append(j)
        return bad

    def is_well_defined(self) -> bool:
        return not self.ill_defined_generators()

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        """Composition ``self o other``."""
        if not other.target.same_type(self.source):
            raise ValueError("composition of incompatible maps")
        if other.source.rank == 0 or self.target.rank == 0:
            M = zeros(self.target.rank, other.source.rank)
        elif self.source.rank == 0:
            M = zeros(self.target.rank, other.source.rank)
        else:
            M = self.matrix.dot(other.matrix)
        return GroupHom(other.source, self.target, M, check=False)

    def _binary(self, other: "GroupHom", sign: int) -> "GroupHom":
        if not (self.source.same_type(other.source) and self.target.same_type(other.target)):
            raise ValueError("maps have different source or target")
        return GroupHom(self.source, self.target, self.matrix + sign * other.matrix, check=False)

    def __add__(self, other: "GroupHom") -> "GroupHom":
        return self._binary(other, 1)

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        return self._binary(other, -1)

    def __neg__(self) -> "GroupHom":
        return GroupHom(self.source, self.target, -self.matrix, check=False)

    def scaled(self, k: int) -> "GroupHom":
        return GroupHom(self.source, self.target, k * self.matrix, check=False)

    def is_zero(self) -> bool:
        return all(self.target.is_zero(self.matrix[:, j]) for j in range(self.source.rank))

    def equals(self, other: "GroupHom") -> bool:
        return (self - other).is_zero()

    def first_difference(self, other: "GroupHom") -> int | None:
        d = self - other
        for j in range(self.source.rank):
            if not self.target.is_zero(d.matrix[:, j]):
                return j
        return None

    def matrix_list(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.matrix]

    # -- homological data ----------------------------------------------------

    def _system(self) -> np.ndarray:
        tors = [(j, d) for j, d in enumerate(self.target.moduli) if d]
        extra = zeros(self.target.rank, len(tors))
        for k, (j, d) in enumerate(tors):
            extra[j, k] = d
        return np.hstack([self.matrix, extra]) if self.matrix.size or extra.size else zeros(self.target.rank, self.source.rank)

    def preimage(self, b) -> Vec | None:
        """Some ``x`` with ``self(x) == b``, or ``None``."""
        if self.target.rank == 0:
            return self.source.zero()
        if self.source.rank == 0:
            return () if self.target.is_zero(b) else None
        sol = solve(self._system(), ivec(b))
        if sol is None:
            return None
        return self.source.reduce(sol[: self.source.rank])

    def kernel(self) -> tuple[FgAbGroup, "GroupHom"]:
        return kernel(self)

    def cokernel(self) -> tuple[FgAbGroup, "GroupHom"]:
        return cokernel(self)

    def is_injective(self) -> bool:
        return kernel(self)[0].is_trivial()

    def is_surjective(self) -> bool:
        return cokernel(self)[0].is_trivial()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def __repr__(self) -> str:
        return f"GroupHom({self.source} -> {self.target}, {self.matrix_list()})"


def kernel(h: GroupHom) -> tuple[FgAbGroup, GroupHom]:
    """Kernel of ``h`` with its inclusion into ``h.source``."""
    bad = h.ill_defined_generators()
    if bad:
        raise WellDefinednessError(f"kernel of an ill-defined map (generators {bad})")
    A = h.source
    if A.rank == 0:
        K = FgAbGroup.free(0)
        return K, GroupHom(K, A, zeros(0, 0))
    if h.target.rank == 0:
        return A, A.identity_hom()
    span = right_kernel(h._system())[: A.rank, :]
    basis = row_basis(span.T)  # s x A.rank, rows generate the kernel lattice
    s = basis.shape[0]
    rels = []
    for i, d in enumerate(A.torsion):
        target = [d if j == i else 0 for j in range(A.rank)]
        c = solve(basis.T, target)
        if c is None:  # pragma: no cover - h well-defined implies this exists
            raise WellDefinednessError("relation of the source outside the kernel lattice")
        rels.append(c)
    K = canonicalize(s, rels)
    incl = GroupHom.from_lifts(K, A, basis.T if s else zeros(A.rank, 0))
    return K, incl


def cokernel(h: GroupHom) -> tuple[FgAbGroup, GroupHom]:
    """Cokernel of ``h`` with the projection from ``h.target``."""
    bad = h.ill_defined_generators()
    if bad:
        raise WellDefinednessError(f"cokernel of an ill-defined map (generators {bad})")
    B = h.target
    rels = [[d if j == i else 0 for j in range(B.rank)] for i, d in enumerate(B.torsion)]
    rels += [[int(x) for x in h.matrix[:, j]] for j in range(h.source.rank)]
    Q = canonicalize(B.rank, rels)
    return Q, GroupHom(B, Q, Q.to_canon if Q.rank else zeros(0, B.rank))


def induced_hom(p_source: GroupHom, p_target: GroupHom, f: GroupHom) -> GroupHom:
    """The map ``Q1 -> Q2`` induced by ``f : A -> B`` on quotients
    ``p_source : A -> Q1`` and ``p_target : B -> Q2`` (both surjective)."""
    K, incl = kernel(p_source)
    for k in range(K.rank):
        if not p_target.target.is_zero(p_target(f(incl.column(k)))):
            raise WellDefinednessError("map does not descend to the quotients")
    images = []
    for g in p_source.target.gens():
        pre = p_source.preimage(g)
        if pre is None:
            raise ValueError("source projection is not surjective")
        images.append(p_target(f(pre)))
    return GroupHom.from_images(p_source.target, p_target.target, images)


def image(h: GroupHom) -> tuple[FgAbGroup, GroupHom]:
    return kernel(cokernel(h)[1])


def quotient(A: FgAbGroup, elements: Iterable[Sequence[int]]) -> tuple[FgAbGroup, GroupHom]:
    """``A`` modulo the subgroup generated by ``elements``."""
    elements = [tuple(int(x) for x in e) for e in elements]
    F = FgAbGroup.free(len(elements))
    M = zeros(A.rank, len(elements))
    for j, e in enumerate(elements):
        M[:, j] = e
    return cokernel(GroupHom(F, A, M, check=False))


def subgroup_contains(incl: GroupHom, x) -> bool:
    return incl.preimage(x) is not None


def direct_sum(*groups: FgAbGroup) -> tuple[FgAbGroup, list[GroupHom], list[GroupHom]]:
    """``groups[0] + groups[1] + ...`` with injections and projections."""
    n = sum(g.rank for g in groups)
    rels = []
    offset = 0
    for g in groups:
        for i, d in enumerate(g.torsion):
            row = [0] * n
            row[offset + i] = d
            rels.append(row)
        offset += g.rank
    S = canonicalize(n, rels)
    injections, projections = [], []
    offset = 0
    for g in groups:
        images = [S.canon([int(k == offset + i) for k in range(n)]) for i in range(g.rank)]
        injections.append(GroupHom.from_images(g, S, images))
        P = zeros(g.rank, n)
        for i in range(g.rank):
            P[i, offset + i] = 1
        projections.append(GroupHom(S, g, P.dot(S.from_canon) if S.rank else zeros(g.rank, 0)))
        offset += g.rank
    return S, injections, projections


class Tensor:
    """``A (x) B`` presented on the pairs of canonical generators, ordered
    lexicographically."""

    def __init__(self, A: FgAbGroup, B: FgAbGroup):
        self.left = A
        self.right = B
        n = A.rank * B.rank
        rels = []
        for i, a in enumerate(A.moduli):
            for j, b in enumerate(B.moduli):
                g = gcd(a, b)
                if g:
                    row = [0] * n
                    row[i * B.rank + j] = g
                    rels.append(row)
        self.group = canonicalize(n, rels)

    def pair_index(self, i: int, j: int) -> int:
        return i * self.right.rank + j

    def table(self) -> list[list[Vec]]:
        """Canonical coordinates of ``e_i (x) f_j`` for every generator pair."""
        T = self.group
        return [
            [T.reduce(T.to_canon[:, self.pair_index(i, j)]) if T.rank else () for j in range(self.right.rank)]
            for i in range(self.left.rank)
        ]

    def pair_vector(self, x, y) -> np.ndarray:
        """``x (x) y`` over the pair generators (before canonicalization)."""
        return ivec(int(a) * int(b) for a in x for b in y)

    def elem(self, x, y) -> Vec:
        if self.group.rank == 0:
            return ()
        return self.group.canon(self.pair_vector(x, y))

    def pair_coordinates(self, t) -> list[tuple[int, int, int]]:
        """A representative of ``t`` as ``[(coef, i, j), ...]``."""
        v = self.group.lift(t)
        out = []
        for idx, c in enumerate(v):
            if c:
                out.append((int(c), idx // self.right.rank, idx % self.right.rank))
        return out

    def map(self, f: GroupHom, g: GroupHom, other: "Tensor") -> GroupHom:
        """``f (x) g`` from this tensor product to ``other``."""
        cols = zeros(other.group.rank, self.left.rank * self.right.rank)
        for i in range(self.left.rank):
            fi = f.column(i)
            for j in range(self.right.rank):
                cols[:, self.pair_index(i, j)] = other.elem(fi, g.column(j))
        return GroupHom.from_lifts(self.group, other.group, cols)


def tensor(A: FgAbGroup, B: FgAbGroup) -> Tensor:
    return Tensor(A, B)


def tor1(A: FgAbGroup, B: FgAbGroup) -> FgAbGroup:
    """``Tor_1(A, B)`` from the resolution ``0 -> Z^k -> Z^rank(A) -> A``
    given by the invariant factors of ``A``, tensored with ``B``."""
    k = len(A.torsion)
    if k == 0 or B.rank == 0:
        return FgAbGroup.free(0)
    src, _, _ = direct_sum(*([B] * k))
    tgt, _, _ = direct_sum(*([B] * A.rank))
    M = zeros(tgt.ngens, src.ngens)
    for i, d in enumerate(A.torsion):
        for j in range(B.rank):
            M[i * B.rank + j, i * B.rank + j] = d
    return kernel(GroupHom.from_presentation(src, tgt, M))[0]


@dataclass
class InvariantsCoinvariants:
    invariants: FgAbGroup
    inclusion: GroupHom
    coinvariants: FgAbGroup
    projection: GroupHom
    norm: GroupHom


def invariants_and_coinvariants(A: FgAbGroup, t: GroupHom) -> InvariantsCoinvariants:
    """Fixed points, orbits and the additive norm ``[a] -> a + t(a)`` of an
    involution ``t`` on ``A``."""
    if not (t @ t).equals(A.identity_hom()):
        raise ValueError("t is not an involution")
    one = A.identity_hom()
    inv, incl = kernel(t - one)
    coinv, proj = cokernel(t - one)
    images = []
    for k in range(coinv.rank):
        a = A.reduce(coinv.lift(coinv.gen(k)))
        n = A.add(a, t(a))
        pre = incl.preimage(n)
        if pre is None:  # pragma: no cover - a + t(a) is always fixed
            raise ArithmeticError("norm left the invariants")
        images.append(pre)
    norm = GroupHom.from_images(coinv, inv, images)
    return InvariantsCoinvariants(inv, incl, coinv, proj, norm)


# -- JSON ---------------------------------------------------------------------


def group_to_json(G: FgAbGroup) -> dict:
    return G.invariants()


def group_from_json(obj: dict) -> FgAbGroup:
    if "generators" in obj:
        return canonicalize(int(obj["generators"]), obj.get("relations", []))
    if "free_rank" in obj or "torsion" in obj:
        return FgAbGroup.from_invariants(int(obj.get("free_rank", 0)), [int(d) for d in obj.get("torsion", [])])
    raise ValueError("group JSON needs 'generators' or 'free_rank'/'torsion'")


def hom_to_json(h: GroupHom) -> dict:
    return {"matrix": h.matrix_list()}


def hom_from_json(obj, source: FgAbGroup, target: FgAbGroup) -> GroupHom:
    M = obj["matrix"] if isinstance(obj, dict) else obj
    return GroupHom(source, target, imat(M, source.rank) if M else zeros(target.rank, source.rank))
