"""The 2-truncated non-commutative Witt vectors ``W(S) = S x (S (x) S)_{Z/2}``.

Elements are pairs ``(a, c)`` with ``a`` in ``S`` and ``c`` in the flip
coinvariants ``C`` of ``S (x) S``, added with the cocycle ``-[a (x) a']``.
As an abelian group ``W(S)`` is presented on the norms ``N(g_i) = (g_i, 0)``
of the canonical generators of ``S`` and the Verschiebung images ``V(c_k)``
of the canonical generators of ``C``, subject to the relations of ``C`` and,
for each generator ``g`` of order ``s``,
``s N(g) + C(s, 2) V([g (x) g]) = 0``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import comb

from ..fgab import FgAbGroup, GroupHom, canonicalize
from ..ringalg import FlipSquare, PresRing, flip_square
from .core import GreenZ2, MackeyZ2

Vec = tuple[int, ...]
Pair = tuple[Vec, Vec]


def _binom2(k: int) -> int:
    return k * (k - 1) // 2


class WittRing:
    """Element-level arithmetic on pairs ``(a, c)``."""

    def __init__(self, S: PresRing):
        self.base = S
        self.flip: FlipSquare = flip_square(S)
        orb = self.flip.orbits
        self.C = orb.coinvariants
        self.proj = orb.projection  # S(x)S -> C
        self.T = self.flip.ring.carrier  # S(x)S

    # -- coinvariant helpers -------------------------------------------------

    def cls(self, u) -> Vec:
        """Class of ``u`` in the coinvariants."""
        return self.proj(u)

    def lift(self, c) -> Vec:
        return self.T.reduce(self.proj.preimage(c))

    def tensor(self, a, b) -> Vec:
        return self.flip.elem(a, b)

    def tau(self, u) -> Vec:
        return self.flip.tau(u)

    def coinv_norm(self, c) -> Vec:
        """``u + tau(u)`` for a lift ``u`` of ``c``."""
        u = self.lift(c)
        return self.T.add(u, self.tau(u))

    # -- arithmetic ------------------------------------------------------------

    def element(self, a, c) -> Pair:
        return self.base.carrier.reduce(a), self.C.reduce(c)

    def zero(self) -> Pair:
        return self.base.zero(), self.C.zero()

    def one(self) -> Pair:
        return self.base.unit, self.C.zero()

    def add(self, x: Pair, y: Pair) -> Pair:
        (a, c), (b, d) = x, y
        S = self.base
        cross = self.cls(self.tensor(a, b))
        return S.add(a, b), self.C.sub(self.C.add(c, d), cross)

    def neg(self, x: Pair) -> Pair:
        a, c = x
        return self.base.neg(a), self.C.sub(self.C.neg(c), self.cls(self.tensor(a, a)))

    def sub(self, x: Pair, y: Pair) -> Pair:
        return self.add(x, self.neg(y))

    def scale(self, k: int, x: Pair) -> Pair:
        acc = self.zero()
        step = x if k >= 0 else self.neg(x)
        for _ in range(abs(k)):
            acc = self.add(acc, step)
        return acc

    def mul(self, x: Pair, y: Pair) -> Pair:
        (a, c), (b, d) = x, y
        S, Tr = self.base, self.flip.ring
        aa = self.tensor(a, a)
        bb = self.tensor(b, b)
        u, v = self.lift(c), self.lift(d)
        terms = [Tr.mul(aa, v), Tr.mul(u, bb), Tr.mul(u, v), Tr.mul(u, self.tau(v))]
        total = self.T.zero()
        for t in terms:
            total = self.T.add(total, t)
        return S.mul(a, b), self.cls(total)

    def w0(self, x: Pair) -> Vec:
        return x[0]

    def w1(self, x: Pair) -> Vec:
        a, c = x
        return self.T.add(self.tensor(a, a), self.coinv_norm(c))

    def V(self, u) -> Pair:
        """Verschiebung of an element of ``S (x) S``."""
        return self.base.zero(), self.cls(u)

    def V_class(self, c) -> Pair:
        return self.base.zero(), self.C.reduce(c)

    def N(self, a) -> Pair:
        return self.base.carrier.reduce(a), self.C.zero()

    def elements(self):
        """All pairs, for finite ``S``."""
        for a in self.base.carrier.elements():
            for c in self.C.elements():
                yield tuple(a), tuple(c)

    # -- the additive group ---------------------------------------------------------

    @cached_property
    def group(self) -> FgAbGroup:
        S = self.base.carrier
        r, m = S.rank, self.C.rank
        rels = []
        for k, d in enumerate(self.C.torsion):
            row = [0] * (r + m)
            row[r + k] = d
            rels.append(row)
        for i, s in enumerate(S.torsion):
            g = S.gen(i)
            row = [0] * (r + m)
            row[i] = s
            for k, v in enumerate(self.cls(self.tensor(g, g))):
                row[r + k] += comb(s, 2) * v
            rels.append(row)
        return canonicalize(r + m, rels)

    def _q(self, a) -> Vec:
        """``sum_i C(a_i, 2)[g_i g_i] + sum_{i<j} a_i a_j [g_i g_j]`` so that
        ``sum_i a_i N(g_i) = (a, -q(a))``."""
        S = self.base.carrier
        acc = self.C.zero()
        gens = S.gens()
        for i, ai in enumerate(a):
            if ai:
                acc = self.C.add(acc, self.C.scale(_binom2(ai), self.cls(self.tensor(gens[i], gens[i]))))
        for i, j in itertools.combinations(range(len(a)), 2):
            if a[i] and a[j]:
                acc = self.C.add(acc, self.C.scale(a[i] * a[j], self.cls(self.tensor(gens[i], gens[j]))))
        return acc

    def to_group(self, x: Pair) -> Vec:
        a, c = x
        a = self.base.carrier.reduce(a)
        vpart = self.C.add(c, self._q(a))
        return self.group.canon(list(a) + list(vpart))

    def from_group(self, v) -> Pair:
        r = self.base.rank
        raw = [int(t) for t in self.group.lift(v)]
        x, y = raw[:r], raw[r:]
        q = self._q(x)
        return self.base.carrier.reduce(x), self.C.sub(self.C.reduce(y), q)

    @cached_property
    def ring(self) -> PresRing:
        G = self.group
        elems = [self.from_group(g) for g in G.gens()]
        table = [[self.to_group(self.mul(x, y)) for y in elems] for x in elems]
        return PresRing(G, table, self.to_group(self.one()))


def witt_arith(S: PresRing) -> WittRing:
    return WittRing(S)


def invariant_factors_by_counting(order_of_torsion) -> list[int]:
    """Invariant factors of a finite abelian group from the sizes of its
    ``p^k``-torsion subgroups.

    ``order_of_torsion(n)`` must return ``#{x : n x = 0}``; the group order is
    ``order_of_torsion(0)``."""
    n = order_of_torsion(0)
    primes = _prime_factors(n)
    # number of cyclic p-primary factors of order >= p^k
    by_prime = {}
    for p in primes:
        sizes = [1]
        k = 1
        while True:
            sizes.append(order_of_torsion(p**k))
            if sizes[-1] == sizes[-2]:
                break
            k += 1
        exps = []
        for j in range(1, len(sizes) - 1):
            ratio = sizes[j] // sizes[j - 1]
            count = _log(ratio, p)
            exps.append(count)
        # exps[j-1] = number of factors with exponent >= j
        parts = []
        for j, c in enumerate(exps, start=1):
            nxt = exps[j] if j < len(exps) else 0
            parts += [p**j] * (c - nxt)
        by_prime[p] = sorted(parts, reverse=True)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for i in range(length):
        f = 1
        for v in by_prime.values():
            if i < len(v):
                f *= v[i]
        factors.append(f)
    return sorted(factors)


def _log(x: int, p: int) -> int:
    k = 0
    while x > 1:
        x //= p
        k += 1
    return k


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def witt_decomposition(W: WittRing) -> list[int]:
    """Invariant factors of the additive group of ``W(S)`` for finite ``S``,
    by brute-force enumeration of pairs with the twisted addition."""
    if not W.base.carrier.is_finite():
        raise ValueError("brute-force decomposition needs a finite base ring")
    elems = list(W.elements())
    zero = W.zero()
    orders = Counter()
    for x in elems:
        k, y = 1, x
        while y != zero:
            y = W.add(y, x)
            k += 1
        orders[k] += 1

    def torsion(n: int) -> int:
        if n == 0:
            return len(elems)
        return sum(c for k, c in orders.items() if n % k == 0)

    return invariant_factors_by_counting(torsion)


@dataclass
class WittGreen:
    green: GreenZ2
    witt: WittRing
    decomposition: list[int] | None = None


def witt_green(S: PresRing, finite_decomposition: bool = False) -> WittGreen:
    """Green functor with ``level_e = S (x) S`` (flip involution) and
    ``level_fix = W(S)``, restriction the ghost map ``w1`` and transfer the
    Verschiebung."""
    W = WittRing(S)
    T = W.T
    G = W.group
    res = GroupHom.from_images(G, T, [W.w1(W.from_group(g)) for g in G.gens()])
    tran = GroupHom.from_images(T, G, [W.to_group(W.V(u)) for u in T.gens()])
    M = MackeyZ2(T, G, res, tran, W.flip.tau)
    decomposition = None
    if finite_decomposition:
        decomposition = witt_decomposition(W)
    return WittGreen(GreenZ2(M, W.flip.ring, W.ring), W, decomposition)


def two_inverted_map(W: WittRing):
    """``x -> (w0(x), w1(x))`` into ``S x (S (x) S)^{Z/2}``, returned as a
    function; it is a ring isomorphism when 2 is invertible in ``S``."""
    return lambda x: (W.w0(x), W.w1(x))


def kernel_of_w1(S: PresRing):
    """Kernel of the ghost map ``w1`` on the fixed level, with inclusion."""
    from ..fgab import kernel

    return kernel(witt_green(S).green.mackey.res)
