"""Graded Tor over the integers and bigraded monomial counting.

Graded groups live on a window of degrees ``0..N``. Tor is computed
degreewise from two-term free resolutions; several resolutions can be fed in
and compared. Monomial rings count basis monomials of a fixed (bi)degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .fgab import FgAbGroup, GroupHom, canonicalize, cokernel, direct_sum, kernel
from .intlinalg import imat, row_basis, zeros


@dataclass
class Presentation:
    generators: int
    relations: list[list[int]]


@dataclass
class GradedAbGroup:
    window: int
    degrees: list[FgAbGroup]
    presentations: list[Presentation] | None = None

    def __post_init__(self):
        if len(self.degrees) != self.window + 1:
            raise ValueError("every degree in the window must be populated")

    def __getitem__(self, n: int) -> FgAbGroup:
        if n < 0 or n > self.window:
            return FgAbGroup.free(0)
        return self.degrees[n]

    @classmethod
    def from_presentations(cls, window: int, pres: dict[int, tuple[int, list]]) -> "GradedAbGroup":
        ps = []
        for n in range(window + 1):
            g, rels = pres.get(n, (0, []))
            ps.append(Presentation(g, [list(r) for r in rels]))
        return cls(window, [canonicalize(p.generators, p.relations) for p in ps], ps)

    def invariants(self) -> list[dict]:
        return [G.invariants() for G in self.degrees]

    def f2_dims(self) -> list[int]:
        return [f2_dim(G) for G in self.degrees]


def f2_dim(G: FgAbGroup) -> int:
    if G.free_rank or any(d != 2 for d in G.torsion):
        raise ValueError(f"{G} is not an F2-vector space")
    return len(G.torsion)


def polynomial_mod(m: int, degree: int, window: int) -> GradedAbGroup:
    """``Z/m[b]`` with ``|b| = degree`` (``m = 0`` gives ``Z[b]``)."""
    pres = {}
    for n in range(0, window + 1, degree):
        pres[n] = (1, [[m]] if m else [])
    return GradedAbGroup.from_presentations(window, pres)


def concentrated(G_pres: tuple[int, list], window: int, degree: int = 0) -> GradedAbGroup:
    return GradedAbGroup.from_presentations(window, {degree: G_pres})


# -- resolutions -----------------------------------------------------------------------


@dataclass
class GradedResolution:
    """Degreewise ``0 -> Z^r1 --d--> Z^r0 -> A_n -> 0``; ``d[n]`` is ``r0 x r1``."""

    name: str
    window: int
    d: list[np.ndarray]

    def check_resolves(self, A: GradedAbGroup) -> list[int]:
        """Degrees where ``d`` is not injective or its cokernel is not ``A_n``."""
        bad = []
        for n in range(self.window + 1):
            dn = self.d[n]
            r0, r1 = dn.shape
            F1, F0 = FgAbGroup.free(r1), FgAbGroup.free(r0)
            h = GroupHom(F1, F0, dn)
            if not h.is_injective() or not cokernel(h)[0].same_type(A[n]):
                bad.append(n)
        return bad


def canonical_resolution(A: GradedAbGroup) -> GradedResolution:
    """From the invariant factors: ``d = diag(d_1, ..., d_k)`` into the
    canonical generators."""
    ds = []
    for G in A.degrees:
        k = len(G.torsion)
        d = zeros(G.rank, k)
        for i, t in enumerate(G.torsion):
            d[i, i] = t
        ds.append(d)
    return GradedResolution("invariant factors", A.window, ds)


def presentation_resolution(A: GradedAbGroup, shear: bool = True) -> GradedResolution:
    """From the user presentation, after an optional unimodular shear of the
    generators so the relation matrix is not diagonal."""
    if A.presentations is None:
        raise ValueError("graded group has no recorded presentation")
    ds = []
    for p in A.presentations:
        g = p.generators
        R = imat(p.relations, g) if p.relations else zeros(0, g)
        if shear and g > 1:
            S = zeros(g, g)
            for i in range(g):
                for j in range(i, g):
                    S[i, j] = 1
            R = R.dot(S) if R.shape[0] else R
        basis = row_basis(R) if R.shape[0] else zeros(0, g)
        ds.append(basis.T.copy() if basis.shape[0] else zeros(g, 0))
    return GradedResolution("presentation" + (" (sheared)" if shear else ""), A.window, ds)


def z_bar_epsilon_resolution(window: int) -> GradedResolution:
    """``(Z[b', e]/(e^2), d(e) = 2)`` resolving ``F2[b]`` with ``|b| = 2``:
    in degree ``2m`` the map ``Z b'^m e -> Z b'^m`` is multiplication by 2."""
    ds = []
    for n in range(window + 1):
        if n % 2 == 0:
            ds.append(imat([[2]]))
        else:
            ds.append(zeros(0, 0))
    return GradedResolution("Z[b', e]/e^2, d(e) = 2", window, ds)


def tor_from_resolution(res: GradedResolution, B: GradedAbGroup, N: int) -> tuple[GradedAbGroup, GradedAbGroup]:
    """Tor_0 and Tor_1 of ``A`` (resolved by ``res``) with ``B`` in degrees ``<= N``."""
    tor0, tor1 = [], []
    for n in range(N + 1):
        parts0, parts1 = [], []
        for i in range(n + 1):
            j = n - i
            Bj = B[j]
            d = res.d[i]
            r0, r1 = d.shape
            if Bj.rank == 0 or r0 == 0:
                continue
            src, _, _ = direct_sum(*([Bj] * r1)) if r1 else (FgAbGroup.free(0), [], [])
            tgt, _, _ = direct_sum(*([Bj] * r0))
            M = zeros(tgt.ngens, src.ngens)
            for a in range(r0):
                for b in range(r1):
                    c = int(d[a, b])
                    if c:
                        for k in range(Bj.rank):
                            M[a * Bj.rank + k, b * Bj.rank + k] = c
            h = GroupHom.from_presentation(src, tgt, M)
            parts0.append(cokernel(h)[0])
            parts1.append(kernel(h)[0])
        tor0.append(direct_sum(*parts0)[0] if parts0 else FgAbGroup.free(0))
        tor1.append(direct_sum(*parts1)[0] if parts1 else FgAbGroup.free(0))
    return GradedAbGroup(N, tor0), GradedAbGroup(N, tor1)


@dataclass
class TorResult:
    tor0: GradedAbGroup
    tor1: GradedAbGroup
    resolutions_compared: list[str] = field(default_factory=list)
    agree: bool = True


def _same(X: GradedAbGroup, Y: GradedAbGroup) -> bool:
    return all(a.same_type(b) for a, b in zip(X.degrees, Y.degrees))


def graded_tor(A: GradedAbGroup, B: GradedAbGroup, N: int, extra: list[GradedResolution] | None = None) -> TorResult:
    """Degreewise ``Tor^Z_*(A, B)`` up to degree ``N``, from the invariant
    factor resolution, cross-checked against the presentation resolution and
    any ``extra`` resolutions of ``A``."""
    if N > A.window or N > B.window:
        raise ValueError(f"degree bound {N} exceeds the window of an input")
    base = canonical_resolution(A)
    t0, t1 = tor_from_resolution(base, B, N)
    out = TorResult(t0, t1, [base.name])
    others = list(extra or [])
    if A.presentations is not None:
        others.insert(0, presentation_resolution(A))
    for r in others:
        if r.check_resolves(A):
            raise ValueError(f"resolution {r.name!r} does not resolve the input")
        s0, s1 = tor_from_resolution(r, B, N)
        out.resolutions_compared.append(r.name)
        out.agree = out.agree and _same(s0, t0) and _same(s1, t1)
    return out


# -- monomial rings -----------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    name: str
    degree: tuple[int, int]
    invertible: bool = False
    square_zero: bool = False


class UnboundedSliceError(ValueError):
    """The monomials of a bidegree form an infinite set."""


@dataclass
class MonomialRing:
    characteristic: int
    generators: list[Generator]

    def _bounds(self, n: int, k: int):
        """Exponent bounds of the fibre over ``(n, k)`` from a linear
        relaxation; ``None`` when the fibre is empty."""
        from scipy.optimize import linprog

        g = len(self.generators)
        A = np.array([[gen.degree[0] for gen in self.generators], [gen.degree[1] for gen in self.generators]], dtype=float)
        b = np.array([n, k], dtype=float)
        box = []
        for gen in self.generators:
            if gen.square_zero:
                box.append((0, 1))
            elif gen.invertible:
                box.append((None, None))
            else:
                box.append((0, None))
        lo, hi = [], []
        for i in range(g):
            c = np.zeros(g)
            bounds = []
            for sign in (1, -1):
                c[i] = sign
                r = linprog(c, A_eq=A, b_eq=b, bounds=box, method="highs")
                if r.status == 2:
                    return None
                if r.status == 3:
                    raise UnboundedSliceError(
                        f"infinitely many monomials in bidegree ({n}, {k}): exponent of {self.generators[i].name} is unbounded"
                    )
                if r.status != 0:  # pragma: no cover - solver trouble
                    raise RuntimeError(r.message)
                bounds.append(sign * r.fun)
            lo.append(math.ceil(bounds[0] - 1e-9))
            hi.append(math.floor(bounds[1] + 1e-9))
        return lo, hi

    def count(self, n: int, k: int = 0) -> int:
        """Number of monomials of bidegree ``(n, k)``."""
        if not self.generators:
            return int(n == 0 and k == 0)
        bounds = self._bounds(n, k)
        if bounds is None:
            return 0
        lo, hi = bounds
        if any(a > b for a, b in zip(lo, hi)):
            return 0
        degs = np.array([gen.degree for gen in self.generators], dtype=np.int64)
        return int(
            _kernels.count_bidegree_solutions(
                degs, np.array(lo, dtype=np.int64), np.array(hi, dtype=np.int64), np.int64(n), np.int64(k)
            )
        )

    def monomials(self, n: int, k: int = 0) -> list[dict[str, int]]:
        """Explicit exponent vectors (pure Python enumeration)."""
        bounds = self._bounds(n, k)
        if bounds is None:
            return []
        lo, hi = bounds
        out = []

        def rec(i, rn, rk, acc):
            if i == len(self.generators):
                if rn == 0 and rk == 0:
                    out.append(dict(acc))
                return
            gen = self.generators[i]
            for e in range(lo[i], hi[i] + 1):
                acc[gen.name] = e
                rec(i + 1, rn - e * gen.degree[0], rk - e * gen.degree[1], acc)
            acc.pop(gen.name, None)

        rec(0, n, k, {})
        return [{a: e for a, e in m.items() if e} for m in out]


# -- the geometric fixed point computations ---------------------------------------------------


def phi_thr_z_monomials(N: int) -> list[int]:
    R = MonomialRing(2, [Generator("b1", (2, 0)), Generator("b2", (2, 0)), Generator("e", (1, 0), square_zero=True)])
    return [R.count(n) for n in range(N + 1)]


@dataclass
class DimensionReport:
    dims: list[int]
    monomial_counts: list[int]
    agree: bool
    notes: list[str] = field(default_factory=list)


def phi_thr_z_dims(N: int) -> DimensionReport:
    """``dim Tor_0(n) + dim Tor_1(n - 1)`` for ``Tor^Z(F2[b], F2[b])``,
    ``|b| = 2``, against monomials of ``F2[b1, b2, e]/e^2``."""
    A = polynomial_mod(2, 2, N)
    tor = graded_tor(A, A, N, extra=[z_bar_epsilon_resolution(N)])
    t0, t1 = tor.tor0.f2_dims(), tor.tor1.f2_dims()
    dims = [t0[n] + (t1[n - 1] if n >= 1 else 0) for n in range(N + 1)]
    mono = phi_thr_z_monomials(N)
    notes = [f"resolutions compared: {', '.join(tor.resolutions_compared)}"]
    return DimensionReport(dims, mono, dims == mono and tor.agree, notes)


def phi_thr_f2_dims(N: int, p: int = 2) -> DimensionReport:
    """``F2[w] (x) F2[w]`` with ``|w| = 1``; zero for odd ``p``."""
    if p != 2:
        return DimensionReport([0] * (N + 1), [0] * (N + 1), True, [f"p = {p}: the geometric fixed points are contractible"])
    A = polynomial_mod(2, 1, N)
    tor = graded_tor(A, A, N)
    dims = tor.tor0.f2_dims()
    R = MonomialRing(2, [Generator("w1", (1, 0)), Generator("w2", (1, 0))])
    mono = [R.count(n) for n in range(N + 1)]
    return DimensionReport(dims, mono, dims == mono and tor.agree)


def thr_fp_ring(p: int) -> MonomialRing:
    """Generators of the bigraded ring for ``F_p``: for odd ``p``, ``u^{+-1}``
    in (0, 2) and ``x~`` in (2, 1); for ``p = 2``, ``a`` in (-1, -1), ``u`` in
    (0, -1) and ``x~`` in (2, 1), none invertible."""
    if p == 2:
        gens = [Generator("a", (-1, -1)), Generator("u", (0, -1)), Generator("x~", (2, 1))]
    else:
        gens = [Generator("u", (0, 2), invertible=True), Generator("x~", (2, 1))]
    return MonomialRing(p, gens)


SLICE_ASSUMPTION_P2 = (
    "p = 2: only the named negative-cone generators a, u of the coefficients are used; "
    "contributions from other coefficient classes are assumed absent"
)

# restriction values on the weight-0 generators, recorded as data
RESTRICTION_TABLE = {"x-bar": "x", "y": "0"}


def weight_slice(R: MonomialRing, k: int, N: int) -> list[int]:
    """``dim pi_{n,k}`` for ``n = 0..N`` by monomial counting."""
    return [R.count(n, k) for n in range(N + 1)]


# -- THH(Z) -----------------------------------------------------------------------------------


def p_valuation(k: int, p: int) -> int:
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


def thh_z_table(n: int, p: int | None = None) -> FgAbGroup:
    """``pi_n THH(Z)``: ``Z`` for ``n = 0``, ``Z/k`` for ``n = 2k - 1``, else 0;
    with ``p`` given, the ``p``-local group ``Z/p^{v_p(k)}``."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return FgAbGroup.free(1)
    if n % 2 == 0:
        return FgAbGroup.free(0)
    k = (n + 1) // 2
    if p is None:
        return FgAbGroup.cyclic(k)
    return FgAbGroup.cyclic(p ** p_valuation(k, p))


def crt_consistent(k: int) -> bool:
    """``Z/k`` equals the sum of its ``p``-local parts."""
    primes = [p for p in range(2, k + 1) if k % p == 0 and all(p % q for q in range(2, int(p**0.5) + 1))]
    parts = [thh_z_table(2 * k - 1, p) for p in primes]
    total = direct_sum(*parts)[0] if parts else FgAbGroup.free(0)
    return total.same_type(thh_z_table(2 * k - 1))
