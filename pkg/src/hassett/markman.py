"""Isotropic classes in the algebraic Mukai lattice and twisted hyperbolic planes.

For ``X`` of K3^[n]-type the algebraic part of the Mukai lattice contains
``NS(X) + <2n-2>`` (the second summand spanned by ``v_X``).  Given a primitive
isotropic ``D`` of divisibility ``k`` and any ``F`` with ``<F, D> = k``, the
pair ``D, -m D + k F`` (``F^2 = 2m``) spans a copy of ``U(k^2)``.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .intfactor import gcd_all, xgcd
from .lattice import (IntLattice, LatticeError, direct_sum, divisibility, is_primitive,
                      lattice_rank1, pairing, signature)

log = logging.getLogger(__name__)

DEFAULT_RADII = (1, 2, 4, 8, 16, 30)


@dataclass(frozen=True)
class AmbientAlgebraic:
    ns: IntLattice
    n: int
    ambient: IntLattice

    @property
    def rho(self) -> int:
        return self.ns.rank


def build_ambient(ns: IntLattice, n: int) -> AmbientAlgebraic:
    if n < 2:
        raise LatticeError(f"K3^[n]-type needs n >= 2, got {n}")
    rho = ns.rank
    sig = signature(ns)
    if sig != (1, rho - 1, 0):
        raise LatticeError(f"NS lattice must have signature (1, {rho - 1}, 0), got {sig}")
    return AmbientAlgebraic(ns, n, direct_sum(ns, lattice_rank1(2 * n - 2), name="NS+<2n-2>"))


@dataclass(frozen=True)
class IsotropicSearch:
    vector: Optional[tuple[int, ...]]
    radius: int
    support: int = 0

    def __bool__(self) -> bool:
        return self.vector is not None


def _order_key(v: Sequence[int]) -> tuple:
    return (sum(abs(x) for x in v), tuple(-abs(x) for x in v), tuple(x < 0 for x in v))


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = gcd_all(v)
    return tuple(x // g for x in v)


# float64 square roots are exact below this; larger searches use Python ints
_NUMPY_LIMIT = 2**50


def _support_hits(g: Sequence[Sequence[int]], supp: tuple[int, ...], r: int) -> list[tuple[int, ...]]:
    """Isotropic vectors supported exactly on ``supp`` with entries in [-r, r].

    The free coordinates run over a box and the last one is solved from
    ``a x^2 + 2 B x + C = 0``.
    """
    n = len(g)
    free, last = supp[:-1], supp[-1]
    a = g[last][last]
    if not free:
        return [tuple(1 if i == last else 0 for i in range(n))] if a == 0 else []
    gmax = max(abs(g[i][j]) for i in supp for j in supp) or 1
    size = len(supp) * r
    if (gmax * size) ** 2 * 4 < _NUMPY_LIMIT:
        raw = _support_hits_numpy(g, free, last, r)
    else:
        raw = _support_hits_python(g, free, last, r)
    out = []
    for vals, x in raw:
        v = [0] * n
        for i, val in zip(free, vals):
            v[i] = int(val)
        v[last] = int(x)
        out.append(tuple(v))
    return out


def _last_coordinate(a: int, b: int, c: int, r: int) -> list[int]:
    roots = []
    if a != 0:
        disc = b * b - a * c
        if disc < 0:
            return []
        s = math.isqrt(disc)
        if s * s != disc:
            return []
        for num in {-b + s, -b - s}:
            if num % a == 0:
                roots.append(num // a)
    elif b != 0:
        if c % (2 * b) == 0:
            roots.append(-c // (2 * b))
    elif c == 0:
        roots.extend(x for x in range(-r, r + 1))
    return [x for x in roots if x != 0 and abs(x) <= r]


def _support_hits_python(g, free, last, r):
    vals = [x for x in range(-r, r + 1) if x]
    hits = []
    for combo in itertools.product(vals, repeat=len(free)):
        b = sum(g[last][i] * v for i, v in zip(free, combo))
        c = sum(g[i][j] * vi * vj for i, vi in zip(free, combo) for j, vj in zip(free, combo))
        for x in _last_coordinate(g[last][last], b, c, r):
            hits.append((combo, x))
    return hits


def _support_hits_numpy(g, free, last, r):
    vals = np.array([x for x in range(-r, r + 1) if x], dtype=np.int64)
    k = len(free)
    sub = np.array([[g[i][j] for j in free] for i in free], dtype=np.int64)
    row = np.array([g[last][i] for i in free], dtype=np.int64)
    a = int(g[last][last])
    hits = []
    # chunk on the first free coordinate to bound memory
    if k == 1:
        rest = np.zeros((1, 0), dtype=np.int64)
    else:
        rest = np.array(list(itertools.product(vals, repeat=k - 1)), dtype=np.int64)
    for first in vals:
        v = np.hstack([np.full((rest.shape[0], 1), first, dtype=np.int64), rest])
        b = v @ row
        c = np.einsum("ij,jk,ik->i", v, sub, v)
        if a != 0:
            disc = b * b - a * c
            ok = disc >= 0
            s = np.zeros_like(disc)
            s[ok] = np.floor(np.sqrt(disc[ok].astype(np.float64))).astype(np.int64)
            ok &= s * s == disc
            for idx in np.nonzero(ok)[0]:
                for x in _last_coordinate(a, int(b[idx]), int(c[idx]), r):
                    hits.append((tuple(v[idx]), x))
        else:
            cand = (b != 0) | (c == 0)
            for idx in np.nonzero(cand)[0]:
                for x in _last_coordinate(0, int(b[idx]), int(c[idx]), r):
                    hits.append((tuple(v[idx]), x))
    return hits


def find_isotropic(lat: IntLattice, radius_schedule: Sequence[int] = DEFAULT_RADII) -> IsotropicSearch:
    """First primitive ``v != 0`` with ``v.v = 0``, searching boxes of growing radius.

    Within one radius, supports of size 1, 2, ... are tried in turn (so high
    rank lattices stay cheap when a short isotropic vector exists), and the
    reported vector is the minimum in the package-wide order among all
    primitive hits of that support size.
    """
    g = lat.gram
    n = lat.rank
    last_r = 0
    for r in radius_schedule:
        last_r = r
        for s in range(1, n + 1):
            hits = set()
            for supp in itertools.combinations(range(n), s):
                for v in _support_hits(g, supp, r):
                    hits.add(_primitive(v))
            if hits:
                best = min(hits, key=_order_key)
                return IsotropicSearch(best, r, s)
    return IsotropicSearch(None, last_r)


def partner(lat: IntLattice, d: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """``(F, k)`` with ``k = div(D)`` and ``<F, D> = k``, via iterated extended gcd."""
    k = divisibility(lat, d)
    coeffs = [0] * lat.rank
    acc = 0
    for i in range(lat.rank):
        gi = pairing(lat, d, lat.basis_vector(i))
        if gi == 0 or (acc and gi % acc == 0):
            continue
        acc, s, t = xgcd(acc, gi)
        coeffs = [s * c for c in coeffs]
        coeffs[i] += t
    f = tuple(coeffs)
    assert acc == k and pairing(lat, f, d) == k
    return f, k


@dataclass(frozen=True)
class UEmbeddingCertificate:
    D: tuple[int, ...]
    F: tuple[int, ...]
    k: int
    m: int
    B: tuple[int, ...]
    gram2: tuple[tuple[int, int], tuple[int, int]]

    def verify(self, lat: IntLattice) -> bool:
        """Recompute everything from the raw Gram matrix."""
        g = lat.gram

        def dot(u, v):
            return sum(u[i] * g[i][j] * v[j] for i in range(len(g)) for j in range(len(g)))

        col_pairings = [sum(self.D[i] * g[i][j] for i in range(len(g))) for j in range(len(g))]
        div = 0
        for x in col_pairings:
            div = math.gcd(div, x)
        return (any(self.D)
                and math.gcd(*self.D) == 1
                and dot(self.D, self.D) == 0
                and div == self.k
                and dot(self.F, self.D) == self.k
                and dot(self.F, self.F) == 2 * self.m
                and all(b == -self.m * dd + self.k * ff for b, dd, ff in zip(self.B, self.D, self.F))
                and dot(self.B, self.B) == 0
                and dot(self.D, self.B) == self.k**2
                and self.gram2 == ((0, self.k**2), (self.k**2, 0)))

    def to_json(self) -> dict:
        return {
            "D": list(self.D),
            "F": list(self.F),
            "k": self.k,
            "m": self.m,
            "basis": [list(self.D), list(self.B)],
            "gram2": [list(r) for r in self.gram2],
        }


def u_embedding(lat: IntLattice, d: Sequence[int]) -> UEmbeddingCertificate:
    d = tuple(d)
    if not any(d):
        raise LatticeError("D must be nonzero")
    if pairing(lat, d, d) != 0:
        raise LatticeError(f"D={d} is not isotropic")
    if not is_primitive(lat, d):
        raise LatticeError(f"D={d} is not primitive")
    f, k = partner(lat, d)
    ff = pairing(lat, f, f)
    if ff % 2:
        raise LatticeError(f"F^2 = {ff} is odd; the lattice is not even, so m = F^2/2 is not integral")
    m = ff // 2
    b = tuple(-m * x + k * y for x, y in zip(d, f))
    gram2 = ((pairing(lat, d, d), pairing(lat, d, b)), (pairing(lat, b, d), pairing(lat, b, b)))
    cert = UEmbeddingCertificate(d, f, k, m, b, gram2)
    assert gram2 == ((0, k * k), (k * k, 0)), gram2
    return cert


@dataclass
class TheoremAVerdict:
    status: str
    certified: bool
    rho: int
    n: int
    hypothesis_met: bool
    radius: int
    certificate: Optional[UEmbeddingCertificate] = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "status": self.status,
            "certified": self.certified,
            "rho": self.rho,
            "n": self.n,
            "rho_at_least_4": self.hypothesis_met,
            "radius": self.radius,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "notes": self.notes,
        }


def theoremA_verdict(ns: IntLattice, n: int,
                     radius_schedule: Sequence[int] = DEFAULT_RADII) -> TheoremAVerdict:
    amb = build_ambient(ns, n)
    notes = []
    hyp = amb.rho >= 4
    if not hyp:
        notes.append("rho < 4, theorem hypothesis unmet")
    pos, neg, _ = signature(amb.ambient)
    if pos == 0 or neg == 0:
        notes.append("ambient definite")
        return TheoremAVerdict(f"inconclusive (radius {max(radius_schedule)})", False,
                               amb.rho, n, hyp, max(radius_schedule), None, notes)
    found = find_isotropic(amb.ambient, radius_schedule)
    if not found:
        log.info("no isotropic vector up to radius %d", found.radius)
        return TheoremAVerdict(f"inconclusive (radius {found.radius})", False,
                               amb.rho, n, hyp, found.radius, None, notes)
    cert = u_embedding(amb.ambient, found.vector)
    return TheoremAVerdict("twisted-moduli (certified)", True, amb.rho, n, hyp,
                           found.radius, cert, notes)
