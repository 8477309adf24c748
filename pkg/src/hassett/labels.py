"""Labels of cubic fourfolds lying on several Hassett divisors.

A cubic fourfold ``Y`` in ``C_{d1} & C_{d2}`` (rank of ``A(Y)`` three) has
``A(Y) = <h^2, S, T>`` and every primitive class ``x h^2 + y S + z T`` yields a
label of discriminant

    d = d1 y^2 + 2 lambda y z + d2 z^2,     lambda = 3 <S,T> - <h^2,S><h^2,T>,

where ``lambda`` is 0 unless ``d1 = d2 = 2 (mod 6)``, in which case it is +1
or -1.  Rank four works the same way with three cross terms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .conditions import cond_star, cond_twisted
from .forms import BinaryForm, ModularTable, graded_vectors, modular_nonrepresentation
from .intfactor import factorize, gcd_all, is_perfect_square, valuation
from .lattice import IntLattice, LatticeError, determinant, gram_new, label_discriminant

DEFAULT_BOUND = 50


class LabelError(ValueError):
    pass


class NotRealizable(LabelError):
    """The canonical witness Gram cannot realize the requested lambda."""


def _require_star(*ds: int) -> None:
    for d in ds:
        if not cond_star(d):
            raise LabelError(f"d={d} violates d > 6, d = 0,2 (mod 6)")


def _is2(d: int) -> bool:
    return d % 6 == 2


@dataclass(frozen=True)
class LabelWitness:
    ds: tuple[int, ...]
    coeffs: tuple[int, ...]
    lambdas: tuple[int, ...]
    d: int
    x: int = 0

    def to_json(self) -> dict:
        names = ("y", "z", "w")
        out = {"ds": list(self.ds), "x": self.x, "lambdas": list(self.lambdas), "d": self.d}
        out.update(dict(zip(names, self.coeffs)))
        return out


# ---------------------------------------------------------------------------
# rank 3

def lambda_rank3(d1: int, d2: int) -> frozenset[int]:
    _require_star(d1, d2)
    return frozenset({-1, 1}) if _is2(d1) and _is2(d2) else frozenset({0})


def _canonical_pair(d: int) -> tuple[int, int]:
    """``(a, s)`` with ``3 s - a^2 = d``: a = 0 when 6 | d, else a = 1."""
    return (0, d // 3) if d % 6 == 0 else (1, (d + 1) // 3)


def gram_rank3(d1: int, d2: int, lam: int) -> IntLattice:
    """Witness Gram of ``<h^2, S, T>`` with labels ``d1``, ``d2`` and cross term ``lam``."""
    if lam not in lambda_rank3(d1, d2):
        raise LabelError(f"lambda={lam} not admissible for ({d1}, {d2})")
    a, s = _canonical_pair(d1)
    b, t = _canonical_pair(d2)
    c, r = divmod(lam + a * b, 3)
    if r:
        raise NotRealizable(
            f"3c - {a * b} = {lam} has no integral c with the canonical basis; "
            f"use lambda={-lam} and flip the sign of z")
    return gram_new(3, [[3, a, b], [a, s, c], [b, c, t]], name=f"A({d1},{d2};{lam})")


def _realizable3(d1: int, d2: int, lam: int) -> bool:
    a, _ = _canonical_pair(d1)
    b, _ = _canonical_pair(d2)
    return (lam + a * b) % 3 == 0


def label_rank3(d1: int, d2: int, lam: int, y: int, z: int) -> int:
    if math.gcd(y, z) != 1:
        raise LabelError(f"gcd({y}, {z}) != 1; the label would not be primitive")
    if lam not in lambda_rank3(d1, d2):
        raise LabelError(f"lambda={lam} not admissible for ({d1}, {d2})")
    d = d1 * y * y + 2 * lam * y * z + d2 * z * z
    if _realizable3(d1, d2, lam):
        g = gram_rank3(d1, d2, lam)
        for x in (0, 1, -2):
            got = label_discriminant(g, (1, 0, 0), (x, y, z))
            assert got == d, f"label formula {d} disagrees with Gram determinant {got}"
    return d


def _scan(ds: tuple[int, ...], lambda_sets: Sequence[tuple[int, ...]], bound: int,
          keep: Callable[[int], bool]) -> list[LabelWitness]:
    """All coprime labels in the box, first witness per d, sorted by d."""
    best: dict[int, LabelWitness] = {}
    dim = len(ds)
    for v in graded_vectors((bound,) * dim):
        if gcd_all(v) != 1:
            continue
        for lams in lambda_sets:
            d = _label_value(ds, lams, v)
            if d not in best and keep(d):
                best[d] = LabelWitness(ds, v, lams, d)
    return [best[d] for d in sorted(best)]


def _label_matrix(ds: Sequence[int], lams: Sequence[int]) -> list[list[int]]:
    if len(ds) == 2:
        (l12,) = lams
        return [[ds[0], l12], [l12, ds[1]]]
    l12, l13, l23 = lams
    return [[ds[0], l12, l13], [l12, ds[1], l23], [l13, l23, ds[2]]]


def _label_value(ds: Sequence[int], lams: Sequence[int], v: Sequence[int]) -> int:
    m = _label_matrix(ds, lams)
    return sum(v[i] * m[i][j] * v[j] for i in range(len(v)) for j in range(len(v)))


def enumerate_labels_rank3(d1: int, d2: int, bound: int = DEFAULT_BOUND) -> list[LabelWitness]:
    """Labels ``d`` satisfying star from coprime ``|y|, |z| <= bound``, both lambda signs."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    lams = [(lam,) for lam in sorted(lambda_rank3(d1, d2))]
    return _scan((d1, d2), lams, bound, cond_star)


# ---------------------------------------------------------------------------
# rank 4

def canonical_order(d1: int, d2: int, d3: int) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """Stable sort putting ``0 (mod 6)`` entries first; returns ``(sorted, perm)``.

    ``perm[i]`` is the input position of the i-th sorted entry.
    """
    ds = (d1, d2, d3)
    perm = tuple(sorted(range(3), key=lambda i: ds[i] % 6))
    return tuple(ds[i] for i in perm), perm  # type: ignore[return-value]


def disc_rank4(d1: int, d2: int, d3: int) -> int:
    """Discriminant of the rank-four witness lattice, from the closed forms."""
    _require_star(d1, d2, d3)
    (e1, e2, e3), _ = canonical_order(d1, d2, d3)
    prod = e1 * e2 * e3
    twos = sum(_is2(e) for e in (e1, e2, e3))
    if twos <= 1:
        num = prod
    elif twos == 2:
        num = prod - e1
    else:
        num = prod - e1 - e2 - e3 - 2
    q, r = divmod(num, 9)
    assert r == 0, f"discriminant numerator {num} not divisible by 9"
    return q


def gram_rank4(d1: int, d2: int, d3: int) -> IntLattice:
    """Witness Gram of ``<h^2, S, T, U>``, basis in canonical order.

    Entry ``(0, i)`` is 1 when the i-th label is ``2 (mod 6)``, else 0; the
    diagonal is ``d/3`` or ``(d+1)/3``; the S, T, U block is otherwise zero.
    """
    _require_star(d1, d2, d3)
    es, _ = canonical_order(d1, d2, d3)
    rows = [[3, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
    for i, e in enumerate(es, start=1):
        a, s = _canonical_pair(e)
        rows[0][i] = rows[i][0] = a
        rows[i][i] = s
    return gram_new(4, rows, name=f"A({es[0]},{es[1]},{es[2]})")


_PAIRS = ((0, 1), (0, 2), (1, 2))


def admissible_lambdas_rank4(d1: int, d2: int, d3: int) -> list[tuple[int, int, int]]:
    """Every sign pattern allowed by the residue table.

    Not all of them come from a lattice: ``lambda_ij = -a_i a_j (mod 3)`` with
    ``a_i^2 = 1 (mod 3)``, so when all three labels are ``2 (mod 6)`` the
    product of the three lambdas is forced to be -1.
    """
    _require_star(d1, d2, d3)
    ds = (d1, d2, d3)
    opts = [(-1, 1) if _is2(ds[i]) and _is2(ds[j]) else (0,) for i, j in _PAIRS]
    return list(itertools.product(*opts))


def canonical_lambdas_rank4(d1: int, d2: int, d3: int) -> tuple[int, int, int]:
    """Cross terms realized by ``gram_rank4``: -1 wherever a sign is allowed."""
    _require_star(d1, d2, d3)
    ds = (d1, d2, d3)
    return tuple(-1 if _is2(ds[i]) and _is2(ds[j]) else 0 for i, j in _PAIRS)  # type: ignore


def label_rank4(d1: int, d2: int, d3: int, l12: int, l13: int, l23: int,
                y: int, z: int, w: int) -> int:
    if gcd_all((y, z, w)) != 1:
        raise LabelError(f"gcd({y}, {z}, {w}) != 1; the label would not be primitive")
    lams = (l12, l13, l23)
    if lams not in admissible_lambdas_rank4(d1, d2, d3):
        raise LabelError(f"lambdas {lams} inconsistent with residues of ({d1}, {d2}, {d3})")
    d = _label_value((d1, d2, d3), lams, (y, z, w))
    if lams == canonical_lambdas_rank4(d1, d2, d3):
        g = gram_rank4(d1, d2, d3)
        _, perm = canonical_order(d1, d2, d3)
        coeffs = (y, z, w)
        for x in (0, 1, -2):
            alpha = (x,) + tuple(coeffs[perm[i]] for i in range(3))
            got = label_discriminant(g, (1, 0, 0, 0), alpha)
            assert got == d, f"label formula {d} disagrees with Gram determinant {got}"
    return d


def enumerate_labels_rank4(d1: int, d2: int, d3: int, bound: int = DEFAULT_BOUND,
                           lambdas: Optional[Iterable[tuple[int, int, int]]] = None
                           ) -> list[LabelWitness]:
    """Labels of the rank-four lattice; defaults to the canonical cross terms.

    Every realizable sign pattern is carried to the canonical one by flipping
    signs of y, z, w, so the label set does not depend on that choice.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    lams = list(lambdas) if lambdas is not None else [canonical_lambdas_rank4(d1, d2, d3)]
    allowed = admissible_lambdas_rank4(d1, d2, d3)
    for lam in lams:
        if tuple(lam) not in allowed:
            raise LabelError(f"lambdas {lam} inconsistent with residues of ({d1}, {d2}, {d3})")
    return _scan((d1, d2, d3), [tuple(l) for l in lams], bound, cond_star)


def _ellipsoid_caps(m: Sequence[Sequence[int]], top: int) -> tuple[int, ...]:
    """Per-coordinate bounds for ``v^T m v <= top`` (m positive definite)."""
    n = len(m)
    det = determinant(gram_new(n, m))
    caps = []
    for i in range(n):
        minor = [[m[r][c] for c in range(n) if c != i] for r in range(n) if r != i]
        cof = determinant(gram_new(n - 1, minor)) if n > 1 else 1
        caps.append(math.isqrt(top * cof // det))
    return tuple(caps)


def _min_label(ds: tuple[int, ...], lams: tuple[int, ...], bound: int,
               keep: Callable[[int], bool]) -> Optional[LabelWitness]:
    m = _label_matrix(ds, lams)

    def scan(caps: tuple[int, ...]) -> Optional[LabelWitness]:
        found = None
        for v in graded_vectors(caps):
            if gcd_all(v) != 1:
                continue
            d = _label_value(ds, lams, v)
            if (found is None or d < found.d) and cond_star(d) and keep(d):
                found = LabelWitness(ds, v, lams, d)
        return found

    r = 1
    while True:
        r = min(r, bound)
        hit = scan((r,) * len(ds))
        if hit is not None:
            caps = tuple(min(bound, c) for c in _ellipsoid_caps(m, hit.d))
            return scan(caps)
        if r >= bound:
            return None
        r *= 2


def twisted_label_search(d1: int, d2: int, d3: int, bound: int = DEFAULT_BOUND,
                         lambdas: Optional[tuple[int, int, int]] = None
                         ) -> Optional[LabelWitness]:
    """Smallest rank-four label with ``|y|, |z|, |w| <= bound`` whose d/2 has
    every prime ``2 (mod 3)`` to an even power.

    ``None`` means "not found within bound".  Non-primitive coefficient
    vectors are skipped on purpose: they give ``l^2 d`` for a primitive
    label ``d``, and scaling by a square never changes that parity test.
    """
    lams = lambdas if lambdas is not None else canonical_lambdas_rank4(d1, d2, d3)
    if tuple(lams) not in admissible_lambdas_rank4(d1, d2, d3):
        raise LabelError(f"lambdas {lams} inconsistent with residues of ({d1}, {d2}, {d3})")
    return _min_label((d1, d2, d3), tuple(lams), bound, cond_twisted)


def square_scale(d: int, k: int) -> int:
    if is_perfect_square(k) is None or k == 0:
        raise LabelError(f"{k} is not a positive perfect square")
    _require_star(d)
    return k * d


def kappa(lat: IntLattice) -> Fraction:
    """Algebraicity index ``2^rank / |det|``."""
    det = determinant(lat)
    if det == 0:
        raise LatticeError("kappa undefined for a degenerate lattice")
    return Fraction(2**lat.rank, abs(det))


# ---------------------------------------------------------------------------
# obstructions

@dataclass(frozen=True)
class ObstructionBranch:
    lam: int
    content: int
    form: BinaryForm
    half_valuation: int  # v_p(content / 2), odd
    table: ModularTable

    def to_json(self) -> dict:
        return {
            "lambda": self.lam,
            "content": self.content,
            "form": self.form.to_json(),
            "v_p_of_half_content": self.half_valuation,
            "table": self.table.to_json(),
        }


@dataclass(frozen=True)
class ObstructionCertificate:
    d1: int
    d2: int
    p: int
    branches: tuple[ObstructionBranch, ...]
    conclusion: str = field(default="every induced label violates the twisted condition")

    @property
    def c(self) -> int:
        return self.branches[0].content

    @property
    def q(self) -> BinaryForm:
        return self.branches[0].form

    @property
    def table(self) -> ModularTable:
        return self.branches[0].table

    def verify(self) -> bool:
        for br in self.branches:
            if self.p % 3 != 2 or br.half_valuation % 2 == 0:
                return False
            if len(br.table.rows) != self.p**2 - 1 or not all(r[2] for r in br.table.rows):
                return False
            f = br.form
            if (f.a * br.content, f.b * br.content, f.c * br.content) != (self.d1, br.lam, self.d2):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "d1": self.d1,
            "d2": self.d2,
            "p": self.p,
            "c": self.c,
            "q": self.q.to_json(),
            "branches": [b.to_json() for b in self.branches],
            "conclusion": self.conclusion,
        }


def _obstructing_primes(content: int, form: BinaryForm) -> list[tuple[int, int, ModularTable]]:
    if content % 2:
        return []
    out = []
    for p in factorize(content).primes():
        if p % 3 != 2:
            continue
        v = valuation(content, p) - (1 if p == 2 else 0)
        if v % 2 == 0:
            continue
        table = modular_nonrepresentation(form, p)
        if table.holds:
            out.append((p, v, table))
    return out


def twisted_obstruction(d1: int, d2: int) -> Optional[ObstructionCertificate]:
    """Certificate that no label of ``C_{d1} & C_{d2}`` (rank three) passes
    the twisted condition, or ``None``.

    Each label family is ``c * q(y, z)`` with ``c`` the content.  If a prime
    ``p = 2 (mod 3)`` has odd exponent in ``c/2`` and ``q`` has no nontrivial
    zero mod ``p``, then ``v_p(d/2) = v_p(c/2)`` is odd for all coprime
    ``y, z``.  ``None`` is not a claim that some label passes.
    """
    per_lambda: dict[int, dict[int, ObstructionBranch]] = {}
    for lam in sorted(lambda_rank3(d1, d2)):
        c = gcd_all((d1, lam, d2))
        form = BinaryForm(d1 // c, lam // c, d2 // c)
        per_lambda[lam] = {p: ObstructionBranch(lam, c, form, v, t)
                           for p, v, t in _obstructing_primes(c, form)}
    common = set.intersection(*(set(b) for b in per_lambda.values()))
    if not common:
        return None
    p = min(common)
    return ObstructionCertificate(d1, d2, p, tuple(per_lambda[lam][p] for lam in sorted(per_lambda)))
