"""Integer lattices given by symmetric Gram matrices.

Everything is exact: determinants use Bareiss fraction-free elimination and
signatures come from congruence diagonalization over the rationals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .intfactor import gcd_all

Vector = tuple[int, ...]


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class IntLattice:
    gram: tuple[tuple[int, ...], ...]
    degenerate: bool = False
    name: str = field(default="", compare=False)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.gram]

    def basis_vector(self, i: int) -> Vector:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": self.rows()}

    def __str__(self) -> str:
        width = max(len(str(x)) for row in self.gram for x in row)
        return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in self.gram)


def gram_new(rank: int, entries: Sequence[Sequence[int]], *, allow_degenerate: bool = False,
             name: str = "") -> IntLattice:
    if rank < 1:
        raise LatticeError(f"rank must be positive, got {rank}")
    if len(entries) != rank or any(len(row) != rank for row in entries):
        raise LatticeError(f"entries must be {rank}x{rank}")
    gram = tuple(tuple(int(x) for x in row) for row in entries)
    for i in range(rank):
        for j in range(i + 1, rank):
            if gram[i][j] != gram[j][i]:
                raise LatticeError(f"Gram matrix not symmetric at ({i},{j}): "
                                   f"{gram[i][j]} != {gram[j][i]}")
    degenerate = _bareiss_det(gram) == 0
    if degenerate and not allow_degenerate:
        raise LatticeError("Gram matrix is degenerate (determinant 0)")
    return IntLattice(gram, degenerate, name)


def from_json(data: dict | str) -> IntLattice:
    if isinstance(data, str):
        data = json.loads(data)
    rank = data.get("rank", len(data["gram"]))
    return gram_new(rank, data["gram"])


def _bareiss_det(m: Sequence[Sequence[int]]) -> int:
    a = [list(row) for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinant(lat: IntLattice) -> int:
    return _bareiss_det(lat.gram)


def signature(lat: IntLattice) -> tuple[int, int, int]:
    """Return ``(positive, negative, zero)`` via congruence diagonalization."""
    n = lat.rank
    a = [[Fraction(x) for x in row] for row in lat.gram]
    pos = neg = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            # all remaining diagonal entries vanish; use e_i + e_j
            hit = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if hit is None:
                break
            i, j = hit
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        # Schur complement; symmetric, so this is a congruence on the tail block
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
        for j in range(k + 1, n):
            a[k][j] = a[j][k] = Fraction(0)
        k += 1
    return pos, neg, n - pos - neg


def _check_vec(lat: IntLattice, v: Sequence[int]) -> None:
    if len(v) != lat.rank:
        raise LatticeError(f"vector of length {len(v)} in lattice of rank {lat.rank}")


def pairing(lat: IntLattice, u: Sequence[int], v: Sequence[int]) -> int:
    _check_vec(lat, u)
    _check_vec(lat, v)
    return sum(ui * gij * vj
               for ui, row in zip(u, lat.gram) if ui
               for gij, vj in zip(row, v) if vj)


def norm(lat: IntLattice, v: Sequence[int]) -> int:
    return pairing(lat, v, v)


def divisibility(lat: IntLattice, v: Sequence[int]) -> int:
    """gcd of the pairings of ``v`` against every basis vector."""
    _check_vec(lat, v)
    if not any(v):
        raise LatticeError("divisibility of the zero vector is undefined")
    return gcd_all(pairing(lat, v, lat.basis_vector(i)) for i in range(lat.rank))


def is_primitive(lat: IntLattice | None, v: Sequence[int]) -> bool:
    if lat is not None:
        _check_vec(lat, v)
    if not any(v):
        raise LatticeError("primitivity of the zero vector is undefined")
    return gcd_all(v) == 1


def direct_sum(*lats: IntLattice, name: str = "") -> IntLattice:
    n = sum(l.rank for l in lats)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for l in lats:
        for i, row in enumerate(l.gram):
            rows[off + i][off:off + l.rank] = row
        off += l.rank
    return IntLattice(tuple(tuple(r) for r in rows), any(l.degenerate for l in lats), name)


def rescale(lat: IntLattice, k: int) -> IntLattice:
    if k == 0:
        raise LatticeError("rescaling by 0 is not allowed")
    return IntLattice(tuple(tuple(k * x for x in row) for row in lat.gram), lat.degenerate)


def sublattice_gram(lat: IntLattice, vectors: Sequence[Sequence[int]]) -> IntLattice:
    """Gram matrix of the given vectors; may be degenerate (flagged)."""
    if not vectors:
        raise LatticeError("need at least one vector")
    rows = [[pairing(lat, u, v) for v in vectors] for u in vectors]
    return gram_new(len(rows), rows, allow_degenerate=True)


def label_discriminant(lat: IntLattice, h: Sequence[int], alpha: Sequence[int]) -> int:
    """Determinant of the Gram matrix of ``(h, alpha)``: ``h^2 a^2 - <h,a>^2``."""
    hh = pairing(lat, h, h)
    ha = pairing(lat, h, alpha)
    aa = pairing(lat, alpha, alpha)
    return hh * aa - ha * ha


# ---------------------------------------------------------------------------
# Standard lattices

# Cartan matrix of E8, Bourbaki numbering (node 2 hangs off node 4).
E8_GRAM = (
    (2, 0, -1, 0, 0, 0, 0, 0),
    (0, 2, 0, -1, 0, 0, 0, 0),
    (-1, 0, 2, -1, 0, 0, 0, 0),
    (0, -1, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)

A2_GRAM = ((2, -1), (-1, 2))


def lattice_U() -> IntLattice:
    return IntLattice(((0, 1), (1, 0)), name="U")


def lattice_E8() -> IntLattice:
    return IntLattice(E8_GRAM, name="E8")


def lattice_E8_neg() -> IntLattice:
    return IntLattice(rescale(lattice_E8(), -1).gram, name="E8(-1)")


def lattice_A2() -> IntLattice:
    return IntLattice(A2_GRAM, name="A2")


def lattice_rank1(m: int) -> IntLattice:
    if m == 0:
        raise LatticeError("<0> is degenerate")
    return IntLattice(((m,),), name=f"<{m}>")


def diagonal(*entries: int) -> IntLattice:
    return direct_sum(*(lattice_rank1(e) for e in entries))


def mukai_lattice() -> IntLattice:
    """U^4 + E8(-1)^2: even unimodular of signature (4, 20)."""
    U, E = lattice_U(), lattice_E8_neg()
    return direct_sum(U, U, U, U, E, E, name="Mukai")


def k3n_lattice(n: int) -> IntLattice:
    """U^3 + E8(-1)^2 + <-(2n-2)>, the second cohomology of K3^[n]-type."""
    if n < 2:
        raise LatticeError(f"K3^[n] lattice needs n >= 2, got {n}")
    U, E = lattice_U(), lattice_E8_neg()
    return direct_sum(U, U, U, E, E, lattice_rank1(-(2 * n - 2)), name=f"K3^[{n}]")


def cubic_H4() -> IntLattice:
    """Middle cohomology of a cubic fourfold: (+1)^21 + (-1)^2."""
    return IntLattice(diagonal(*([1] * 21 + [-1] * 2)).gram, name="H4(Y)")


def cubic_primitive() -> IntLattice:
    """Primitive middle cohomology: A2 + U^2 + E8^2."""
    U, E = lattice_U(), lattice_E8()
    return direct_sum(lattice_A2(), U, U, E, E, name="H4(Y)_prim")
