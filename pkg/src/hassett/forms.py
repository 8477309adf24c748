"""Integral binary and ternary quadratic forms.

Searches here all walk candidates in one fixed order (see ``graded_vectors``)
so that every reported witness is reproducible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .intfactor import gcd_all, is_prime


def graded_vectors(caps: Sequence[int], modulus: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield nonzero integer vectors with ``|v_i| <= caps[i]``.

    Order: total weight ``sum |v_i|`` ascending, then the absolute-value
    tuple in descending lexicographic order, then signs with ``+`` before
    ``-`` (leftmost coordinate most significant).  When ``modulus`` is
    given, ``x`` and ``-x`` that coincide mod it are emitted once.
    """
    dim = len(caps)
    top = sum(caps)

    def compositions(w: int, i: int) -> Iterator[tuple[int, ...]]:
        if i == dim - 1:
            if w <= caps[i]:
                yield (w,)
            return
        rest = sum(caps[i + 1:])
        for x in range(min(w, caps[i]), max(0, w - rest) - 1, -1):
            for tail in compositions(w - x, i + 1):
                yield (x,) + tail

    for w in range(1, top + 1):
        for absv in compositions(w, 0):
            choices = []
            for x in absv:
                if x == 0 or (modulus is not None and (2 * x) % modulus == 0):
                    choices.append((x,))
                else:
                    choices.append((x, -x))
            yield from itertools.product(*choices)


@dataclass(frozen=True)
class BinaryForm:
    """``a y^2 + 2 b y z + c z^2``."""

    a: int
    b: int
    c: int

    def __call__(self, y: int, z: int) -> int:
        return self.a * y * y + 2 * self.b * y * z + self.c * z * z

    @property
    def det(self) -> int:
        return self.a * self.c - self.b * self.b

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.det > 0

    def content(self) -> int:
        return gcd_all((self.a, self.b, self.c))

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "text": str(self)}

    def __str__(self) -> str:
        terms = []
        for coef, mono in ((self.a, "y^2"), (2 * self.b, "yz"), (self.c, "z^2")):
            if coef:
                terms.append(f"{coef}{mono}" if coef != 1 else mono)
        return " + ".join(terms).replace("+ -", "- ") or "0"


@dataclass(frozen=True)
class TernaryForm:
    """``yy*y^2 + zz*z^2 + ww*w^2 + yz*yz + yw*yw + zw*zw`` with integer coefficients.

    Cross coefficients are stored as they appear in the polynomial, so odd
    values such as the form ``yz`` are allowed.
    """

    yy: int = 0
    zz: int = 0
    ww: int = 0
    yz: int = 0
    yw: int = 0
    zw: int = 0

    @classmethod
    def from_symmetric(cls, m: Sequence[Sequence[int]]) -> "TernaryForm":
        """Form ``v^T m v`` of a symmetric 3x3 integer matrix."""
        return cls(m[0][0], m[1][1], m[2][2], 2 * m[0][1], 2 * m[0][2], 2 * m[1][2])

    def coefficients(self) -> tuple[int, int, int, int, int, int]:
        return (self.yy, self.zz, self.ww, self.yz, self.yw, self.zw)

    def __call__(self, y: int, z: int, w: int) -> int:
        return (self.yy * y * y + self.zz * z * z + self.ww * w * w
                + self.yz * y * z + self.yw * y * w + self.zw * z * w)

    def to_json(self) -> dict:
        return dict(zip(("yy", "zz", "ww", "yz", "yw", "zw"), self.coefficients()))


def represents(q: BinaryForm, n: int, coprime: bool = False) -> Optional[tuple[int, int]]:
    """Decide whether the positive definite form ``q`` represents ``n``.

    Completing the square gives ``z^2 <= a n / det`` and ``y^2 <= c n / det``,
    so the search box below is exhaustive and ``None`` is a proof of absence.
    """
    if not q.is_positive_definite():
        raise ValueError(f"{q} is not positive definite")
    if n < 0:
        raise ValueError(f"target must be non-negative, got {n}")
    if n == 0:
        return None if coprime else (0, 0)
    ymax = math.isqrt(q.c * n // q.det)
    zmax = math.isqrt(q.a * n // q.det)
    for y, z in graded_vectors((ymax, zmax)):
        if q(y, z) == n and (not coprime or math.gcd(y, z) == 1):
            return (y, z)
    return None


@dataclass(frozen=True)
class ModularTable:
    form: BinaryForm
    p: int
    rows: tuple[tuple[int, int, int], ...]  # (y, z, q(y,z) mod p)
    holds: bool
    witness: Optional[tuple[int, int]]

    def to_json(self) -> dict:
        return {
            "form": self.form.to_json(),
            "p": self.p,
            "holds": self.holds,
            "witness": list(self.witness) if self.witness else None,
            "rows": [list(r) for r in self.rows],
        }


def modular_nonrepresentation(q: BinaryForm, p: int) -> ModularTable:
    """Tabulate ``q mod p`` over all nonzero residue pairs.

    If no entry vanishes then ``p`` never divides ``q(y, z)`` for coprime
    integers ``y, z`` (they cannot both be divisible by ``p``).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    rows = tuple((y, z, q(y, z) % p) for y in range(p) for z in range(p) if (y, z) != (0, 0))
    holds = all(r[2] for r in rows)
    witness = None
    if not holds:
        h = p // 2
        witness = next(v for v in graded_vectors((h, h), p) if q(*v) % p == 0)
    return ModularTable(q, p, rows, holds, witness)


def chevalley_solve(q: TernaryForm, p: int) -> tuple[int, int, int]:
    """Nontrivial zero of ``q`` modulo ``p``.

    A quadratic form in three variables always has one (more variables than
    the degree), so running out of candidates means a bug here.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    h = p // 2
    for v in graded_vectors((h, h, h), p):
        if q(*v) % p == 0:
            return v
    raise AssertionError(f"no nontrivial zero of {q} mod {p}; Chevalley-Warning violated")
