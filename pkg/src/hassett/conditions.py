"""Numerical conditions on a Hassett discriminant ``d``.

``star``     d > 6 and d = 0, 2 (mod 6): the divisor C_d is nonempty.
``hilb``     d = (2k^2 + 2k + 2) / a^2: F(Y) birational to a Hilbert square.
``moduli``   4, 9 and odd primes p = 2 (mod 3) do not divide d: untwisted sheaves.
``twisted``  every prime p = 2 (mod 3) divides d/2 to an even power.
``dagger``   star holds and twisted fails.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

from .intfactor import Factorization, factorize

log = logging.getLogger(__name__)

DEFAULT_A_MAX = 100


def cond_star(d: int) -> bool:
    return d > 6 and d % 6 in (0, 2)


@dataclass(frozen=True)
class HilbResult:
    satisfied: bool
    a_max: int
    k: Optional[int] = None
    a: Optional[int] = None

    def to_json(self) -> dict:
        if self.satisfied:
            return {"status": "satisfied", "k": self.k, "a": self.a, "a_max": self.a_max}
        return {"status": "unsatisfied-within-bound", "a_max": self.a_max}

    def __bool__(self) -> bool:
        return self.satisfied


def cond_hilb(d: int, a_max: int = DEFAULT_A_MAX) -> HilbResult:
    """Search ``a <= a_max`` for ``2k^2 + 2k + 2 = d a^2``.

    For fixed ``a`` this is a quadratic in ``k`` with discriminant
    ``4(2 d a^2 - 3)``, so ``k = (r - 1) / 2`` where ``r^2 = 2 d a^2 - 3``.
    ``r`` is automatically odd, hence ``k`` is an integer whenever ``r`` exists.
    """
    if a_max < 1:
        raise ValueError(f"a_max must be positive, got {a_max}")
    if d >= 1:
        for a in range(1, a_max + 1):
            disc = 2 * d * a * a - 3
            if disc < 0:
                continue
            r = math.isqrt(disc)
            if r * r == disc:
                return HilbResult(True, a_max, (r - 1) // 2, a)
    return HilbResult(False, a_max)


def cond_moduli(d: int) -> bool:
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    if d % 4 == 0 or d % 9 == 0:
        return False
    return not any(p % 3 == 2 and p != 2 for p in factorize(d).primes())


def _twisted_from(half: Factorization) -> bool:
    return all(e % 2 == 0 for p, e in half.factors if p % 3 == 2)


def cond_twisted(d: int) -> bool:
    if d < 2 or d % 2:
        log.debug("cond_twisted(%d): d must be even and >= 2; returning False", d)
        return False
    return _twisted_from(factorize(d // 2))


def cond_dagger(d: int) -> bool:
    return cond_star(d) and not cond_twisted(d)


@dataclass(frozen=True)
class ConditionVerdict:
    d: int
    star: bool
    hilb: HilbResult
    moduli: bool
    twisted: bool
    dagger: bool
    half_factorization: Optional[Factorization]
    odd_primes_2mod3: tuple[int, ...]
    diagnostic: str = ""

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "d": self.d,
            "star": self.star,
            "hilb": self.hilb.to_json(),
            "moduli": self.moduli,
            "twisted": self.twisted,
            "dagger": self.dagger,
            "evidence": {
                "d_over_2": (self.half_factorization.to_json()
                             if self.half_factorization else None),
                "primes_2mod3_with_odd_exponent": list(self.odd_primes_2mod3),
                "hilb_bound": self.hilb.a_max,
            },
            "diagnostic": self.diagnostic,
        }


def verdict(d: int, a_max: int = DEFAULT_A_MAX) -> ConditionVerdict:
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    half = factorize(d // 2) if d % 2 == 0 and d >= 2 else None
    odd = tuple(p for p, e in half.factors if p % 3 == 2 and e % 2) if half else ()
    twisted = half is not None and not odd
    star = cond_star(d)
    diag = "" if half else "d is odd; d/2 has no factorization and twisted is False"
    return ConditionVerdict(
        d=d,
        star=star,
        hilb=cond_hilb(d, a_max),
        moduli=cond_moduli(d),
        twisted=twisted,
        dagger=star and not twisted,
        half_factorization=half,
        odd_primes_2mod3=odd,
        diagnostic=diag,
    )


def implication_violations(d_lo: int = 7, d_hi: int = 10000,
                           a_max: int = DEFAULT_A_MAX) -> list[tuple[int, str]]:
    """Check hilb => moduli => twisted => star on ``[d_lo, d_hi]``.

    The moduli => twisted link is only meaningful where star holds (odd d
    can satisfy moduli but never twisted), so it is tested there only.
    """
    bad = []
    for d in range(d_lo, d_hi + 1):
        v = verdict(d, a_max)
        if v.hilb.satisfied and not v.moduli:
            bad.append((d, "hilb without moduli"))
        if v.hilb.satisfied and not v.star:
            bad.append((d, "hilb without star"))
        if v.star and v.moduli and not v.twisted:
            bad.append((d, "moduli without twisted"))
        if v.twisted and not v.star:
            bad.append((d, "twisted without star"))
    return bad
