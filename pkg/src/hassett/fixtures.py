"""Named lattices and worked examples for special cubic fourfolds."""

from __future__ import annotations

from .lattice import IntLattice, gram_new

H2 = (1, 0, 0)


def two_planes() -> IntLattice:
    """``<h^2, P1, P2>`` for two disjoint planes."""
    return gram_new(3, [[3, 1, 1], [1, 3, 0], [1, 0, 3]], name="two_planes")


def veronese_scroll() -> IntLattice:
    """``<h^2, Sigma_3, V>``: a cubic scroll and a Veronese surface."""
    return gram_new(3, [[3, 3, 4], [3, 7, 4], [4, 4, 12]], name="veronese_scroll")


def veronese_c60(k: int) -> IntLattice:
    """``<h^2, V, T>`` with ``<h^2,T> = 3k``, ``<V,T> = 4k``, ``T^2 = 3k^2 + 20``."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return gram_new(3, [[3, 4, 3 * k], [4, 12, 4 * k], [3 * k, 4 * k, 3 * k * k + 20]],
                    name=f"veronese_c60({k})")


# (y, z, quoted value) triples for the 20/44 example; the quoted values drop the
# +-2yz cross term that two labels both 2 (mod 6) force.
EX_20_44 = {"d1": 20, "d2": 44, "cases": [(1, 1, 64), (1, 3, 416)]}


def fixtures() -> dict:
    return {
        "two_planes": two_planes(),
        "veronese_scroll": veronese_scroll(),
        "veronese_c60": veronese_c60,
        "ex_20_44": EX_20_44,
    }
