import itertools
import math
import random

import numpy as np
import pytest

from hassett import markman
from hassett.lattice import (LatticeError, diagonal, direct_sum, gram_new, lattice_U, pairing,
                             rescale, signature)
from hassett.markman import (build_ambient, find_isotropic, partner, theoremA_verdict,
                             u_embedding)


def box_isotropic(lat, r):
    """Every primitive nonzero isotropic vector in [-r, r]^n (brute force)."""
    g = np.array(lat.gram)
    pts = np.array(list(itertools.product(range(-r, r + 1), repeat=lat.rank)))
    q = np.einsum("ij,jk,ik->i", pts, g, pts)
    return {tuple(int(x) for x in v) for v in pts[q == 0] if any(v) and math.gcd(*v) == 1}


def random_ns(rng, rank=4, lo=-6, hi=6, even=True):
    while True:
        m = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            for j in range(i, rank):
                x = rng.randint(lo, hi)
                if i == j and even:
                    x = 2 * (x // 2)
                m[i][j] = m[j][i] = x
        try:
            lat = gram_new(rank, m)
        except LatticeError:
            continue
        if signature(lat) == (1, rank - 1, 0):
            return lat


def test_build_ambient_examples():
    amb = build_ambient(diagonal(2), 2)
    assert amb.ambient.rows() == [[2, 0], [0, 2]] and signature(amb.ambient) == (2, 0, 0)
    amb = build_ambient(lattice_U(), 2)
    assert amb.ambient.rows() == [[0, 1, 0], [1, 0, 0], [0, 0, 2]]
    amb = build_ambient(diagonal(2, -2, -2, -2), 3)
    assert amb.ambient == diagonal(2, -2, -2, -2, 4) and amb.rho == 4


def test_build_ambient_errors():
    with pytest.raises(LatticeError):
        build_ambient(diagonal(2), 1)
    with pytest.raises(LatticeError):
        build_ambient(diagonal(-2, -2), 2)
    with pytest.raises(LatticeError):
        build_ambient(diagonal(2, 2, -2), 2)


def test_find_isotropic_examples():
    assert find_isotropic(lattice_U()).vector == (1, 0)
    assert find_isotropic(lattice_U()).radius == 1
    assert find_isotropic(diagonal(2, -2)).vector == (1, 1)
    res = find_isotropic(diagonal(1, -2), (1, 2, 4, 8))
    assert not res and res.radius == 8


def test_find_isotropic_against_box_oracle():
    rng = random.Random(3)
    for _ in range(40):
        rank = rng.choice([2, 3, 4])
        m = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            for j in range(i, rank):
                m[i][j] = m[j][i] = rng.randint(-5, 5)
        try:
            lat = gram_new(rank, m)
        except LatticeError:
            continue
        hits = box_isotropic(lat, 3)
        res = find_isotropic(lat, (3,))
        if hits:
            assert res.vector in hits
        else:
            assert not res


def test_numpy_and_python_paths_agree():
    rng = random.Random(11)
    for _ in range(30):
        lat = random_ns(rng, 4, even=False)
        g = lat.gram
        for supp in itertools.combinations(range(4), 3):
            free, last = supp[:-1], supp[-1]
            a = sorted(markman._support_hits_numpy(g, free, last, 3))
            b = sorted(markman._support_hits_python(g, free, last, 3))
            assert [(tuple(map(int, v)), x) for v, x in a] == b


def test_partner_examples():
    assert partner(lattice_U(), (1, 0)) == ((0, 1), 1)
    assert partner(diagonal(2, -2), (1, 1)) == ((1, 0), 2)
    assert partner(rescale(lattice_U(), 3), (1, 0)) == ((0, 1), 3)


def test_u_embedding_examples():
    c = u_embedding(lattice_U(), (1, 0))
    assert (c.k, c.m, c.B, c.gram2) == (1, 0, (0, 1), ((0, 1), (1, 0)))
    c = u_embedding(diagonal(2, -2), (1, 1))
    assert (c.k, c.F, c.m, c.B, c.gram2) == (2, (1, 0), 1, (1, -1), ((0, 4), (4, 0)))
    amb = build_ambient(diagonal(2, -2, -2, -2), 2).ambient
    c = u_embedding(amb, (1, 1, 0, 0, 0))
    assert c.k == 2 and c.verify(amb)
    assert c.to_json()["gram2"] == [[0, 4], [4, 0]]


def test_u_embedding_errors():
    with pytest.raises(LatticeError):
        u_embedding(lattice_U(), (0, 0))
    with pytest.raises(LatticeError):
        u_embedding(lattice_U(), (1, 1))
    with pytest.raises(LatticeError):
        u_embedding(lattice_U(), (2, 0))
    # odd lattice: F^2 odd, no integral m
    with pytest.raises(LatticeError):
        u_embedding(diagonal(1, -1), (1, 1))


def test_certificate_verify_detects_tampering():
    lat = diagonal(2, -2)
    c = u_embedding(lat, (1, 1))
    from dataclasses import replace
    assert not replace(c, k=1).verify(lat)
    assert not replace(c, B=(1, 1)).verify(lat)
    assert not replace(c, gram2=((0, 2), (2, 0))).verify(lat)


def test_theoremA_examples():
    v = theoremA_verdict(diagonal(2, -2, -2, -2), 2)
    assert v.certified and v.certificate.D == (1, 1, 0, 0, 0)
    v = theoremA_verdict(diagonal(2), 2)
    assert not v.certified and v.status.startswith("inconclusive")
    assert "rho < 4, theorem hypothesis unmet" in v.notes and "ambient definite" in v.notes
    ns = direct_sum(lattice_U(), diagonal(-2, -4))
    v = theoremA_verdict(ns, 2)
    assert v.certified and v.hypothesis_met and v.certificate.D == (1, 0, 0, 0, 0)
    j = v.to_json()
    assert j["schema"] == 1 and j["status"] == "twisted-moduli (certified)"


def test_theoremA_random_certificates_verify():
    rng = random.Random(2024)
    for _ in range(30):
        ns = random_ns(rng)
        n = rng.randint(2, 6)
        v = theoremA_verdict(ns, n)
        if v.certified:
            amb = build_ambient(ns, n).ambient
            assert v.certificate.verify(amb)
            d, b = v.certificate.D, v.certificate.B
            k = v.certificate.k
            assert pairing(amb, d, b) == k * k and pairing(amb, b, b) == 0
