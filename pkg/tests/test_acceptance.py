"""Acceptance suite: one test per criterion, all exact unless stated."""

import itertools
import json
import random

import pytest

from hassett.cli import main
from hassett.conditions import (cond_dagger, cond_hilb, cond_moduli, cond_star, cond_twisted,
                                implication_violations, verdict)
from hassett.fixtures import H2, two_planes, veronese_scroll
from hassett.forms import BinaryForm, TernaryForm, chevalley_solve, represents
from hassett.labels import disc_rank4, enumerate_labels_rank3, gram_rank4, twisted_obstruction
from hassett.lattice import (LatticeError, determinant, diagonal, gram_new, k3n_lattice,
                             label_discriminant, lattice_U, mukai_lattice, cubic_H4, signature)
from hassett.markman import build_ambient, theoremA_verdict, u_embedding

criterion = pytest.mark.criterion


@criterion(1, "condition table for d = 8, 12, 14, 18, 20, 200")
def test_c01_condition_table():
    assert (cond_star(8), cond_moduli(8), cond_twisted(8)) == (True, False, True)
    assert cond_twisted(12) is False
    h = cond_hilb(14)
    assert h.satisfied and (h.k, h.a) == (2, 1)
    assert (cond_moduli(18), cond_twisted(18)) == (False, True)
    assert cond_dagger(20) is True
    assert cond_twisted(200) is True


@criterion(2, "implication chain on [7, 10000], a_max = 100")
def test_c02_implication_chain():
    assert implication_violations(7, 10000, 100) == []


@criterion(3, "Veronese + cubic scroll fixture")
def test_c03_veronese_scroll():
    q = BinaryForm(3, 0, 5)
    assert represents(q, 2) is None
    assert represents(q, 7) is None
    assert represents(q, 8) == (1, 1)
    assert label_discriminant(veronese_scroll(), H2, (1, 1, 1)) == 32
    assert verdict(32).twisted is True


@criterion(4, "two disjoint planes give label 14")
def test_c04_two_planes():
    g = two_planes()
    assert label_discriminant(g, H2, (2, -1, -1)) == 14
    assert label_discriminant(g, H2, (1, 1, 1)) == 14


@criterion(5, "C20 & C60: every label fails, p = 5 certificate")
def test_c05_c20_c60():
    labels = enumerate_labels_rank3(20, 60, bound=50)
    assert labels and all(not cond_twisted(w.d) for w in labels)
    cert = twisted_obstruction(20, 60)
    assert cert is not None and cert.p == 5 and cert.verify()
    assert len(cert.table.rows) == 24
    assert all(val % 5 != 0 for _, _, val in cert.table.rows)


@criterion(6, "(60,180) certified, (20,180) not, label 200 present")
def test_c06_remarks():
    assert twisted_obstruction(60, 180).p == 5
    assert twisted_obstruction(20, 180) is None
    by_d = {w.d: w for w in enumerate_labels_rank3(20, 180, 3)}
    assert 200 in by_d and cond_twisted(200)


@criterion(7, "rank-4 discriminant formulas equal Gram determinants")
def test_c07_rank4_discriminants():
    star = [d for d in range(1, 51) if cond_star(d)]
    for t in itertools.product(star, repeat=3):
        assert disc_rank4(*t) == determinant(gram_rank4(*t)), t
    assert disc_rank4(12, 18, 24) == 576
    assert disc_rank4(12, 8, 14) == 148
    assert disc_rank4(8, 8, 8) == 54


@criterion(8, "Chevalley-Warning solver: 50 random forms x primes < 50")
def test_c08_chevalley():
    rng = random.Random(8)
    primes = [p for p in range(2, 50) if all(p % q for q in range(2, p))]
    failures = 0
    for _ in range(50):
        q = TernaryForm(*(rng.randint(-1000, 1000) for _ in range(6)))
        for p in primes:
            v = chevalley_solve(q, p)
            if not any(x % p for x in v) or q(*v) % p:
                failures += 1
    assert failures == 0


def _random_ns(rng):
    # NS lattices are even, so diagonal entries are drawn even
    while True:
        m = [[0] * 4 for _ in range(4)]
        for i in range(4):
            for j in range(i, 4):
                x = rng.randint(-6, 6)
                m[i][j] = m[j][i] = 2 * (x // 2) if i == j else x
        try:
            lat = gram_new(4, m)
        except LatticeError:
            continue
        if signature(lat) == (1, 3, 0):
            return lat


@criterion(9, "isotropic engine: >= 95% certified, all certificates re-verify")
def test_c09_theorem_a():
    rng = random.Random(9)
    certified = 0
    for _ in range(100):
        ns = _random_ns(rng)
        n = rng.randint(2, 6)
        v = theoremA_verdict(ns, n, (1, 2, 4, 8, 16, 30))
        if v.certified:
            certified += 1
            k = v.certificate.k
            assert v.certificate.verify(build_ambient(ns, n).ambient)
            assert v.certificate.gram2 == ((0, k * k), (k * k, 0))
    assert certified >= 95
    u = theoremA_verdict(lattice_U(), 2)
    assert u.certified and u.certificate.k == 1
    c = u_embedding(diagonal(2, -2), (1, 1))
    assert c.k == 2 and c.verify(diagonal(2, -2))


@criterion(10, "signatures and determinants of the standard lattices")
def test_c10_lattice_constants():
    m = mukai_lattice()
    assert signature(m) == (4, 20, 0) and abs(determinant(m)) == 1
    for n in range(2, 21):
        lat = k3n_lattice(n)
        assert signature(lat) == (3, 20, 0) and abs(determinant(lat)) == 2 * n - 2
    assert signature(cubic_H4()) == (21, 2, 0)


@criterion(11, "examples command: 20/44 row flagged, golden file matches")
def test_c11_examples_flag(capsys):
    code = main(["examples", "--format", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    row = next(r for r in out["rows"] if r["name"] == "ex_20_44")
    assert row["status"] == "FLAG"
    case = next(c for c in row["detail"]["cases"] if (c["y"], c["z"]) == (1, 1))
    assert case["quoted"] == 64
    assert set(case["formula_values"]) == {62, 66}
