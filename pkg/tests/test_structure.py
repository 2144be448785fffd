import random

import numpy as np
import pytest

from classtwo.catalog import get_catalog, parse_relator
from classtwo.structure import (
    Presentation,
    RelationSubspace,
    quotient_map,
    wedge_dim,
    wedge_pairs,
    wedge_pos,
)

rng = random.Random(987654)


def rand_elt(P):
    return P.element(
        [rng.randrange(P.p) for _ in range(P.k)],
        [rng.randrange(P.p) for _ in range(P.m)],
    )


def test_wedge_indexing_is_a_bijection():
    for k in range(2, 8):
        positions = [wedge_pos(i, j, k) for i, j in wedge_pairs(k)]
        assert positions == list(range(wedge_dim(k)))


def test_quotient_map_free_rank_two():
    W = RelationSubspace.from_rows(2, 5, np.zeros((0, 1), dtype=np.int64))
    c = quotient_map(W)
    assert c.shape == (1, 1)
    assert c[0, 0] == 1


def test_quotient_map_two_relations():
    # k=3 with the pairs (a,c) and (b,c) trivial: only (a,b) survives
    k, p = 3, 7
    rows = np.zeros((2, 3), dtype=np.int64)
    rows[0, wedge_pos(0, 2, k)] = 1
    rows[1, wedge_pos(1, 2, k)] = 1
    W = RelationSubspace.from_rows(k, p, rows)
    c = quotient_map(W)
    assert c.shape == (3, 1)
    assert c[wedge_pos(0, 1, k), 0] == 1
    assert c[wedge_pos(0, 2, k), 0] == 0
    assert c[wedge_pos(1, 2, k), 0] == 0


def test_quotient_map_five_relations_single_survivor():
    cat = get_catalog()
    P = cat.instantiate("5.4.1", 3)
    assert P.m == 1
    nonzero = [pos for pos in range(wedge_dim(4)) if P.c[pos].any()]
    assert nonzero == [wedge_pos(0, 1, 4)]


@pytest.mark.parametrize("entry_id", ["3.2.1", "5.4.2", "6.4.4", "8.5.7", "Gp"])
@pytest.mark.parametrize("p", [3, 5])
def test_group_axioms(entry_id, p):
    P = get_catalog().instantiate(entry_id, p)
    e = P.identity()
    for _ in range(300):
        g, h, z = rand_elt(P), rand_elt(P), rand_elt(P)
        assert P.multiply(P.multiply(g, h), z) == P.multiply(g, P.multiply(h, z))
        assert P.multiply(g, e) == g and P.multiply(e, g) == g
        assert P.multiply(g, P.inverse(g)) == e
        assert P.multiply(P.inverse(g), g) == e


@pytest.mark.parametrize("entry_id,p", [("5.3.1", 3), ("6.4.4", 5), ("Gp", 5)])
def test_exponent_p_law(entry_id, p):
    P = get_catalog().instantiate(entry_id, p)
    for _ in range(200):
        g = rand_elt(P)
        assert P.power(g, p) == P.identity()
        assert P.power(g, 0) == P.identity()
        assert P.power(g, 2) == P.multiply(g, g)
        assert P.power(g, 3) == P.multiply(g, P.multiply(g, g))


@pytest.mark.parametrize("entry_id,p", [("6.4.4", 5), ("8.6.13", 3), ("Gp", 5)])
def test_commutator_equals_group_word(entry_id, p):
    P = get_catalog().instantiate(entry_id, p)
    for _ in range(300):
        g, h = rand_elt(P), rand_elt(P)
        word = P.multiply(P.multiply(P.inverse(g), P.inverse(h)), P.multiply(g, h))
        assert P.commutator(g, h) == word
        assert P.commutator(g, g) == P.identity()


def test_commutators_are_central():
    P = get_catalog().instantiate("7.4.6", 5)
    for _ in range(300):
        g, h, z = rand_elt(P), rand_elt(P), rand_elt(P)
        c = P.commutator(g, h)
        assert P.multiply(c, z) == P.multiply(z, c)


def test_generator_commutator_convention():
    # [a_i, a_j] for i < j is exactly the structure-tensor entry
    P = get_catalog().instantiate("3.2.1", 7)
    a, b = P.generator(0), P.generator(1)
    assert P.commutator(a, b).u == tuple(P.c[wedge_pos(0, 1, 2)] % 7)


def test_heisenberg_noncommutativity():
    P = get_catalog().instantiate("3.2.1", 3)
    a, b = P.generator(0), P.generator(1)
    assert P.multiply(a, b) != P.multiply(b, a)
    # g h = h g [g, h]
    assert P.multiply(P.multiply(b, a), P.commutator(a, b)) == P.multiply(a, b)


def test_omega_twisted_relation():
    # the twisted relation identifies commutator(d, c) with omega * commutator(b, a)
    cat = get_catalog()
    p = 5
    P = cat.instantiate("6.4.4", p)
    omega = cat.params(p).omega
    a, b, c, d = (P.generator(i) for i in range(4))
    assert P.commutator(d, c) == P.power(P.commutator(b, a), omega)


def test_inverse_of_generator():
    P = get_catalog().instantiate("6.4.3", 5)
    g = P.generator(0)
    inv = P.inverse(g)
    assert inv.x == (4, 0, 0, 0)
    assert not any(inv.u)


def test_all_relators_evaluate_to_identity():
    cat = get_catalog()
    for p in (3, 5):
        params = cat.params(p)
        for entry in list(cat) + [cat.gp]:
            P = cat.instantiate(entry.id, p)
            for text in entry.relators:
                vec = parse_relator(text, entry.k).resolve(params)
                assert not (vec @ P.c % p).any(), (entry.id, text, p)


def test_validate_catches_span_deficiency():
    # a structure tensor that is all zero with m = 1 must fail validation
    k, p = 3, 3
    rows = np.eye(3, dtype=np.int64)  # W = all of the exterior square
    W = RelationSubspace.from_rows(k, p, rows)
    P = Presentation.from_subspace(k, p, W)
    assert P.m == 0  # fully abelian quotient is fine
    bogus = Presentation(k=k, m=1, p=p, W=W, c=np.zeros((3, 1), dtype=np.int64),
                         _slabs=np.zeros((3, 1, 3), dtype=np.int64))
    diag = bogus.validate()
    assert not diag.ok


def test_validate_passes_catalog_entries():
    cat = get_catalog()
    for entry_id in ("3.2.1", "8.6.13", "Gp"):
        P = cat.instantiate(entry_id, 5)
        assert P.validate().ok
