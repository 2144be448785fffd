import random

import numpy as np
import pytest

from classtwo import modp, recipes
from classtwo.autos import (
    StabilizerChain,
    aut_order,
    closure_order,
    gl_generators,
    gl_order,
    schreier_sims_order,
    stabilizer_elements,
    stabilizer_order_backtrack,
    stabilizer_order_derived,
    stabilizer_order_orbit,
    stabilizes,
    wedge_square,
)
from classtwo.catalog import get_catalog
from classtwo.ffield import resolve_params

rng = random.Random(13579)


@pytest.fixture(scope="module")
def cat():
    return get_catalog()


def rand_mat(k, p):
    return np.array([[rng.randrange(p) for _ in range(k)] for _ in range(k)])


# -- exterior square ----------------------------------------------------------


def test_wedge_square_identity():
    for k in (2, 4, 6):
        assert (wedge_square(np.eye(k, dtype=np.int64), 5)
                == np.eye(k * (k - 1) // 2, dtype=np.int64)).all()


def test_wedge_square_rank_two_is_determinant():
    for _ in range(20):
        M = rand_mat(2, 7)
        det = (M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]) % 7
        W2 = wedge_square(M, 7)
        assert W2.shape == (1, 1) and W2[0, 0] == det


def test_wedge_square_diagonal():
    M = np.diag(np.array([2, 1, 1, 1], dtype=np.int64))
    W2 = wedge_square(M, 5)
    assert (np.diag(W2) == np.array([2, 2, 2, 1, 1, 1])).all()
    assert (W2 == np.diag(np.diag(W2))).all()


def test_wedge_square_functorial():
    for k in (3, 5, 7):
        for p in (3, 5):
            for _ in range(30):
                M, N = rand_mat(k, p), rand_mat(k, p)
                lhs = wedge_square(M @ N % p, p)
                rhs = wedge_square(M, p) @ wedge_square(N, p) % p
                assert (lhs == rhs).all()


def test_stabilizes_identity_and_recipe(cat):
    P = cat.instantiate("6.4.3", 3)
    assert stabilizes(np.eye(4, dtype=np.int64), P.W)
    for M in recipes.recipe_generators("6.4.3", 3):
        assert stabilizes(M, P.W)


def test_stabilizes_rejects_wrong_shape(cat):
    P = cat.instantiate("6.4.3", 3)
    # violates the zero pattern: mixes the two commutator blocks
    M = np.eye(4, dtype=np.int64)
    M[2, 0] = 1
    assert not stabilizes(M, P.W)


# -- Schreier-Sims ------------------------------------------------------------


def test_schreier_sims_trivial():
    assert schreier_sims_order([np.eye(3, dtype=np.int64)], 5, 3) == 1


def test_schreier_sims_gl2_pair():
    omega = resolve_params(3).omega
    gens = [
        np.array([[omega, 0], [0, 1]]),
        np.array([[-1, 1], [-1, 0]]),
    ]
    assert schreier_sims_order(gens, 3, 2) == 48
    assert closure_order(gens, 3) == 48


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("p", [3, 5])
def test_gl_generators_generate(k, p):
    assert schreier_sims_order(gl_generators(k, p), p, k) == gl_order(k, p)


def test_schreier_sims_matches_closure_on_random_subgroups():
    for _ in range(5):
        gens = []
        while len(gens) < 2:
            M = rand_mat(3, 3)
            if modp.is_invertible(M, 3):
                gens.append(M)
        assert schreier_sims_order(gens, 3, 3) == closure_order(gens, 3)


def test_chain_membership():
    chain = StabilizerChain(2, 5)
    omega = resolve_params(5).omega
    chain.add(np.array([[omega, 0], [0, 1]]))
    chain.add(np.array([[-1, 1], [-1, 0]]))
    assert chain.order() == gl_order(2, 5)
    assert chain.contains(np.array([[2, 3], [1, 4]]))


def test_schreier_sims_section_examples(cat):
    # the three worked matrix groups and their stated orders
    for p in (3, 5, 7):
        prm = resolve_params(p)
        ex1 = recipes.recipe_generators("5.4.1", p, prm)
        assert schreier_sims_order(ex1, p, 4) == (p**2 - 1) ** 2 * (p**2 - p) ** 2 * p**4
        ex3 = recipes.recipe_generators("6.4.3", p, prm)
        assert schreier_sims_order(ex3, p, 4) == (p - 1) * (p**2 - 1) * (p**2 - p) * p**4


# -- stabilizer order methods -------------------------------------------------


def test_backtrack_free_case(cat):
    r = stabilizer_order_backtrack(cat.instantiate("3.2.1", 3))
    assert r.order == 48 and r.method == "FREE"
    r = stabilizer_order_backtrack(cat.instantiate("6.3.1", 3))
    assert r.order == gl_order(3, 3)


@pytest.mark.parametrize(
    "entry_id", ["4.3.1", "5.4.2", "6.4.3", "7.4.4", "8.4.3", "8.5.9", "8.5.16"]
)
def test_backtrack_matches_formula(cat, entry_id):
    P = cat.instantiate(entry_id, 3)
    r = stabilizer_order_backtrack(P)
    assert r.order == cat.expected_B_order(entry_id, 3)


@pytest.mark.parametrize("entry_id", ["4.3.1", "6.4.4", "7.4.3", "8.4.2"])
def test_orbit_agrees_with_backtrack(cat, entry_id):
    P = cat.instantiate(entry_id, 3)
    ro = stabilizer_order_orbit(P)
    rb = stabilizer_order_backtrack(P)
    assert ro.order == rb.order
    assert ro.method == "ORBIT"
    assert gl_order(P.k, 3) % ro.nodes == 0  # orbit size divides |GL|


def test_orbit_free_case(cat):
    r = stabilizer_order_orbit(cat.instantiate("3.2.1", 5))
    assert r.order == gl_order(2, 5) and r.nodes == 0


def test_backtrack_small_primes_small_rank(cat):
    for entry_id in ("5.4.1", "7.4.6", "8.4.4"):
        for p in (5, 7):
            P = cat.instantiate(entry_id, p)
            assert stabilizer_order_backtrack(P).order == cat.expected_B_order(entry_id, p)


def test_enumeration_matches_count_and_is_closed(cat):
    for entry_id in ("7.4.5", "8.5.9", "8.5.15"):
        P = cat.instantiate(entry_id, 3)
        elements = stabilizer_elements(P)
        assert len(elements) == stabilizer_order_backtrack(P).order
        index = {M.tobytes() for M in elements}
        sample = elements if len(elements) <= 60 else elements[:: len(elements) // 50]
        for M in sample:
            assert stabilizes(M, P.W)
            assert modp.mat_inv(M, 3).tobytes() in index
            for N in sample[:10]:
                assert (M @ N % 3).tobytes() in index


def test_aut_order_scaling(cat):
    P = cat.instantiate("4.3.1", 3)
    r = stabilizer_order_backtrack(P)
    assert aut_order(P, r) == cat.aut_formula_eval("4.3.1", 3)


# -- derived split ------------------------------------------------------------


def test_derived_matches_backtrack_small(cat):
    # cross-validate the derived split against the row backtrack on an
    # ordinary catalog entry with a rank-2 derived group
    P = cat.instantiate("6.4.3", 3)
    rd = stabilizer_order_derived(P)
    rb = stabilizer_order_backtrack(P)
    assert rd.order == rb.order
    assert rd.method == "DERIVED"


def test_gp_stabilizer_p5(cat):
    P = cat.instantiate("Gp", 5)
    r = stabilizer_order_derived(P)
    assert r.order == 1920
    assert r.order == cat.expected_B_order("Gp", 5)


# -- recipes ------------------------------------------------------------------


def test_recipe_unavailable():
    with pytest.raises(recipes.RecipeUnavailable):
        recipes.recipe_generators("3.2.1", 3)


def test_recipe_ids_cover_required_entries():
    required = {"5.4.1", "6.4.3", "6.4.4", "7.5.6", "8.5.7", "8.5.9",
                "8.5.12", "8.5.14", "8.6.14"}
    assert required <= set(recipes.recipe_ids())


@pytest.mark.parametrize("entry_id", ["5.4.1", "6.4.3", "8.5.9"])
@pytest.mark.parametrize("p", [3, 5])
def test_recipe_matrices_stabilize(cat, entry_id, p):
    P = cat.instantiate(entry_id, p)
    for M in recipes.recipe_generators(entry_id, p):
        assert modp.is_invertible(M, p)
        assert stabilizes(M, P.W)


@pytest.mark.parametrize(
    "entry_id,p",
    [("5.4.1", 3), ("6.4.3", 3), ("6.4.4", 3), ("8.5.9", 3), ("8.5.9", 5),
     ("8.5.12", 3), ("8.5.14", 3)],
)
def test_recipe_generates_full_stabilizer(cat, entry_id, p):
    entry = cat.entry(entry_id)
    gens = recipes.recipe_generators(entry_id, p)
    got = schreier_sims_order(gens, p, entry.k)
    assert got == cat.expected_B_order(entry_id, p)


def test_recipe_8_5_9_uses_special_matrix_at_p3(cat):
    gens3 = recipes.recipe_generators("8.5.9", 3)
    frac_free = all(int(v) in range(3) for M in gens3 for v in M.flat)
    assert frac_free
    # and the dedicated matrix appears verbatim
    special = np.array(
        [[1, 0, 1, 0, 1], [0, 1, 0, 0, 2], [0, 0, 1, 0, 2],
         [0, 2, 2, 1, 1], [0, 0, 0, 0, 1]], dtype=np.int64
    )
    assert any((M == special).all() for M in gens3)
