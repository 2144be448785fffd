"""Standalone property suites, runnable via the `selftest` CLI command.

Each suite prints one pass/fail line; the runner returns the failure count.
All randomness is seeded, so runs are reproducible.
"""

from __future__ import annotations

import random

import numpy as np

from classtwo import autos, modp, recipes
from classtwo.catalog import Catalog
from classtwo.structure import Presentation

SAMPLE_ENTRIES = ("3.2.1", "4.3.1", "5.4.2", "6.4.4", "7.5.6", "8.5.9", "8.6.13", "Gp")


def _random_element(P: Presentation, rng: random.Random):
    return P.element(
        [rng.randrange(P.p) for _ in range(P.k)],
        [rng.randrange(P.p) for _ in range(P.m)],
    )


def _suite_group_laws(catalog: Catalog, rng: random.Random, n: int) -> list[str]:
    bad = []
    for entry_id in SAMPLE_ENTRIES:
        for p in (3, 5):
            P = catalog.instantiate(entry_id, p)
            for _ in range(n):
                g, h, z = (_random_element(P, rng) for _ in range(3))
                if P.multiply(P.multiply(g, h), z) != P.multiply(g, P.multiply(h, z)):
                    bad.append(f"associativity {entry_id} p={p}")
                    break
                if P.multiply(g, P.identity()) != g or P.multiply(P.identity(), g) != g:
                    bad.append(f"identity {entry_id} p={p}")
                    break
                if P.multiply(g, P.inverse(g)) != P.identity():
                    bad.append(f"inverse {entry_id} p={p}")
                    break
    return bad


def _suite_exponent(catalog: Catalog, rng: random.Random, n: int) -> list[str]:
    bad = []
    for entry_id in SAMPLE_ENTRIES:
        for p in (3, 5):
            P = catalog.instantiate(entry_id, p)
            for _ in range(n):
                g = _random_element(P, rng)
                if P.power(g, p) != P.identity():
                    bad.append(f"exponent law {entry_id} p={p}")
                    break
                if P.power(g, 2) != P.multiply(g, g):
                    bad.append(f"square law {entry_id} p={p}")
                    break
    return bad


def _suite_commutators(catalog: Catalog, rng: random.Random, n: int) -> list[str]:
    bad = []
    for entry_id in SAMPLE_ENTRIES:
        for p in (3, 5):
            P = catalog.instantiate(entry_id, p)
            for _ in range(n):
                g, h, z = (_random_element(P, rng) for _ in range(3))
                word = P.multiply(
                    P.multiply(P.inverse(g), P.inverse(h)), P.multiply(g, h)
                )
                if P.commutator(g, h) != word:
                    bad.append(f"commutator formula {entry_id} p={p}")
                    break
                c = P.commutator(g, h)
                if P.multiply(c, z) != P.multiply(z, c):
                    bad.append(f"commutator centrality {entry_id} p={p}")
                    break
    return bad


def _suite_relators(catalog: Catalog) -> list[str]:
    """Every defining relator evaluates to the identity in its group."""
    from classtwo.catalog import parse_relator

    bad = []
    for entry in list(catalog) + [catalog.gp]:
        for p in (3, 5):
            P = catalog.instantiate(entry.id, p)
            params = catalog.params(p)
            for text in entry.relators:
                vec = parse_relator(text, entry.k).resolve(params)
                img = vec @ P.c % p
                if img.any():
                    bad.append(f"relator {text!r} of {entry.id} nontrivial at p={p}")
    return bad


def _suite_wedge(rng: random.Random, n: int) -> list[str]:
    bad = []
    for k in range(3, 8):
        for p in (3, 5):
            for _ in range(n):
                M = np.array(
                    [[rng.randrange(p) for _ in range(k)] for _ in range(k)]
                )
                N = np.array(
                    [[rng.randrange(p) for _ in range(k)] for _ in range(k)]
                )
                lhs = autos.wedge_square(M @ N % p, p)
                rhs = autos.wedge_square(M, p) @ autos.wedge_square(N, p) % p
                if not (lhs == rhs).all():
                    bad.append(f"wedge functoriality k={k} p={p}")
                    break
    return bad


def _suite_chain_vs_closure(catalog: Catalog) -> list[str]:
    bad = []
    checks = [
        ("6.4.3", 3),  # order 7776
        ("8.5.9", 3),  # order 48
        ("8.5.12", 3),  # order 648
        ("8.5.14", 3),  # order 288
    ]
    for entry_id, p in checks:
        gens = recipes.recipe_generators(entry_id, p, catalog.params(p))
        ss = autos.schreier_sims_order(gens, p, catalog.entry(entry_id).k)
        closure = autos.closure_order(gens, p)
        if ss != closure:
            bad.append(f"chain vs closure {entry_id} p={p}: {ss} != {closure}")
    pair = autos.gl_generators(2, 5)
    if autos.schreier_sims_order(pair, 5, 2) != autos.closure_order(pair, 5):
        bad.append("chain vs closure GL(2,5)")
    return bad


def _suite_lagrange(catalog: Catalog) -> list[str]:
    bad = []
    for entry_id in ("4.3.1", "6.4.2", "7.4.5", "8.4.3", "8.5.16"):
        entry = catalog.entry(entry_id)
        P = catalog.instantiate(entry_id, 3)
        order = autos.stabilizer_order_backtrack(P).order
        if autos.gl_order(entry.k, 3) % order:
            bad.append(f"Lagrange failure {entry_id}")
    return bad


def run(catalog: Catalog, quick: bool = False, echo=print) -> int:
    rng = random.Random(20260810)
    n = 100 if quick else 1000
    n_wedge = 40 if quick else 200
    suites = [
        ("group laws (associativity, identity, inverses)",
         lambda: _suite_group_laws(catalog, rng, n)),
        ("exponent-p and power laws", lambda: _suite_exponent(catalog, rng, n)),
        ("commutator word vs bilinear form, centrality",
         lambda: _suite_commutators(catalog, rng, n)),
        ("defining relators evaluate to the identity",
         lambda: _suite_relators(catalog)),
        ("exterior-square functoriality", lambda: _suite_wedge(rng, n_wedge)),
        ("stabilizer chain vs naive closure", lambda: _suite_chain_vs_closure(catalog)),
        ("stabilizer orders divide |GL(k,p)|", lambda: _suite_lagrange(catalog)),
    ]
    failures = 0
    for name, suite in suites:
        problems = suite()
        if problems:
            failures += 1
            echo(f"FAIL {name}: {problems[:3]}")
        else:
            echo(f"PASS {name}")
    return failures
