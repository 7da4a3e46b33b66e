"""Shared test instances and brute-force oracles."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache

from multiplier_ideals import (
    DualGraph,
    Divisor,
    EnriquesCluster,
    ResolutionData,
    cluster_to_resolution,
    monomial_resolution,
)

MONOMIAL_PAIRS = [(1, 1), (1, 4), (2, 2), (2, 3), (2, 5), (3, 4), (3, 10), (4, 6), (5, 7)]


def random_cluster(rng: random.Random, n: int) -> EnriquesCluster:
    """A consistent cluster: free or satellite points, multiplicities forced by proximity."""
    prox: list[tuple[int, ...]] = [()]
    used: set[tuple[int, int]] = set()
    for i in range(1, n):
        parent = rng.randrange(i)
        options = [
            (j, parent) for j in prox[parent] if (j, parent) not in used
        ]
        if options and rng.random() < 0.5:
            pair = rng.choice(options)
            used.add(pair)
            prox.append(pair)
        else:
            prox.append((parent,))
    mult = [0] * n
    for j in reversed(range(n)):
        children = [i for i in range(n) if j in prox[i]]
        excess = rng.randint(0, 2)
        if not children:
            excess = max(1, excess)
        mult[j] = sum(mult[i] for i in children) + excess
    return EnriquesCluster(tuple(mult), tuple(prox))


@lru_cache(maxsize=None)
def random_resolutions(count: int = 100, seed: int = 20240611) -> tuple[ResolutionData, ...]:
    rng = random.Random(seed)
    return tuple(
        cluster_to_resolution(random_cluster(rng, rng.randint(1, 12))) for _ in range(count)
    )


def _singular(self_int, edges, F) -> ResolutionData:
    return ResolutionData.from_graph(DualGraph(tuple(self_int), tuple(edges)), Divisor.of(F))


@lru_cache(maxsize=None)
def singular_instances() -> tuple[ResolutionData, ...]:
    """Maximal ideals of a few rational surface singularities (F = fundamental cycle)."""
    out = []
    for n in (1, 2, 4):
        out.append(_singular([-2] * n, [(i, i + 1) for i in range(n - 1)], [1] * n))
    out.append(_singular([-2] * 4, [(0, 1), (0, 2), (0, 3)], [2, 1, 1, 1]))
    out.append(_singular([-3], [], [1]))
    out.append(_singular([-3, -2, -2, -2], [(0, 1), (0, 2), (0, 3)], [1, 1, 1, 1]))
    return tuple(out)


@lru_cache(maxsize=None)
def example_3_10() -> ResolutionData:
    return monomial_resolution(3, 10)


@lru_cache(maxsize=None)
def corpus(random_count: int = 30) -> tuple[ResolutionData, ...]:
    """Monomial, random-cluster and singular instances."""
    mono = tuple(monomial_resolution(a, b) for a, b in MONOMIAL_PAIRS)
    return mono + random_resolutions()[:random_count] + singular_instances()


def staircase_codim(a: int, b: int) -> int:
    """#{(i, j) >= 0 : i/a + j/b < 1}."""
    return sum(1 for i in range(a) for j in range(b) if b * i + a * j < a * b)


def monomial_multiplicity(c: Fraction, a: int, b: int) -> int:
    """Jump of the multiplier ideals of (x^a, y^b) at c, counted on lattice points."""
    return sum(
        1
        for p in range(1, math.floor(c * a) + 1)
        for q in range(1, math.floor(c * b) + 1)
        if Fraction(p, a) + Fraction(q, b) == c
    )


def monomial_spectrum(a: int, b: int) -> dict[Fraction, int]:
    """Spectrum of x^a + y^b."""
    out: dict[Fraction, int] = {}
    for p in range(1, a):
        for q in range(1, b):
            c = Fraction(p, a) + Fraction(q, b)
            out[c] = out.get(c, 0) + 1
    return out
