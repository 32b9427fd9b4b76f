"""Shared test helpers: terse constructors, random generators, and the
brute-force minimum-cover oracle."""

from __future__ import annotations

import random
from itertools import combinations
from pathlib import Path

from fdkit import FD, AttributeSet, FDSet, Relation

LETTERS = tuple("ABCDEFGHIJ")

DATA_DIR = Path(__file__).parent / "data"


def fd(text: str) -> FD:
    lhs, _, rhs = text.partition("->")
    return FD(lhs, rhs)


def fdset(*texts: str, universe=None) -> FDSet:
    return FDSet([fd(t) for t in texts], universe=universe)


def load_relation(name: str) -> Relation:
    return Relation.from_csv((DATA_DIR / f"{name}.csv").read_text())


def random_subset(rng: random.Random, attrs, allow_empty: bool = True) -> AttributeSet:
    pool = list(AttributeSet(attrs))
    low = 0 if allow_empty else 1
    size = rng.randint(low, len(pool)) if pool else 0
    return AttributeSet(rng.sample(pool, size))


def random_fdset(
    rng: random.Random,
    universe,
    max_fds: int = 8,
    min_fds: int = 0,
    allow_empty_rhs: bool = False,
) -> FDSet:
    universe = AttributeSet(universe)
    pool = list(universe)
    fds = []
    for _ in range(rng.randint(min_fds, max_fds)):
        lhs = rng.sample(pool, rng.randint(1, min(3, len(pool))))
        low = 0 if allow_empty_rhs else 1
        rhs = rng.sample(pool, rng.randint(low, min(3, len(pool))))
        fds.append(FD(lhs, rhs))
    return FDSet(fds, universe=universe)


def exhaustive_minimum_cover_size(sigma: FDSet) -> int:
    """Smallest cover size by brute force, independent of minimum_cover.

    Any cover maps to one of equal or smaller size built from closed
    dependencies whose left side is minimal for its closure, so searching
    subsets of those candidates in increasing size finds the true minimum.
    """
    attrs = tuple(sigma.universe)
    subsets = []
    closures = {}
    for size in range(len(attrs) + 1):
        for combo in combinations(attrs, size):
            s = AttributeSet(combo)
            subsets.append(s)
            closures[s] = sigma.closure(s)
    candidates = []
    for s in subsets:
        cl = closures[s]
        if cl == s:
            continue
        if any(t < s and closures[t] == cl for t in subsets):
            continue
        candidates.append(FD(s, cl))
    for k in range(len(candidates) + 1):
        for combo in combinations(candidates, k):
            if FDSet(combo, universe=sigma.universe).equivalent(sigma):
                return k
    raise AssertionError(f"no cover found for {sigma}")
