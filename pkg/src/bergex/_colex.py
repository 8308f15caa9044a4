"""Colex ranking of r-subsets; bit i of an edge mask is the i-th r-set."""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

import numpy as np


@lru_cache(maxsize=None)
def binom_table(n: int, r: int) -> np.ndarray:
    t = np.zeros((n + 1, r + 2), dtype=np.int64)
    for a in range(n + 1):
        for b in range(r + 2):
            t[a, b] = comb(a, b)
    return t


def rank(edge) -> int:
    """Colex rank of a sorted vertex tuple."""
    return sum(comb(v, i + 1) for i, v in enumerate(edge))


@lru_cache(maxsize=None)
def rsets(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    """All r-subsets of range(n) in colex order."""
    return tuple(sorted(itertools.combinations(range(n), r), key=lambda e: e[::-1]))


@lru_cache(maxsize=None)
def rank_map(n: int, r: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(rsets(n, r))}


def mask_of(edges, n: int, r: int) -> int:
    idx = rank_map(n, r)
    m = 0
    for e in edges:
        m |= 1 << idx[tuple(e)]
    return m


def edges_of(mask: int, n: int, r: int) -> list[tuple[int, ...]]:
    sets = rsets(n, r)
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(sets[i])
        mask >>= 1
        i += 1
    return out


def bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1
