"""Counting order ideals of fence and circular posets.

Three routes that share no code: the continued-fraction numerator of the
shape, a two-state transfer pass over the relation word, and plain subset
enumeration of the materialized poset (the ground-truth oracle).
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import InvalidInputError, OracleCapacityError
from .lattice_poset import DOWN, CircularPoset, FencePosetExplicit, RelationWord, Shape, oracle_cap


def cf_numerator(terms: Sequence[int]) -> int:
    """Numerator of ``[a_1, ..., a_n]`` in lowest terms."""
    if not terms:
        raise InvalidInputError("continued fraction needs at least one term")
    if any(a < 1 for a in terms):
        raise InvalidInputError(f"continued fraction terms must be positive, got {list(terms)}")
    prev, cur = 1, terms[0]
    for a in terms[1:]:
        prev, cur = cur, a * cur + prev
    return cur


def count_ideals(shape: Shape) -> int:
    if not shape.runs:
        return 1
    *head, last = shape.runs
    return cf_numerator([*head, last + 1])


def _transfer(directions: str, n0: int, n1: int) -> tuple[int, int]:
    # (n0, n1): ideals of the prefix with the current element out / in
    for letter in directions:
        if letter == DOWN:
            n0, n1 = n0, n0 + n1
        else:
            n0, n1 = n0 + n1, n1
    return n0, n1


def count_ideals_dp(word: RelationWord) -> int:
    if word.is_empty:
        return 1
    return sum(_transfer(word.directions, 1, 1))


def count_ideals_circular(cp: CircularPoset) -> int:
    """Ideals of a fence closed by ``last < first``.

    Pins the first element, runs the transfer pass, and drops the states
    where the first element is in but the last one is out.
    """
    word = cp.word
    if word.element_count <= 1:
        return word.element_count + 1
    out_n0, out_n1 = _transfer(word.directions, 1, 0)
    _, in_n1 = _transfer(word.directions, 0, 1)
    return out_n0 + out_n1 + in_n1


_CHUNK_BITS = 20


def brute_force_count(poset: FencePosetExplicit, cap: int | None = None) -> int:
    """Count down-closed subsets by enumerating all ``2**size`` of them."""
    cap = oracle_cap() if cap is None else cap
    n = poset.size
    if n > cap:
        raise OracleCapacityError(f"{n} elements exceeds the oracle cap of {cap}")
    if n == 0:
        return 1
    total = 0
    chunk = 1 << min(n, _CHUNK_BITS)
    for start in range(0, 1 << n, chunk):
        masks = np.arange(start, start + chunk, dtype=np.uint64)
        bits = [((masks >> np.uint64(i)) & np.uint64(1)).astype(bool) for i in range(n)]
        bad = np.zeros(chunk, dtype=bool)
        for lower, upper in poset.covers:
            bad |= bits[upper - 1] & ~bits[lower - 1]
        total += chunk - int(np.count_nonzero(bad))
    return total
