"""k-Markov distances, numbers, the Vieta tree and the boundary sequences.

There are two independent routes to ``m^(k)_{q/p}``: counting ideals of the
lattice fence poset (:func:`markov_number`), and descending the Vieta tree
with exact divisions (:func:`markov_via_tree`).
"""
from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import ConsistencyError, InvalidInputError
from .ideal_count import count_ideals_dp
from .lattice_poset import relation_word


@dataclass(frozen=True, order=True)
class FareyLabel:
    """The fraction ``q/p``; ``1/0`` is allowed as the tree boundary."""

    q: int
    p: int

    def __post_init__(self):
        if self.p < 0 or math.gcd(self.q, self.p) != 1:
            raise InvalidInputError(f"{self.q}/{self.p} is not a reduced label")

    def mediant(self, other: FareyLabel) -> FareyLabel:
        return FareyLabel(self.q + other.q, self.p + other.p)

    def __str__(self):
        return f"{self.q}/{self.p}"


@dataclass(frozen=True)
class MarkovTriple:
    x: int
    y: int
    z: int
    label: tuple[FareyLabel, FareyLabel, FareyLabel]

    def residual(self, k: int) -> int:
        return markov_residual(self.x, self.y, self.z, k)


class SequenceKind(enum.Enum):
    FIB = "fib"  # m_{1/n}
    PELL = "pell"  # m_{n/(n+1)}
    EDGE0 = "edge0"  # m_{(n,0)}
    EDGE1 = "edge1"  # m_{(n,n)}


def markov_residual(x: int, y: int, z: int, k: int) -> int:
    """Zero exactly when ``(x, y, z)`` solves the k-Markov equation."""
    return x * x + y * y + z * z + k * (x * y + x * z + y * z) - (3 + 3 * k) * x * y * z


@lru_cache(maxsize=65536)
def _count(dx: int, dy: int, k: int) -> int:
    return count_ideals_dp(relation_word((dx, dy), k))


def distance(a: Sequence[int], b: Sequence[int], k: int) -> int:
    """k-Markov distance ``|AB|_k``.

    ``|AA|_k`` is 0 by convention even though the empty poset has one ideal;
    this is what makes the multiple recurrence start from 0.
    """
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx == 0 and dy == 0:
        return 0
    return _count(dx, dy, k)


def markov_number(p: int, q: int, k: int) -> int:
    if p == 0 and q == 0:
        raise InvalidInputError("m_(0,0) is undefined; use distance() for the convention value")
    return _count(p, q, k)


def _jump(a: int, b: int, c: int, k: int) -> int:
    num = a * a + k * a * b + b * b
    quo, rem = divmod(num, c)
    if rem:
        raise ConsistencyError(f"Vieta jump ({a},{b};{c}) at k={k} is not exact")
    return quo


def _children(node: MarkovTriple, k: int) -> list[MarkovTriple]:
    (lo, mid, hi), (a, b, c) = node.label, (node.x, node.y, node.z)
    left = MarkovTriple(a, _jump(a, b, c, k), b, (lo, lo.mediant(mid), mid))
    right = MarkovTriple(b, _jump(b, c, a, k), c, (mid, mid.mediant(hi), hi))
    return [t for t in (left, right) if 0 <= t.label[1].q <= t.label[1].p]


def _seed(k: int) -> tuple[MarkovTriple, MarkovTriple]:
    root = MarkovTriple(1, 1, 1, (FareyLabel(-1, 1), FareyLabel(0, 1), FareyLabel(1, 0)))
    (top,) = _children(root, k)
    return root, top


def vieta_tree(k: int, depth: int) -> list[MarkovTriple]:
    """Breadth-first k-Markov triples with their Farey labels.

    Depth is measured in the Farey tree of ``[0, 1]``: the triple labelled
    ``(0/1, 1/1, 1/0)`` sits at depth 0 and the seed ``(1, 1, 1)`` is always
    included, so depth 3 gives the nine triples of the classical picture.
    """
    if depth < 0:
        raise InvalidInputError("depth must be nonnegative")
    root, top = _seed(k)
    out = [root]
    frontier = deque([(top, 0)])
    while frontier:
        node, level = frontier.popleft()
        if node.residual(k) != 0:
            raise ConsistencyError(f"{node} does not satisfy the k={k} equation")
        out.append(node)
        if level < depth:
            frontier.extend((child, level + 1) for child in _children(node, k))
    return out


def markov_via_tree(label: FareyLabel, k: int) -> int:
    """Middle entry of the triple labelled ``q/p``, found by mediant descent."""
    q, p = label.q, label.p
    if not 0 <= q <= p or p == 0:
        raise InvalidInputError(f"label {label} lies outside [0, 1]")
    root, node = _seed(k)
    if q == 0:
        return root.y
    target = Fraction(q, p)
    while True:
        mid = node.label[1]
        here = Fraction(mid.q, mid.p)
        if here == target:
            return node.y
        lo, _, hi = node.label
        a, b, c = node.x, node.y, node.z
        if target < here:
            node = MarkovTriple(a, _jump(a, b, c, k), b, (lo, lo.mediant(mid), mid))
        else:
            node = MarkovTriple(b, _jump(b, c, a, k), c, (mid, mid.mediant(hi), hi))


def named_sequence(kind: SequenceKind, k: int, n: int) -> int:
    """Boundary sequences from their linear recurrences."""
    if n < 0:
        raise InvalidInputError("n must be nonnegative")
    beta = 3 * k * k + 8 * k + 6
    if kind is SequenceKind.FIB:
        init, mult, shift = (1, k + 2), 2 * k + 3, k
    elif kind is SequenceKind.PELL:
        init, mult, shift = (1, 2 * k * k + 6 * k + 5), beta, k * (k + 2)
    elif kind is SequenceKind.EDGE0:
        init, mult, shift = (0, 1), 2 * k + 3, 0
    else:
        init, mult, shift = (0, k + 2), beta, 0
    prev, cur = init
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, mult * cur - prev - shift
    return cur


def _base_value(p: int, q: int, k: int) -> int:
    if 0 <= q <= p:
        return markov_via_tree(FareyLabel(q, p), k)
    return markov_number(p, q, k)


def multiple_recurrence(p: int, q: int, k: int, n: int) -> int:
    """``m_(np, nq)`` from ``m_0 = 0``, ``m_1 = m_(p,q)`` and the trace ``(3+3k)m - k``."""
    if (p, q) == (0, 0) or math.gcd(p, q) != 1:
        raise InvalidInputError(f"({p},{q}) is not primitive")
    if n < 0:
        raise InvalidInputError("n must be nonnegative")
    base = _base_value(p, q, k)
    eta = (3 + 3 * k) * base - k
    prev, cur = 0, base
    if n == 0:
        return 0
    for _ in range(n - 1):
        prev, cur = cur, eta * cur - prev
    return cur


def multiple_closed_form(p: int, q: int, k: int, n: int) -> float:
    """Float evaluation of the Binet-type formula; overflows to ``inf``."""
    if (p, q) == (0, 0) or math.gcd(p, q) != 1:
        raise InvalidInputError(f"({p},{q}) is not primitive")
    base = float(_base_value(p, q, k))
    eta = (3 + 3 * k) * base - k
    root = math.sqrt(eta * eta - 4)
    try:
        return base / root * (((eta + root) / 2) ** n - ((eta - root) / 2) ** n)
    except OverflowError:
        return math.inf
