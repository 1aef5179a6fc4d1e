"""Fence posets of perturbed lattice segments.

The lattice consists of the unit segments on the lines ``x = i``, ``y = j``
and ``x + y = m``.  A straight segment from the origin to ``delta`` is pushed
infinitesimally to its left around every half-integral point it meets, and
the resulting sequence of crossings is read off as a fence poset.

A fence poset on ``h`` elements is stored as a :class:`RelationWord`: a string
over ``"U"``/``"D"`` of length ``h - 1``.  Letter ``i`` relates element ``i``
to element ``i + 1``; ``"D"`` means element ``i`` covers element ``i + 1``.

Everything here uses exact integer and :class:`fractions.Fraction`
arithmetic, since midpoint ties have to be decided exactly.
"""
from __future__ import annotations

import enum
import functools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import (
    ConsistencyError,
    InvalidInputError,
    NormalFormError,
    OracleCapacityError,
)

UP = "U"
DOWN = "D"
_FLIP = str.maketrans("UD", "DU")

DEFAULT_ORACLE_CAP = 25


class LatticePoint(NamedTuple):
    x: int
    y: int

    def shift(self, dx: int, dy: int) -> LatticePoint:
        return LatticePoint(self.x + dx, self.y + dy)


class Family(enum.Enum):
    HORIZONTAL = (1, 0)
    VERTICAL = (0, 1)
    DIAGONAL = (1, -1)


@dataclass(frozen=True)
class UnitSegment:
    family: Family
    anchor: LatticePoint

    @property
    def endpoints(self) -> tuple[LatticePoint, LatticePoint]:
        dx, dy = self.family.value
        return self.anchor, self.anchor.shift(dx, dy)


class ChainDir(enum.Enum):
    DESCENDING = DOWN
    ASCENDING = UP


@dataclass(frozen=True)
class Crossing:
    segment: UnitSegment
    t: Fraction
    detour_rank: int
    chain_dir: ChainDir

    @property
    def order_key(self) -> tuple[Fraction, int]:
        return (self.t, self.detour_rank)


@dataclass(frozen=True)
class RelationWord:
    directions: str
    element_count: int

    def __post_init__(self):
        if set(self.directions) - {UP, DOWN}:
            raise InvalidInputError(f"bad relation letters in {self.directions!r}")
        if self.element_count == 0:
            if self.directions:
                raise InvalidInputError("the empty poset has no relations")
        elif self.element_count != len(self.directions) + 1:
            raise InvalidInputError(
                f"{len(self.directions)} relations cannot join {self.element_count} elements"
            )

    @classmethod
    def of(cls, directions: str) -> RelationWord:
        """Word on ``len(directions) + 1`` elements."""
        return cls(directions, len(directions) + 1)

    @classmethod
    def empty(cls) -> RelationWord:
        return cls("", 0)

    @property
    def is_empty(self) -> bool:
        return self.element_count == 0

    def reversed(self) -> RelationWord:
        """The same fence read from its other end."""
        return RelationWord(self.directions[::-1].translate(_FLIP), self.element_count)

    def __str__(self):
        return self.directions if self.element_count else "<empty>"


@dataclass(frozen=True)
class Shape:
    runs: tuple[int, ...]

    def __str__(self):
        return ",".join(map(str, self.runs))


@dataclass(frozen=True)
class CircularPoset:
    """A fence plus the closing relation ``last < first``."""

    word: RelationWord

    @property
    def element_count(self) -> int:
        return self.word.element_count


@dataclass(frozen=True)
class FencePosetExplicit:
    size: int
    covers: tuple[tuple[int, int], ...]  # (lower, upper), elements 1..size


def _cross(ux: int, uy: int, vx: int, vy: int) -> int:
    return ux * vy - uy * vx


def _is_right(d: tuple[int, int], point: Sequence[int], bias: str) -> bool:
    c = _cross(d[0], d[1], point[0], point[1])
    # points on the carrier line sit opposite to the perturbation
    return c <= 0 if bias == "left" else c < 0


def _open_range(n: int) -> range:
    return range(min(0, n) + 1, max(0, n))


def _floor_frac(value: Fraction) -> tuple[int, Fraction]:
    f = math.floor(value)
    return f, value - f


def _primitive_crossings(d: tuple[int, int], bias: str) -> list[tuple[Fraction, UnitSegment, ChainDir]]:
    dx, dy = d
    found = []
    if dx != 0:
        for i in _open_range(dx):
            t = Fraction(i, dx)
            fy, s = _floor_frac(t * dy)
            found.append((t, UnitSegment(Family.VERTICAL, LatticePoint(i, fy)), s))
    if dy != 0:
        for j in _open_range(dy):
            t = Fraction(j, dy)
            fx, s = _floor_frac(t * dx)
            found.append((t, UnitSegment(Family.HORIZONTAL, LatticePoint(fx, j)), s))
    if dx + dy != 0:
        for m in _open_range(dx + dy):
            t = Fraction(m, dx + dy)
            fx, s = _floor_frac(t * dx)
            found.append((t, UnitSegment(Family.DIAGONAL, LatticePoint(fx, m - fx)), s))
    found.sort(key=lambda item: item[0])

    out = []
    half = Fraction(1, 2)
    for t, seg, s in found:
        if s == 0:
            raise ConsistencyError(f"primitive segment {d} passes through a lattice point")
        start, _ = seg.endpoints
        # s measures the distance from the anchor endpoint
        closer_to_right = s < half if _is_right(d, start, bias) else s > half
        if s == half:
            closer_to_right = bias == "right"
        out.append((t, seg, ChainDir.DESCENDING if closer_to_right else ChainDir.ASCENDING))
    return out


_UNIT_DIRECTIONS = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))


def _segment_from(point: LatticePoint, v: tuple[int, int]) -> UnitSegment:
    family = {(1, 0): Family.HORIZONTAL, (0, 1): Family.VERTICAL, (1, -1): Family.DIAGONAL}
    if v in family:
        return UnitSegment(family[v], point)
    return UnitSegment(family[(-v[0], -v[1])], point.shift(*v))


def _detour_directions(d: tuple[int, int], bias: str) -> list[tuple[int, int]]:
    sign = 1 if bias == "left" else -1
    dirs = [v for v in _UNIT_DIRECTIONS if sign * _cross(d[0], d[1], v[0], v[1]) > 0]

    # sweep from the backward direction towards the forward one
    def before(v1, v2):
        return -1 if sign * _cross(v2[0], v2[1], v1[0], v1[1]) > 0 else 1

    return sorted(dirs, key=functools.cmp_to_key(before))


def _primitive(delta: Sequence[int]) -> tuple[tuple[int, int], int]:
    x, y = int(delta[0]), int(delta[1])
    if x == 0 and y == 0:
        raise InvalidInputError("delta must be nonzero")
    g = math.gcd(x, y)
    return (x // g, y // g), g


def _check_bias(bias: str):
    if bias not in ("left", "right"):
        raise InvalidInputError(f"bias must be 'left' or 'right', got {bias!r}")


def crossings(delta: Sequence[int], bias: str = "left") -> list[Crossing]:
    """Ordered crossings of the perturbed segment from the origin to ``delta``."""
    _check_bias(bias)
    d, g = _primitive(delta)
    base = _primitive_crossings(d, bias)
    detour_dirs = _detour_directions(d, bias)
    detour_chain = ChainDir.DESCENDING if bias == "left" else ChainDir.ASCENDING

    out: list[Crossing] = []
    for c in range(g):
        ox, oy = c * d[0], c * d[1]
        for t, seg, chain in base:
            moved = UnitSegment(seg.family, seg.anchor.shift(ox, oy))
            out.append(Crossing(moved, (c + t) / g, 0, chain))
        if c < g - 1:
            center = LatticePoint(ox + d[0], oy + d[1])
            t = Fraction(c + 1, g)
            for rank, v in enumerate(detour_dirs):
                out.append(Crossing(_segment_from(center, v), t, rank, detour_chain))
    return out


def _junction(d: tuple[int, int], a: Crossing, b: Crossing, bias: str) -> str:
    shared = set(a.segment.endpoints) & set(b.segment.endpoints)
    if len(shared) != 1:
        raise ConsistencyError(f"consecutive crossings {a} and {b} share {len(shared)} endpoints")
    (point,) = shared
    return DOWN if _is_right(d, point, bias) else UP


def relation_word(delta: Sequence[int], k: int, bias: str = "left") -> RelationWord:
    """Relation word of the fence poset of the segment from the origin to ``delta``.

    Each crossing becomes a chain of ``k + 1`` elements; consecutive chains are
    joined according to the side of the shared segment endpoint.
    """
    if k < 0:
        raise InvalidInputError("k must be nonnegative")
    cs = crossings(delta, bias)
    if not cs:
        return RelationWord.empty()
    d, _ = _primitive(delta)
    parts = [cs[0].chain_dir.value * k]
    for prev, cur in zip(cs, cs[1:]):
        parts.append(_junction(d, prev, cur, bias))
        parts.append(cur.chain_dir.value * k)
    return RelationWord("".join(parts), len(cs) * (k + 1))


def word_to_shape(word: RelationWord) -> Shape:
    if word.is_empty:
        return Shape(())
    if not word.directions:
        return Shape((1,))
    runs = []
    prev = None
    for letter in word.directions:
        if letter == prev:
            runs[-1] += 1
        else:
            runs.append(1)
            prev = letter
    runs[0] += 1
    return Shape(tuple(runs))


def join(left: RelationWord, letter: str, right: RelationWord) -> RelationWord:
    """Concatenate two fences, relating the last of ``left`` to the first of ``right``."""
    if left.is_empty:
        return right
    if right.is_empty:
        return left
    return RelationWord(
        left.directions + letter + right.directions,
        left.element_count + right.element_count,
    )


def circular_word(p: int, q: int, k: int) -> CircularPoset:
    """The fence ``D^(3k+2) U P_(p,q)`` closed up by ``last < first``."""
    if (p, q) == (0, 0) or math.gcd(p, q) != 1:
        raise InvalidInputError(f"({p},{q}) is not a primitive lattice vector")
    chain = RelationWord.of(DOWN * (3 * k + 2))
    return CircularPoset(join(chain, UP, relation_word((p, q), k)))


def _sub(word: RelationWord, a: int, b: int) -> RelationWord:
    """Elements ``a..b`` (1-indexed, inclusive) of a fence."""
    if b < a:
        return RelationWord.empty()
    return RelationWord(word.directions[a - 1:b - 1], b - a + 1)


def type1_resolution(word1: RelationWord, word2: RelationWord, j: int):
    """Skein resolution of two fences at the ``j``-th relation of ``word1``.

    Requires element ``j`` to cover element ``j + 1``.  Returns the four
    fences ``(P3, P4, P5, P6)`` with
    ``|J(P1)| |J(P2)| = |J(P3)| |J(P4)| + |J(P5)| |J(P6)|``.
    """
    h1 = word1.element_count
    if not 1 <= j <= h1 - 1:
        raise InvalidInputError(f"j={j} outside 1..{h1 - 1}")
    w = word1.directions
    if w[j - 1] != DOWN:
        raise NormalFormError(f"relation {j} of {w!r} is not a cover from above")

    p3 = join(_sub(word1, 1, j), UP, word2)

    run = 0
    while j + run < len(w) and w[j + run] == DOWN:
        run += 1
    p4 = _sub(word1, j + 2 + run, h1)

    p5 = join(word2.reversed(), UP, _sub(word1, j + 1, h1))

    run = 0
    while j - 2 - run >= 0 and w[j - 2 - run] == DOWN:
        run += 1
    p6 = _sub(word1, 1, j - 1 - run)
    return p3, p4, p5, p6


def oracle_cap() -> int:
    raw = os.environ.get("KMARKOV_ORACLE_CAP")
    return int(raw) if raw else DEFAULT_ORACLE_CAP


def explicit_poset(poset: RelationWord | CircularPoset, cap: int | None = None) -> FencePosetExplicit:
    """Materialize elements and cover pairs for subset enumeration."""
    cap = oracle_cap() if cap is None else cap
    circular = isinstance(poset, CircularPoset)
    word = poset.word if circular else poset
    h = word.element_count
    if h > cap:
        raise OracleCapacityError(f"{h} elements exceeds the oracle cap of {cap}")
    covers = []
    for i, letter in enumerate(word.directions, start=1):
        covers.append((i + 1, i) if letter == DOWN else (i, i + 1))
    if circular and h > 1:
        covers.append((h, 1))
    return FencePosetExplicit(h, tuple(covers))
