"""Monotonicity of generalized k-Markov numbers along rational lines.

Value comparisons are exact big-integer cross-multiplications.  Floats show
up only in the transcendental thresholds ``U(k)``, ``L(k)``, the limit
ratios ``S_-``/``S_+`` and the convergence probes.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInputError, UnboundedEnumerationError
from .lattice_poset import LatticePoint
from .markov import distance, markov_number

BOUNDARY_EPS = 1e-9


@dataclass(frozen=True)
class ThresholdSet:
    k: int
    alpha: float
    beta: float
    delta: float
    bigA: float
    bigB: float
    U: float
    L: float
    fib_growth: float  # (3 + 2k + sqrt(alpha)) / 2
    pell_growth: float  # (beta + sqrt(beta^2 - 4)) / 2

    @property
    def gray_width(self) -> float:
        return self.U - self.L


def thresholds(k: int) -> ThresholdSet:
    if k < 0:
        raise InvalidInputError("k must be nonnegative")
    alpha = 4 * k * k + 12 * k + 5
    beta = 3 * k * k + 8 * k + 6
    delta = 3 * k**4 + 17 * k**3 + 34 * k * k + 28 * k + 8
    ra = math.sqrt(alpha)
    rb = math.sqrt(beta * beta - 4)
    big_a = (2 * k * k + 3 * k + 1 + (1 + k) * ra) / (2 * (1 + 2 * k) * ra)
    big_b = ((k + 1) * (k + 2) * (beta * beta - 4) + delta * rb) / ((beta - 2) * (beta * beta - 4))
    fib = (3 + 2 * k + ra) / 2
    pell = (beta + rb) / 2
    upper = -math.log((3 + 3 * k) * big_b) / math.log(pell / ((3 + 3 * k) * big_b))
    lower = -math.log(fib) / math.log((3 + 3 * k) * big_a)
    return ThresholdSet(k, float(alpha), float(beta), float(delta), big_a, big_b, upper, lower, fib, pell)


def _check_slope_pair(a1: int, a2: int):
    if a1 <= 0 or a2 <= 0 or math.gcd(a1, a2) != 1:
        raise InvalidInputError(f"({a1},{a2}) must be coprime positive integers")


def s_minus(a1: int, a2: int, k: int) -> float:
    """Limit of ``m_(n,1) / m_(n - a2, 1 + a1)``."""
    _check_slope_pair(a1, a2)
    t = thresholds(k)
    return ((3 + 3 * k) * t.bigA) ** (-a1) * t.fib_growth**a2


def s_plus(a1: int, a2: int, k: int) -> float:
    """Limit of ``m_(n+1+a2, n-a1) / m_(n+1, n)``."""
    _check_slope_pair(a1, a2)
    t = thresholds(k)
    return ((3 + 3 * k) * t.bigB) ** (a1 + a2) * t.pell_growth ** (-a1)


@dataclass(frozen=True)
class LineSpec:
    """The line ``y = a x + b``."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def parse(cls, slope: str, intercept: str) -> LineSpec:
        return cls(Fraction(slope), Fraction(intercept))

    @classmethod
    def through(cls, p: Sequence[int], r: Sequence[int]) -> LineSpec:
        if p[0] == r[0]:
            raise InvalidInputError("vertical lines have no slope")
        a = Fraction(r[1] - p[1], r[0] - p[0])
        return cls(a, p[1] - a * p[0])

    @property
    def slope_pair(self) -> tuple[int, int]:
        """``(a1, a2)`` with ``a = -a1/a2``; only for negative slopes."""
        if self.a >= 0:
            raise InvalidInputError("slope pair is defined for negative slopes only")
        return -self.a.numerator, self.a.denominator

    def shifted_horizontal(self, n: int) -> LineSpec:
        return LineSpec(self.a, self.b - self.a * n)

    def shifted_diagonal(self, n: int) -> LineSpec:
        return LineSpec(self.a, self.b - self.a * n + n)

    def __str__(self):
        return f"y = {self.a}x + {self.b}"


def enumerate_line(
    line: LineSpec, x_range: tuple[int, int] | None = None, interior: bool = False
) -> list[LatticePoint]:
    """Integral points of the line with ``p >= q >= 0``, sorted by x.

    Negative slopes give a finite set; otherwise ``x_range`` (inclusive) must
    bound the scan.  ``interior`` keeps only ``p > q > 0``.
    """
    a, b = line.a, line.b
    if a < 0:
        lo, hi = math.ceil(b / (1 - a)), math.floor(b / -a)
    elif x_range is None:
        raise UnboundedEnumerationError(f"{line} meets the region in infinitely many points")
    else:
        lo, hi = x_range
    if x_range is not None:
        lo, hi = max(lo, x_range[0]), min(hi, x_range[1])
    lo = max(lo, 0)
    period = a.denominator
    start = next((x for x in range(lo, min(hi, lo + period - 1) + 1) if (a * x + b).denominator == 1), None)
    if start is None:
        return []
    out = []
    for x in range(start, hi + 1, period):
        y = int(a * x + b)
        if (0 < y < x) if interior else (0 <= y <= x):
            out.append(LatticePoint(x, y))
    return out


class EmpiricalClass(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    VALLEY = "valley"
    TOO_SHORT = "too_short"
    ANOMALY = "anomaly"


class PredictedClass(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    GRAY = "gray"
    POSITIVE_SLOPE = "positive_slope"
    AT_BOUNDARY = "at_boundary"


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def empirical_class(values: Sequence[int]) -> EmpiricalClass:
    if len(values) < 2:
        return EmpiricalClass.TOO_SHORT
    steps = [_sign(b - a) for a, b in zip(values, values[1:])]
    if 0 in steps:
        return EmpiricalClass.ANOMALY
    if all(s > 0 for s in steps):
        return EmpiricalClass.INCREASING
    if all(s < 0 for s in steps):
        return EmpiricalClass.DECREASING
    turn = steps.index(1)
    if all(s > 0 for s in steps[turn:]):
        return EmpiricalClass.VALLEY
    return EmpiricalClass.ANOMALY


def predicted_class(a: Fraction, k: int, eps: float = BOUNDARY_EPS) -> PredictedClass:
    if a > 0:
        return PredictedClass.POSITIVE_SLOPE
    t = thresholds(k)
    slope = float(a)
    if abs(slope - t.U) < eps or abs(slope - t.L) < eps:
        return PredictedClass.AT_BOUNDARY
    if slope >= t.U:
        return PredictedClass.INCREASING
    if slope <= t.L:
        return PredictedClass.DECREASING
    return PredictedClass.GRAY


def ratios_strictly_increase(values: Sequence[int]) -> bool:
    """``v[i+1]/v[i] < v[i+2]/v[i+1]`` for every window, by cross-multiplication."""
    return all(c * a > b * b for a, b, c in zip(values, values[1:], values[2:]))


@dataclass
class MonotonicityReport:
    line: LineSpec
    k: int
    points: list[LatticePoint]
    values: list[int]
    ratios: list[Fraction]
    steps: list[int]  # sign of values[i+1] - values[i]
    empirical_class: EmpiricalClass
    predicted_class: PredictedClass
    ratios_increasing: bool

    @property
    def consistent(self) -> bool:
        """Does the observed behaviour agree with the predicted class?"""
        pred, emp = self.predicted_class, self.empirical_class
        if emp is EmpiricalClass.TOO_SHORT or pred is PredictedClass.AT_BOUNDARY:
            return True
        if pred in (PredictedClass.INCREASING, PredictedClass.POSITIVE_SLOPE):
            return emp is EmpiricalClass.INCREASING
        if pred is PredictedClass.DECREASING:
            return emp is EmpiricalClass.DECREASING
        if len(self.points) >= 3:
            return emp is EmpiricalClass.VALLEY
        return emp is not EmpiricalClass.ANOMALY


def classify_line(line: LineSpec, k: int, x_range: tuple[int, int] | None = None) -> MonotonicityReport:
    points = enumerate_line(line, x_range)
    values = [markov_number(p.x, p.y, k) for p in points]
    return MonotonicityReport(
        line=line,
        k=k,
        points=points,
        values=values,
        ratios=[Fraction(b, a) for a, b in zip(values, values[1:])],
        steps=[_sign(b - a) for a, b in zip(values, values[1:])],
        empirical_class=empirical_class(values),
        predicted_class=predicted_class(line.a, k),
        ratios_increasing=ratios_strictly_increase(values),
    )


class PtolemyCondition(enum.Enum):
    CONVEX_QUAD = "convex_quad"
    POINT_ON_SIDE = "point_on_side"
    COLLINEAR = "collinear"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class PtolemyReport:
    condition: PtolemyCondition
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs


def _orient(o, a, b) -> int:
    return _sign((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def _strictly_between(a, m, b) -> bool:
    """``m`` in the open segment ``ab``."""
    if _orient(a, m, b) != 0:
        return False
    dot = (m[0] - a[0]) * (b[0] - a[0]) + (m[1] - a[1]) * (b[1] - a[1])
    length = (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2
    return 0 < dot < length


def ptolemy_condition(a, b, c, d) -> PtolemyCondition:
    if _orient(a, c, b) * _orient(a, c, d) < 0 and _orient(b, d, a) * _orient(b, d, c) < 0:
        return PtolemyCondition.CONVEX_QUAD
    if _orient(a, b, d) != 0 and _strictly_between(b, c, d):
        return PtolemyCondition.POINT_ON_SIDE
    if (
        _orient(a, b, c) == 0
        and _orient(a, b, d) == 0
        and _strictly_between(a, b, c)
        and _strictly_between(b, c, d)
    ):
        return PtolemyCondition.COLLINEAR
    return PtolemyCondition.NOT_APPLICABLE


def ptolemy_check(a, b, c, d, k: int) -> PtolemyReport:
    pts = [tuple(p) for p in (a, b, c, d)]
    if len(set(pts)) != 4:
        raise InvalidInputError("Ptolemy check needs four distinct points")
    cond = ptolemy_condition(*pts)
    if cond is PtolemyCondition.NOT_APPLICABLE:
        return PtolemyReport(cond, 0, 0)
    lhs = distance(a, c, k) * distance(b, d, k)
    rhs = distance(a, b, k) * distance(c, d, k) + distance(a, d, k) * distance(b, c, k)
    return PtolemyReport(cond, lhs, rhs)


class ProbeMode(enum.Enum):
    HORIZONTAL = "horizontal"
    DIAGONAL = "diagonal"


def exact_probe_ratios(
    line: LineSpec, mode: ProbeMode, n_max: int, k: int, interior: bool = False
) -> list[Fraction]:
    """Last ratio of horizontally shifted lines, or first ratio of diagonal shifts.

    The ratio is always taken left to right: ``value(right) / value(left)``.
    A line with fewer than two points gives an empty list.
    """
    if line.a >= 0:
        raise InvalidInputError("convergence probes need a negative slope")
    out = []
    for n in range(n_max + 1):
        if mode is ProbeMode.HORIZONTAL:
            pts = enumerate_line(line.shifted_horizontal(n), interior=interior)[-2:]
        else:
            pts = enumerate_line(line.shifted_diagonal(n), interior=interior)[:2]
        if len(pts) < 2:
            if n == 0:
                return []
            raise InvalidInputError(f"shifted line {n} lost its points")
        left, right = (markov_number(p.x, p.y, k) for p in pts)
        out.append(Fraction(right, left))
    return out


def ratio_convergence_probe(
    line: LineSpec, mode: ProbeMode, n_max: int, k: int, interior: bool = False
) -> list[float]:
    return [float(r) for r in exact_probe_ratios(line, mode, n_max, k, interior)]


@dataclass
class WedgeResult:
    apex: LatticePoint
    slope_low: float | Fraction
    slope_high: float | Fraction
    count: int
    points: list[LatticePoint] = field(default_factory=list)


def wedge_count(
    p: int,
    q: int,
    slope_low: float | Fraction,
    slope_high: float | Fraction,
    coprime_only: bool = False,
    collect_points: bool = True,
) -> WedgeResult:
    """Points of the closed region whose slope to ``(p, q)`` lies in the open interval.

    Pass rational slopes as ``Fraction``; a float such as ``-1.2`` is taken at its binary value.
    """
    if not slope_low < slope_high < 0:
        raise InvalidInputError("wedge slopes must satisfy low < high < 0")
    lo, hi = Fraction(slope_low), Fraction(slope_high)
    count = 0
    points: list[LatticePoint] = []

    def scan(x: int, y_min: Fraction, y_max: Fraction):
        # integers strictly inside (y_min, y_max), kept inside 0 <= y <= x
        nonlocal count
        first = max(math.floor(y_min) + 1, 0)
        last = min(math.ceil(y_max) - 1, x)
        for y in range(first, last + 1):
            if coprime_only and math.gcd(x, y) != 1:
                continue
            count += 1
            if collect_points:
                points.append(LatticePoint(x, y))

    # right arm: y decreases, bounded below by y = 0
    x = p + 1
    while q + hi * (x - p) > 0:
        dx = x - p
        scan(x, q + lo * dx, q + hi * dx)
        x += 1
    # left arm: y increases, bounded by y <= x
    x = p - 1
    while x >= 0:
        dx = p - x
        y_min, y_max = q - hi * dx, q - lo * dx
        if y_min >= x:
            break
        scan(x, y_min, y_max)
        x -= 1
    return WedgeResult(LatticePoint(p, q), slope_low, slope_high, count, points)


@dataclass(frozen=True)
class OrderComparison:
    k: int
    value_a: int
    value_b: int

    @property
    def sign(self) -> int:
        return _sign(self.value_a - self.value_b)

    @property
    def relation(self) -> str:
        return {1: ">", 0: "=", -1: "<"}[self.sign]


def compare_orders(point_a: Sequence[int], point_b: Sequence[int], ks: Iterable[int]) -> list[OrderComparison]:
    for pt in (point_a, point_b):
        if not 0 <= pt[1] <= pt[0] or tuple(pt) == (0, 0):
            raise InvalidInputError(f"{tuple(pt)} is not in the region p >= q >= 0")
    return [
        OrderComparison(k, markov_number(point_a[0], point_a[1], k), markov_number(point_b[0], point_b[1], k))
        for k in ks
    ]
