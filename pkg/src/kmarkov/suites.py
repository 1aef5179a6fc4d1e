"""Seeded verification suites behind ``kmarkov verify``.

Each suite is a list of named checks.  A check yields ``(inputs, ok)`` pairs
so that every failure carries the exact inputs needed to reproduce it.  The
same (seed, cases) always replays the same inputs.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator

from .errors import OracleCapacityError
from .ideal_count import brute_force_count, count_ideals, count_ideals_circular, count_ideals_dp
from .lattice_poset import (
    DOWN,
    CircularPoset,
    RelationWord,
    circular_word,
    explicit_poset,
    oracle_cap,
    relation_word,
    type1_resolution,
    word_to_shape,
)
from .markov import (
    FareyLabel,
    SequenceKind,
    markov_number,
    markov_via_tree,
    multiple_recurrence,
    named_sequence,
    vieta_tree,
)
from .monotonicity import (
    EmpiricalClass,
    LineSpec,
    PredictedClass,
    PtolemyCondition,
    classify_line,
    enumerate_line,
    ptolemy_check,
    ptolemy_condition,
    ratios_strictly_increase,
    thresholds,
)

Outcome = Iterator[tuple[dict, bool]]


@dataclass
class VerifySuiteResult:
    name: str
    seed: int
    cases: int = 0
    skipped: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


class _Skip(Exception):
    pass


@lru_cache(maxsize=4096)
def _brute(word: RelationWord, circular: bool = False) -> int:
    return brute_force_count(explicit_poset(CircularPoset(word) if circular else word))


def _brute_or_skip(word: RelationWord, circular: bool = False) -> int:
    if word.element_count > oracle_cap():
        raise _Skip
    try:
        return _brute(word, circular)
    except OracleCapacityError:
        raise _Skip from None


def _coprime_pairs(p_max: int, strict: bool = True):
    for p in range(1, p_max + 1):
        for q in range(0 if not strict else 1, p if strict else p + 1):
            if math.gcd(p, q) == 1:
                yield p, q


def _sample(items: list, rng: random.Random, cases: int | None) -> list:
    if cases is None or cases >= len(items):
        return items
    return rng.sample(items, cases)


# oracle ---------------------------------------------------------------------

def oracle_grid(radius: int = 6, k_max: int = 2) -> list[tuple[int, int, int]]:
    return [
        (x, y, k)
        for k in range(k_max + 1)
        for x in range(-radius, radius + 1)
        for y in range(-radius, radius + 1)
        if (x, y) != (0, 0)
    ]


def check_triple_agreement(rng, cases) -> Outcome:
    for x, y, k in _sample(oracle_grid(), rng, cases):
        word = relation_word((x, y), k)
        cf, dp = count_ideals(word_to_shape(word)), count_ideals_dp(word)
        inputs = {"delta": [x, y], "k": k, "cf": cf, "dp": dp}
        try:
            brute = _brute_or_skip(word)
        except _Skip:
            yield {**inputs, "brute": None}, cf == dp
            continue
        yield {**inputs, "brute": brute}, cf == dp == brute


# skein ----------------------------------------------------------------------

def _random_word(rng: random.Random, lo: int, hi: int) -> RelationWord:
    size = rng.randint(lo, hi)
    if size == 0:
        return RelationWord.empty()
    return RelationWord.of("".join(rng.choice("UD") for _ in range(size - 1)))


def skein_identity(word1: RelationWord, word2: RelationWord, j: int, count: Callable = _brute_or_skip):
    p3, p4, p5, p6 = type1_resolution(word1, word2, j)
    lhs = count(word1) * count(word2)
    rhs = count(p3) * count(p4) + count(p5) * count(p6)
    return lhs, rhs


def check_skein(rng, cases) -> Outcome:
    for _ in range(200 if cases is None else cases):
        word1 = _random_word(rng, 2, 10)
        if DOWN not in word1.directions:
            i = rng.randrange(len(word1.directions))
            d = word1.directions
            word1 = RelationWord.of(d[:i] + DOWN + d[i + 1:])
        word2 = _random_word(rng, 1, 10)
        j = rng.choice([i + 1 for i, c in enumerate(word1.directions) if c == DOWN])
        lhs, rhs = skein_identity(word1, word2, j)
        yield {"word1": word1.directions, "word2": word2.directions, "j": j, "lhs": lhs, "rhs": rhs}, lhs == rhs


# circular -------------------------------------------------------------------

def circular_grid(p_max: int = 6, k_max: int = 2) -> list[tuple[int, int, int]]:
    return [(p, q, k) for k in range(k_max + 1) for p, q in _coprime_pairs(p_max) if q < p]


def check_circular(rng, cases) -> Outcome:
    for p, q, k in _sample(circular_grid(), rng, cases):
        cp = circular_word(p, q, k)
        expected = (3 + 3 * k) * markov_number(p, q, k) - k
        got = count_ideals_circular(cp)
        inputs = {"point": [p, q], "k": k, "dp": got, "expected": expected}
        try:
            brute = _brute_or_skip(cp.word, circular=True)
        except _Skip:
            yield {**inputs, "brute": None}, got == expected
            continue
        yield {**inputs, "brute": brute}, got == expected == brute


# recurrence -----------------------------------------------------------------

def check_multiples(rng, cases) -> Outcome:
    grid = [(p, q, k, n) for k in range(4) for p, q in _coprime_pairs(5, strict=False) for n in range(5)]
    grid += [(p, -q, k, n) for p, q, k, n in grid if q > 0 and n < 4]
    for p, q, k, n in _sample(grid, rng, cases):
        geo = 0 if n == 0 else markov_number(n * p, n * q, k)
        rec = multiple_recurrence(p, q, k, n)
        yield {"point": [p, q], "k": k, "n": n, "geometric": geo, "recurrence": rec}, geo == rec


def check_intertwining(rng, cases) -> Outcome:
    for k in range(4):
        for n in range(1, 31):
            m = lambda p, q: markov_number(p, q, k) if (p, q) != (0, 0) else 0  # noqa: E731
            lhs1, rhs1 = m(n, 1), (k + 1) * m(n, 0) + m(n - 1, 1)
            lhs2, rhs2 = m(n + 1, n), 2 * (k + 1) * m(n, n) + m(n, n - 1)
            yield {"n": n, "k": k, "row": [lhs1, rhs1], "diagonal": [lhs2, rhs2]}, lhs1 == rhs1 and lhs2 == rhs2


def check_named_sequences(rng, cases) -> Outcome:
    points = {
        SequenceKind.FIB: lambda n: (n, 1),
        SequenceKind.PELL: lambda n: (n + 1, n),
        SequenceKind.EDGE0: lambda n: (n, 0),
        SequenceKind.EDGE1: lambda n: (n, n),
    }
    for k in range(4):
        for kind, at in points.items():
            for n in range(31):
                pt = at(n)
                geo = 0 if pt == (0, 0) else markov_number(*pt, k)
                seq = named_sequence(kind, k, n)
                yield {"kind": kind.value, "k": k, "n": n, "geometric": geo, "sequence": seq}, geo == seq


def check_squared(rng, cases) -> Outcome:
    for p, q in _coprime_pairs(30, strict=False):
        two, zero = markov_number(p, q, 2), markov_number(p, q, 0)
        yield {"point": [p, q], "k2": two, "k0": zero}, two == zero * zero


def check_edge_identity(rng, cases) -> Outcome:
    for p in range(2, 31):
        lhs = markov_number(p + 1, 0, 0) * markov_number(p - 1, 0, 0) - markov_number(p, 0, 0) ** 2
        yield {"p": p, "value": lhs}, lhs == -1


def check_asymptotics(rng, cases) -> Outcome:
    for k in range(4):
        t = thresholds(k)
        n = 60
        ratio = float(Fraction(markov_number(n, 1, k))) / (t.bigA * t.fib_growth**n)
        yield {"k": k, "n": n, "ratio": ratio}, abs(ratio - 1) < 1e-6


# monotone -------------------------------------------------------------------

def _h(p, q, k):
    return markov_number(p + 1, q, k), markov_number(p, q, k)


def _v(p, q, k):
    return markov_number(p, q + 1, k), markov_number(p, q, k)


def _le(a, b) -> bool:
    return a[0] * b[1] <= b[0] * a[1]


def check_hv_positive(rng, cases) -> Outcome:
    for k in range(3):
        for p in range(1, 16):
            for q in range(p + 1):
                h, v = _h(p, q, k), _v(p, q, k)
                yield {"point": [p, q], "k": k}, h[0] > h[1] and v[0] > v[1]


def check_chain_bounds(rng, cases) -> Outcome:
    # the h(p, 1) cap only applies to q >= 1: h decreases in q, so h(p, 0) > h(p, 1)
    for k in range(3):
        for p in range(1, 13):
            for q in range(1, p + 1):
                ok = _le(_h(q, q, k), _h(p, q, k)) and _le(_h(p, q, k), _h(p, 1, k))
                if q < p:
                    ok = ok and _le(_v(p, 0, k), _v(p, q, k)) and _le(_v(p, q, k), _v(p, p - 1, k))
                yield {"point": [p, q], "k": k}, ok


def check_product_inequality(rng, cases) -> Outcome:
    for k in range(3):
        for p in range(13):
            for q in range(13):
                if (p, q) == (0, 0):
                    continue
                lhs = markov_number(p + 1, q, k) * markov_number(p, q + 1, k)
                rhs = markov_number(p, q, k) * markov_number(p + 1, q + 1, k)
                yield {"point": [p, q], "k": k, "lhs": lhs, "rhs": rhs}, lhs > rhs


def scan_lines(k: int, max_den: int = 6, max_intercept: int = 30) -> list[LineSpec]:
    lines = []
    for a2 in range(1, max_den + 1):
        for a1 in range(1, 3 * max_den + 1):
            if math.gcd(a1, a2) != 1:
                continue
            for b in range(1, max_intercept * a2 + 1):
                line = LineSpec(Fraction(-a1, a2), Fraction(b, a2))
                if len(enumerate_line(line)) >= 3:
                    lines.append(line)
    return lines


def check_ratio_growth(rng, cases) -> Outcome:
    for k in range(3):
        lines = scan_lines(k)
        for line in _sample(lines, rng, cases):
            rep = classify_line(line, k)
            yield {"slope": str(line.a), "intercept": str(line.b), "k": k}, ratios_strictly_increase(rep.values)


def seeded_lines(rng: random.Random, k: int, kind: PredictedClass, count: int = 50, clearance: float = 0.01):
    """Negative-slope lines of one predicted class with at least three points."""
    t = thresholds(k)
    if kind is PredictedClass.INCREASING:
        ok = lambda s: t.U + clearance <= s < 0  # noqa: E731
    elif kind is PredictedClass.DECREASING:
        ok = lambda s: s <= t.L - clearance  # noqa: E731
    else:
        ok = lambda s: t.L + clearance <= s <= t.U - clearance  # noqa: E731
    slopes = sorted({Fraction(-a1, a2) for a2 in range(1, 13) for a1 in range(1, 40) if ok(-a1 / a2)})
    out, seen = [], set()
    attempts = 0
    while len(out) < count and attempts < 100000:
        attempts += 1
        a = rng.choice(slopes)
        b = Fraction(rng.randint(1, 80 * a.denominator), a.denominator)
        line = LineSpec(a, b)
        pts = enumerate_line(line)
        if line in seen or len(pts) < 3 or pts[-1].x > 80:
            continue
        seen.add(line)
        out.append(line)
    return out


def class_consistency(rng, k: int, kind: PredictedClass, count: int = 50) -> Outcome:
    want = {
        PredictedClass.INCREASING: EmpiricalClass.INCREASING,
        PredictedClass.DECREASING: EmpiricalClass.DECREASING,
        PredictedClass.GRAY: EmpiricalClass.VALLEY,
    }[kind]
    for line in seeded_lines(rng, k, kind, count):
        rep = classify_line(line, k)
        inputs = {
            "slope": str(line.a),
            "intercept": str(line.b),
            "k": k,
            "predicted": rep.predicted_class.value,
            "empirical": rep.empirical_class.value,
        }
        yield inputs, rep.predicted_class is kind and rep.empirical_class is want


def check_line_classes(rng, cases) -> Outcome:
    for k in range(4):
        for kind in (PredictedClass.INCREASING, PredictedClass.DECREASING, PredictedClass.GRAY):
            yield from class_consistency(rng, k, kind, 50 if cases is None else cases)


# ptolemy --------------------------------------------------------------------

def admissible_quadruples(rng: random.Random, count: int, radius: int = 12, k_max: int = 2):
    out = []
    while len(out) < count:
        k = rng.randint(0, k_max)
        style = rng.randrange(3)
        if style == 2:
            # collinear: four increasing multiples of a step
            step = (rng.randint(-3, 3), rng.randint(-3, 3))
            if step == (0, 0):
                continue
            base = (rng.randint(-radius // 2, radius // 2), rng.randint(-radius // 2, radius // 2))
            ts = sorted(rng.sample(range(5), 4))
            pts = [(base[0] + t * step[0], base[1] + t * step[1]) for t in ts]
        else:
            pts = [(rng.randint(-radius, radius), rng.randint(-radius, radius)) for _ in range(4)]
            if style == 1:
                # put C strictly inside BD when the grid allows it
                b, d = pts[1], pts[3]
                g = math.gcd(d[0] - b[0], d[1] - b[1])
                if g < 2:
                    continue
                t = rng.randint(1, g - 1)
                pts[2] = (b[0] + t * (d[0] - b[0]) // g, b[1] + t * (d[1] - b[1]) // g)
        if len(set(pts)) != 4 or any(max(abs(c) for c in p) > radius for p in pts):
            continue
        if ptolemy_condition(*pts) is PtolemyCondition.NOT_APPLICABLE:
            continue
        out.append((pts, k))
    return out


def check_ptolemy(rng, cases) -> Outcome:
    for pts, k in admissible_quadruples(rng, 200 if cases is None else cases):
        rep = ptolemy_check(*pts, k)
        ok = rep.holds and (rep.equality or rep.condition is not PtolemyCondition.COLLINEAR)
        yield {"points": [list(p) for p in pts], "k": k, "condition": rep.condition.value,
               "lhs": rep.lhs, "rhs": rep.rhs}, ok


# tree -----------------------------------------------------------------------

def check_routes(rng, cases) -> Outcome:
    grid = [(p, q, k) for k in range(4) for p, q in _coprime_pairs(20)]
    for p, q, k in _sample(grid, rng, cases):
        geo, tree = markov_number(p, q, k), markov_via_tree(FareyLabel(q, p), k)
        yield {"point": [p, q], "k": k, "geometric": geo, "tree": tree}, geo == tree


def check_tree_members(rng, cases) -> Outcome:
    for k in range(4):
        for t in vieta_tree(k, 5):
            mid = t.label[1]
            if mid.p == 0 or not 0 <= mid.q <= mid.p:
                continue
            geo = markov_number(mid.p, mid.q, k) if mid.q else 1
            yield {"label": str(mid), "k": k, "triple": [t.x, t.y, t.z]}, t.residual(k) == 0 and geo == t.y


SUITES: dict[str, list[tuple[str, Callable]]] = {
    "oracle": [("triple_agreement", check_triple_agreement)],
    "skein": [("type1_identity", check_skein)],
    "circular": [("circular_count", check_circular)],
    "recurrence": [
        ("multiples", check_multiples),
        ("intertwining", check_intertwining),
        ("named_sequences", check_named_sequences),
        ("squared", check_squared),
        ("edge_identity", check_edge_identity),
        ("asymptotics", check_asymptotics),
    ],
    "monotone": [
        ("hv_positive", check_hv_positive),
        ("chain_bounds", check_chain_bounds),
        ("product_inequality", check_product_inequality),
        ("ratio_growth", check_ratio_growth),
        ("line_classes", check_line_classes),
    ],
    "ptolemy": [("ptolemy", check_ptolemy)],
    "tree": [("routes", check_routes), ("tree_members", check_tree_members)],
}


def run_check(name: str, check: Callable, seed: int = 0, cases: int | None = None) -> VerifySuiteResult:
    result = VerifySuiteResult(name, seed)
    rng = random.Random(f"{seed}:{name}")
    for inputs, ok in check(rng, cases):
        result.cases += 1
        if inputs.get("brute", 0) is None:
            result.skipped += 1
        if not ok:
            result.failures.append({"check": name, **inputs})
    return result


def run_suite(name: str, seed: int = 0, cases: int | None = None) -> VerifySuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    total = VerifySuiteResult(name, seed)
    for check_name, check in SUITES[name]:
        part = run_check(check_name, check, seed, cases)
        total.cases += part.cases
        total.skipped += part.skipped
        total.failures.extend(part.failures)
    return total
