"""Enumeration of (-1)-classes and nefness scans against them.

A (-1)-class of degree ``d >= 1`` solves ``sum m_i = 3d - 1`` and
``sum m_i^2 = d^2 + 1`` with ``0 <= m_i <= d``.  Since ``m(m-1) >= 0`` the
number of nonzero entries is at most ``3d - 1``, so for a fixed degree the set
of sorted solutions stops growing once ``n >= 3d - 1``.  Not every solution
is a (-1)-class; each candidate is confirmed by Cremona reduction.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterator

from .cremona import is_minus_one_class
from .lattice import ClassVector

__all__ = [
    "NegClassSet",
    "NefScan",
    "DEFAULT_MAX_DEGREE",
    "enumerate_neg_classes",
    "nef_obstructions",
    "worst_pairing",
]

DEFAULT_MAX_DEGREE = 20
SATURATION_WINDOW = 3


@lru_cache(maxsize=None)
def _sorted_solutions(d: int, slots: int) -> tuple[tuple[int, ...], ...]:
    """Nonincreasing nonnegative ``m`` of length ``<= slots`` (zeros stripped)."""
    if d == 0:
        return ()
    target_sum = 3 * d - 1
    target_sq = d * d + 1
    found: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def extend(cap: int, rem_sum: int, rem_sq: int, left: int) -> None:
        if rem_sum == 0:
            if rem_sq == 0:
                found.append(tuple(prefix))
            return
        if left == 0:
            return
        # each remaining entry x satisfies x <= x^2 <= cap * x
        if rem_sq < rem_sum or rem_sq > cap * rem_sum:
            return
        # Cauchy-Schwarz over the remaining slots
        if rem_sum * rem_sum > left * rem_sq:
            return
        for x in range(min(cap, rem_sum), 0, -1):
            if x * x > rem_sq:
                continue
            prefix.append(x)
            extend(x, rem_sum - x, rem_sq - x * x, left - 1)
            prefix.pop()

    extend(d, target_sum, target_sq, slots)
    return tuple(found)


@lru_cache(maxsize=None)
def _all_minus_one(d: int) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """Split the numerical solutions into genuine (-1)-classes and the rest.

    Solutions outside the Cremona orbit of an exceptional curve (e.g.
    ``(5; 3, 3, 1^8)``, which contains the line through its two triple points)
    are dropped.
    """
    keep, reject = [], []
    for m in _sorted_solutions(d, 3 * d - 1):
        c = ClassVector(d, m + (0,) * max(0, 3 - len(m)))
        (keep if is_minus_one_class(c) else reject).append(m)
    return tuple(keep), tuple(reject)


@lru_cache(maxsize=None)
def _minus_one_solutions(d: int, slots: int) -> tuple[tuple[tuple[int, ...], ...], int]:
    """(-1)-classes of degree ``d`` with at most ``slots`` nonzero entries, and the
    number of rejected numerical solutions that fit."""
    keep, reject = _all_minus_one(d)
    return (
        tuple(m for m in keep if len(m) <= slots),
        sum(1 for m in reject if len(m) <= slots),
    )


def _labelings(m: tuple[int, ...], n: int) -> int:
    counts = Counter(m)
    counts[0] += n - len(m)
    out = math.factorial(n)
    for c in counts.values():
        out //= math.factorial(c)
    return out


@dataclass
class NegClassSet:
    n: int
    max_degree: int
    classes: list[ClassVector] = field(default_factory=list)
    degree_counts: dict[int, int] = field(default_factory=dict)
    rejected: int = 0

    @property
    def count(self) -> int:
        """Number of labeled classes (each sorted class counted with its permutations)."""
        return sum(_labelings(c.m, self.n) for c in self.classes)

    @property
    def top_degree(self) -> int:
        return max((c.d for c in self.classes), default=0)

    @property
    def saturated(self) -> bool:
        """For ``n <= 8``: nothing new in the last few degrees below the bound."""
        return self.n <= 8 and self.max_degree >= self.top_degree + SATURATION_WINDOW

    def expand(self) -> Iterator[ClassVector]:
        """Every labeled class, sorted-class order then lexicographic."""
        for c in self.classes:
            for m in sorted(set(permutations(c.m)), reverse=True):
                yield ClassVector(c.d, m)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "max_degree": self.max_degree,
            "count": self.count,
            "saturated": self.saturated,
            "rejected_numerical_solutions": self.rejected,
            "classes": [c.to_json() for c in self.classes],
        }


def enumerate_neg_classes(n: int, max_degree: int) -> NegClassSet:
    """All (-1)-classes on ``X_n`` of degree ``<= max_degree``, in sorted form.

    Backtracking over nonincreasing vectors with sum and sum-of-squares
    pruning, then a reduction check on each solution.  Order: by degree, then
    multiplicities descending lexicographically.
    """
    if n < 1:
        raise ValueError("need at least one point")
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    out = NegClassSet(n, max_degree)
    out.classes.append(ClassVector(0, (0,) * (n - 1) + (-1,)))
    out.degree_counts[0] = 1
    for d in range(1, max_degree + 1):
        sols, rejected = _minus_one_solutions(d, min(n, 3 * d - 1))
        out.rejected += rejected
        for m in sorted(sols, reverse=True):
            out.classes.append(ClassVector(d, m + (0,) * (n - len(m))))
        if sols:
            out.degree_counts[d] = len(sols)
    return out


def worst_pairing(c_sorted_desc: tuple[int, ...], e: ClassVector, c_degree: int) -> int:
    """Minimum of ``c . sigma(e)`` over relabelings ``sigma`` of ``e``.

    By the rearrangement inequality the sum ``sum c_i e_i`` is largest when both
    are sorted the same way, which minimises the pairing.
    """
    return c_degree * e.d - sum(a * b for a, b in zip(c_sorted_desc, e.m))


@dataclass
class NefScan:
    target: ClassVector
    max_degree: int
    obstructions: list[tuple[ClassVector, int]]
    full: bool

    @property
    def nef_certified(self) -> bool:
        return not self.obstructions and self.full

    @property
    def label(self) -> str:
        return "FULL" if self.full else "PARTIAL"

    def to_json(self) -> dict:
        return {
            "target": self.target.to_json(),
            "max_degree": self.max_degree,
            "certificate": self.label,
            "obstructions": [{"class": e.to_json(), "pairing": p} for e, p in self.obstructions],
        }


def nef_obstructions(c: ClassVector, max_degree: int = DEFAULT_MAX_DEGREE) -> NefScan:
    """Find (-1)-classes meeting ``c`` negatively, up to ``max_degree``.

    Each sorted class is placed on the points where it pairs worst with ``c``;
    one instance per sorted class is returned along with the pairing.  An empty
    list is a FULL nefness certificate only for ``2 <= n <= 8`` where the
    enumeration saturates and (-1)-curves span the Mori cone; otherwise PARTIAL.
    """
    n = c.n
    if n < 1:
        raise ValueError("need at least one point")
    degree = max(max_degree, 6 + SATURATION_WINDOW) if n <= 8 else max_degree
    order = sorted(range(n), key=lambda t: -c.m[t])
    c_sorted = tuple(c.m[t] for t in order)
    hits: list[tuple[ClassVector, int]] = []
    # zip() stops at the stripped length, so trailing zeros cost nothing
    candidates = [(0, (0,) * (n - 1) + (-1,))]
    for d in range(1, degree + 1):
        candidates.extend((d, m) for m in _minus_one_solutions(d, min(n, 3 * d - 1))[0])
    for d, m in candidates:
        p = c.d * d - sum(a * b for a, b in zip(c_sorted, m))
        if p < 0:
            placed = [0] * n
            for slot, t in enumerate(order[: len(m)]):
                placed[t] = m[slot]
            hits.append((ClassVector(d, tuple(placed)), p))
    hits.sort(key=lambda h: (h[0].d, h[1]))
    full = 2 <= n <= 8 and enumerate_neg_classes(n, degree).saturated
    return NefScan(c, degree, hits, full)


def census_by_orbit(n: int) -> set[ClassVector]:
    """Independent census for ``n <= 8``: the Cremona-Kantor orbit of ``E_1``.

    Works on at least three points so quadratic transforms exist, then keeps
    the classes supported on the first ``n`` points.
    """
    from .cremona import quadratic_transform

    if n > 8:
        raise ValueError("orbit is infinite for n >= 9")
    big = max(n, 3)
    start = ClassVector(0, (-1,) + (0,) * (big - 1))
    seen = {start}
    frontier = [start]
    triples = [(i, j, k) for i in range(big) for j in range(i + 1, big) for k in range(j + 1, big)]
    while frontier:
        nxt = []
        for c in frontier:
            images = [quadratic_transform(c, *t) for t in triples]
            images += [
                ClassVector(c.d, tuple(c.m[s] if s not in (a, b) else c.m[a + b - s] for s in range(big)))
                for a in range(big) for b in range(a + 1, big)
            ]
            for img in images:
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return {ClassVector(c.d, c.m[:n]) for c in seen if not any(c.m[n:])}


def check_membership(classes: list[ClassVector]) -> list[ClassVector]:
    """Return the members that fail ``is_minus_one_class`` (should be empty)."""
    return [c for c in classes if not is_minus_one_class(c)]
