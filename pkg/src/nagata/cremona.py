"""Quadratic transformations and Noether's reduction algorithm."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import NagataError
from .lattice import ClassVector, intersect, k_pairing

__all__ = [
    "QuadraticStep",
    "Reduction",
    "quadratic_transform",
    "is_standard",
    "three_largest",
    "cremona_reduce",
    "is_minus_one_class",
    "pull_back",
]


@dataclass(frozen=True)
class QuadraticStep:
    triple: tuple[int, int, int]
    before: ClassVector
    after: ClassVector

    def to_json(self) -> dict:
        return {
            "triple": list(self.triple),
            "before": self.before.to_json(),
            "after": self.after.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QuadraticStep":
        return cls(
            tuple(obj["triple"]),
            ClassVector.from_json(obj["before"]),
            ClassVector.from_json(obj["after"]),
        )


class Reduction(NamedTuple):
    final: ClassVector
    steps: list[QuadraticStep]
    status: str  # "standard" or "degenerate"


def quadratic_transform(c: ClassVector, i: int, j: int, k: int) -> ClassVector:
    """Standard quadratic transformation based at points ``i, j, k``.

    ``d' = 2d - (m_i + m_j + m_k)`` and ``m_i' = d - m_j - m_k`` (cyclically).
    """
    if len({i, j, k}) != 3:
        raise NagataError(f"quadratic transform needs three distinct points, got {(i, j, k)}")
    for idx in (i, j, k):
        if not 0 <= idx < c.n:
            raise NagataError(f"point index {idx} out of range for n={c.n}")
    m = list(c.m)
    mi, mj, mk = m[i], m[j], m[k]
    m[i] = c.d - mj - mk
    m[j] = c.d - mi - mk
    m[k] = c.d - mi - mj
    return ClassVector(2 * c.d - mi - mj - mk, tuple(m))


def three_largest(c: ClassVector) -> tuple[int, int, int]:
    # stable descending sort: ties keep index order
    order = sorted(range(c.n), key=lambda t: -c.m[t])
    return order[0], order[1], order[2]


def is_standard(c: ClassVector) -> bool:
    if c.d < 0 or any(x < 0 for x in c.m):
        return False
    top = sorted(c.m, reverse=True)
    if len(top) >= 2 and top[0] + top[1] > c.d:
        return False
    if len(top) >= 3 and top[0] + top[1] + top[2] > c.d:
        return False
    return True


def cremona_reduce(c: ClassVector) -> Reduction:
    """Apply quadratic transforms at the three largest points while they exceed ``d``.

    The degree drops strictly at each step, so the loop ends once the three
    largest multiplicities fit or ``d <= 0``.  The endpoint is either standard
    or reported as ``degenerate`` (negative degree or multiplicity, or too few
    points to transform); no minimality is claimed in the degenerate case.
    """
    steps: list[QuadraticStep] = []
    cur = c
    while cur.n >= 3 and cur.d > 0:
        i, j, k = three_largest(cur)
        if cur.m[i] + cur.m[j] + cur.m[k] <= cur.d:
            break
        nxt = quadratic_transform(cur, i, j, k)
        steps.append(QuadraticStep((i, j, k), cur, nxt))
        cur = nxt
    status = "standard" if is_standard(cur) else "degenerate"
    return Reduction(cur, steps, status)


def pull_back(c: ClassVector, steps: list[QuadraticStep]) -> ClassVector:
    """Map a class from the frame after ``steps`` back to the original frame."""
    for step in reversed(steps):
        c = quadratic_transform(c, *step.triple)
    return c


def _is_exceptional_endpoint(c: ClassVector) -> bool:
    top = sorted(c.m)
    if c.d == 0:
        return top[0] == -1 and all(x == 0 for x in top[1:])
    if c.d == 1:
        desc = top[::-1]
        return desc[:2] == [1, 1] and all(x == 0 for x in desc[2:])
    return False


def is_minus_one_class(c: ClassVector) -> bool:
    """``c^2 = c.K = -1`` and ``c`` reduces to ``E_i`` or to a line through two points."""
    if c.n == 0 or intersect(c, c) != -1 or k_pairing(c) != -1:
        return False
    return _is_exceptional_endpoint(cremona_reduce(c).final)
