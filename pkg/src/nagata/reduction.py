"""Arithmetic of the reduction of Nagata's conjecture for ``n >= 90`` to ``n <= 89``.

Write ``n = 9h + k`` with ``9 <= k <= 17``; the ten-part partition
``(h^9, k)`` must satisfy ``3 sqrt(n) <= 9 sqrt(h) + sqrt(k)``.  Only this
inequality is machine-checked.  The geometric inputs are listed in
``ASSUMPTIONS`` and carried in every report.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NagataError, ValidationError
from .lattice import SurdSum

__all__ = [
    "PartitionWitness",
    "ASSUMPTIONS",
    "nagata_partition",
    "verify_partition",
    "split_9h_k",
    "linear_criterion",
    "partition_range",
]

ASSUMPTIONS = (
    "strong Nagata conjecture holds on X_10 (so rational boundary rays there are approximated by good rays)",
    "the Nagata ray is nef for each part size s_i (induction hypothesis, n <= 89 at the base)",
    "limits of nef rays are nef (closedness of the nef cone)",
)
NOTE_13 = "for n = 13 it would suffice that [sqrt(13); 2, 1^9] is nef; not certified here"


@dataclass
class PartitionWitness:
    n: int
    parts: tuple[int, ...]
    inequality_margin: SurdSum
    valid: bool
    assumptions: tuple[str, ...] = ASSUMPTIONS
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "parts": list(self.parts),
            "margin": str(self.inequality_margin),
            "margin_terms": self.inequality_margin.to_json(),
            "valid": self.valid,
            "assumptions": list(self.assumptions),
            "notes": list(self.notes),
        }


def _margin(parts, n: int) -> SurdSum:
    counts = Counter(parts)
    total = SurdSum([(s, c) for s, c in counts.items()])
    return total - SurdSum.sqrt(n, 3)


def verify_partition(parts, n: int) -> PartitionWitness:
    """Check ``sum(parts) == n`` and ``3 sqrt(n) <= sum sqrt(s_i)`` exactly."""
    parts = tuple(int(x) for x in parts)
    if len(parts) != 10:
        raise NagataError(f"need exactly 10 parts, got {len(parts)}")
    if any(x <= 0 for x in parts):
        raise NagataError("parts must be positive")
    margin = _margin(parts, n)
    valid = sum(parts) == n and margin.sign() >= 0
    notes = [] if sum(parts) == n else [f"parts sum to {sum(parts)}, not {n}"]
    return PartitionWitness(n, parts, margin, valid, notes=notes)


def split_9h_k(n: int) -> tuple[int, int]:
    """The unique ``(h, k)`` with ``n = 9h + k`` and ``9 <= k <= 17``."""
    h, k = divmod(n, 9)
    if k < 9:
        h, k = h - 1, k + 9
    return h, k


def linear_criterion(h: int, k: int) -> bool:
    """The squared-out form of the inequality for parts ``(h^9, k)``: ``81 h >= 16 k``."""
    return 81 * h >= 16 * k


def nagata_partition(n: int) -> PartitionWitness:
    if n < 90:
        raise NagataError("the reduction applies to n >= 90")
    h, k = split_9h_k(n)
    witness = verify_partition((h,) * 9 + (k,), n)
    if not witness.valid:
        raise ValidationError(f"partition (h^9, k) = ({h}^9, {k}) fails for n={n}")
    return witness


def partition_range(lo: int, hi: int) -> dict:
    failures = []
    tightest: tuple[Fraction, int] | None = None
    for n in range(lo, hi + 1):
        try:
            w = nagata_partition(n)
        except (NagataError, ValidationError) as exc:
            failures.append({"n": n, "error": str(exc)})
            continue
        approx = Fraction(float(w.inequality_margin)).limit_denominator(10**9)
        if tightest is None or approx < tightest[0]:
            tightest = (approx, n)
    return {
        "range": [lo, hi],
        "checked": hi - lo + 1,
        "failures": failures,
        "all_valid": not failures,
        "tightest_n": tightest[1] if tightest else None,
        "tightest_margin_approx": float(tightest[0]) if tightest else None,
        "assumptions": list(ASSUMPTIONS),
        "notes": [NOTE_13],
    }
