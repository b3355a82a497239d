"""Conjectural dimensions of linear systems and an exact interpolation oracle.

Dimensions are projective: ``-1`` means the system is empty.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import kernels
from .cremona import QuadraticStep, is_minus_one_class, is_standard, pull_back, quadratic_transform, three_largest
from .errors import InstabilityError, InternalError, NagataError
from .lattice import ClassVector, expected_dimension, intersect, virtual_dimension

__all__ = [
    "SpecialityReport",
    "DEFAULT_SEED",
    "PRIMES",
    "conjectural_dimension",
    "interpolation_dimension",
    "classify_speciality",
]

DEFAULT_SEED = 20100101
PRIMES = (2**61 - 1, 2**62 - 57, 2**63 - 25)
EXACT_FALLBACK_MAX_COLS = 120


@dataclass
class SpecialityReport:
    target: ClassVector
    virtual_dim: int
    expected_dim: int
    conjectural_dim: int
    obstructions: list[tuple[ClassVector, int]] = field(default_factory=list)
    reduction_log: list[QuadraticStep] = field(default_factory=list)
    oracle_dim: int | None = None

    @property
    def special(self) -> bool:
        """(-1)-special: some (-1)-class meets the system with pairing <= -2
        and the conjectural dimension exceeds the expected one."""
        return self.conjectural_dim > self.expected_dim and any(p <= -2 for _, p in self.obstructions)

    def to_json(self) -> dict:
        return {
            "class": self.target.to_json(),
            "virtual_dim": self.virtual_dim,
            "expected_dim": self.expected_dim,
            "conjectural_dim": self.conjectural_dim,
            "special": self.special,
            "obstructions": [{"class": e.to_json(), "pairing": p} for e, p in self.obstructions],
            "reduction_log": [s.to_json() for s in self.reduction_log],
            "oracle_dim": self.oracle_dim,
        }


def conjectural_dimension(c: ClassVector) -> SpecialityReport:
    """Dimension predicted by SHGH, via reduction with fixed-part removal.

    Loop: drop negative multiplicities (each ``-k`` at point ``i`` is ``k E_i``
    in the base locus, recorded and pulled back to the original frame); stop
    with ``-1`` if ``d < 0``; stop with ``max(-1, v)`` if standard; otherwise
    transform at the three largest points.
    """
    if c.d < 0:
        raise NagataError("conjectural_dimension needs d >= 0")
    n = c.n
    cur = c.padded(max(n, 3))
    log: list[QuadraticStep] = []
    fixed: dict[ClassVector, int] = {}
    while True:
        if any(x < 0 for x in cur.m):
            for i, x in enumerate(cur.m):
                if x < 0:
                    e = ClassVector(0, tuple(-1 if t == i else 0 for t in range(cur.n)))
                    e = pull_back(e, log)
                    if not any(e.m[n:]):
                        e = ClassVector(e.d, e.m[:n])
                        fixed[e] = fixed.get(e, 0) + x
            cur = ClassVector(cur.d, tuple(max(0, x) for x in cur.m))
        if cur.d < 0:
            dim = -1
            break
        if is_standard(cur):
            dim = max(-1, virtual_dimension(cur))
            break
        i, j, k = three_largest(cur)
        nxt = quadratic_transform(cur, i, j, k)
        log.append(QuadraticStep((i, j, k), cur, nxt))
        cur = nxt
    if dim == -1:
        # an empty system has no meaningful fixed part
        fixed = {}
    obstructions = sorted(
        ((e, intersect(c, e)) for e in fixed if is_minus_one_class(e)),
        key=lambda t: (t[1], t[0].d),
    )
    return SpecialityReport(
        target=c,
        virtual_dim=virtual_dimension(c),
        expected_dim=expected_dimension(c),
        conjectural_dim=dim,
        obstructions=obstructions,
        reduction_log=log,
    )


def _points(seed: int, n: int, p: int) -> tuple[list[int], list[int]]:
    rng = random.Random(f"{seed}:{p}")
    return [rng.randrange(1, p) for _ in range(n)], [rng.randrange(1, p) for _ in range(n)]


def _exact_rank(c: ClassVector, seed: int) -> int:
    """Rank over the rationals with integer points, by fraction-free elimination."""
    from ._kernels_py import condition_rows

    rng = random.Random(f"exact:{seed}")
    xs = [rng.randrange(1, 10**6) for _ in range(c.n)]
    ys = [rng.randrange(1, 10**6) for _ in range(c.n)]
    rows = condition_rows(c.d, list(c.m), xs, ys)
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, len(rows)):
            ri = rows[i]
            rows[i] = [(pr[col] * ri[j] - ri[col] * pr[j]) // prev for j in range(ncols)]
        prev = pr[col]
        rank += 1
    return rank


def interpolation_dimension(c: ClassVector, seed: int = DEFAULT_SEED, retries: int = 4) -> int:
    """Dimension of ``(d; m)`` through pseudo-random points, by exact rank mod large primes.

    Special choices of points or primes can only lower the rank, so the
    answer is the dimension at the largest rank seen.  Two agreeing runs
    settle it; otherwise more runs are made, and a maximal rank seen at least
    twice wins.  Small unsettled systems go to an exact rational computation;
    anything else raises :class:`InstabilityError`.
    """
    if c.d < 0:
        raise NagataError("interpolation_dimension needs d >= 0")
    if any(x < 0 for x in c.m):
        raise NagataError("interpolation_dimension needs nonnegative multiplicities")
    ncols = (c.d + 1) * (c.d + 2) // 2
    nrows = sum(x * (x + 1) // 2 for x in c.m)
    if nrows == 0:
        return ncols - 1
    ranks: list[int] = []
    for t in range(max(2, retries)):
        p = PRIMES[t % len(PRIMES)]
        xs, ys = _points(seed + t, c.n, p)
        ranks.append(kernels.condition_rank(c.d, list(c.m), xs, ys, p))
        if len(ranks) >= 2:
            best = max(ranks)
            if ranks.count(best) >= 2:
                return ncols - best - 1
    if ncols <= EXACT_FALLBACK_MAX_COLS:
        return ncols - max(max(ranks), _exact_rank(c, seed)) - 1
    raise InstabilityError(f"ranks {ranks} for {c} did not settle")


def classify_speciality(c: ClassVector, seed: int = DEFAULT_SEED, oracle: bool | None = None) -> SpecialityReport:
    """Conjectural dimension plus the oracle value.

    For ``n <= 9`` SHGH is a theorem, so the two must agree; a mismatch is an
    :class:`InternalError`.  For larger ``n`` the oracle is attached as evidence.
    """
    report = conjectural_dimension(c)
    run = (c.n <= 9) if oracle is None else oracle
    if run and all(x >= 0 for x in c.m):
        report.oracle_dim = interpolation_dimension(c, seed)
        if c.n <= 9 and report.oracle_dim != report.conjectural_dim:
            raise InternalError(
                f"{c}: conjectural {report.conjectural_dim} != interpolation {report.oracle_dim}"
            )
    return report
