"""Picard lattice of the plane blown up at n points.

Classes are written ``(d; m_1, ..., m_n)`` in the basis ``(L, -E_1, ..., -E_n)``,
so the exceptional curve ``E_i`` has ``m_i = -1`` and the canonical class is
``K_n = (-3; -1^n)``.  All arithmetic is on Python ints; nothing is clamped.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatchError, NagataError, ParseError

__all__ = [
    "ClassVector",
    "Ray",
    "SurdSum",
    "NagataGap",
    "canonical_class",
    "intersect",
    "k_pairing",
    "virtual_dimension",
    "expected_dimension",
    "arithmetic_genus",
    "nagata_gap",
    "surd_compare",
    "primitive_normalize",
    "parse_class",
    "format_class",
]


@dataclass(frozen=True)
class ClassVector:
    d: int
    m: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))

    @property
    def n(self) -> int:
        return len(self.m)

    @classmethod
    def of(cls, d: int, *runs) -> "ClassVector":
        """Build from ``(value, count)`` runs, e.g. ``ClassVector.of(13, 5, (4, 9))``."""
        m: list[int] = []
        for run in runs:
            if isinstance(run, tuple):
                value, count = run
                m.extend([value] * count)
            else:
                m.append(run)
        return cls(d, tuple(m))

    def coords(self) -> tuple[int, ...]:
        return (self.d,) + self.m

    def canonical(self) -> "ClassVector":
        """Same class with multiplicities sorted descending (points unlabeled)."""
        return ClassVector(self.d, tuple(sorted(self.m, reverse=True)))

    def padded(self, n: int) -> "ClassVector":
        if n < self.n:
            raise DimensionMismatchError(f"cannot pad {self.n} points down to {n}")
        return ClassVector(self.d, self.m + (0,) * (n - self.n))

    def is_zero(self) -> bool:
        return self.d == 0 and not any(self.m)

    def __add__(self, other: "ClassVector") -> "ClassVector":
        _check_same_n(self, other)
        return ClassVector(self.d + other.d, tuple(a + b for a, b in zip(self.m, other.m)))

    def __sub__(self, other: "ClassVector") -> "ClassVector":
        _check_same_n(self, other)
        return ClassVector(self.d - other.d, tuple(a - b for a, b in zip(self.m, other.m)))

    def __neg__(self) -> "ClassVector":
        return ClassVector(-self.d, tuple(-a for a in self.m))

    def scale(self, k: int) -> "ClassVector":
        return ClassVector(k * self.d, tuple(k * a for a in self.m))

    def __str__(self) -> str:
        return format_class(self)

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "m": list(self.m)}

    @classmethod
    def from_json(cls, obj: dict) -> "ClassVector":
        try:
            c = cls(int(obj["d"]), tuple(int(x) for x in obj["m"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad class JSON ({exc})", json.dumps(obj), 0) from None
        if "n" in obj and int(obj["n"]) != c.n:
            raise ParseError("field n disagrees with len(m)", json.dumps(obj), 0)
        return c


def _check_same_n(a: ClassVector, b: ClassVector) -> None:
    if a.n != b.n:
        raise DimensionMismatchError(f"classes on X_{a.n} and X_{b.n}")


def canonical_class(n: int) -> ClassVector:
    return ClassVector(-3, (-1,) * n)


def intersect(a: ClassVector, b: ClassVector) -> int:
    _check_same_n(a, b)
    return a.d * b.d - sum(x * y for x, y in zip(a.m, b.m))


def k_pairing(c: ClassVector) -> int:
    """``c . K``, which is ``-3d + sum(m)``."""
    return -3 * c.d + sum(c.m)


def virtual_dimension(c: ClassVector) -> int:
    return (c.d * (c.d + 3) - sum(x * (x + 1) for x in c.m)) // 2


def expected_dimension(c: ClassVector) -> int:
    return max(-1, virtual_dimension(c))


def arithmetic_genus(c: ClassVector) -> int:
    return 1 + (intersect(c, c) + k_pairing(c)) // 2


# ---------------------------------------------------------------------------
# Nagata inequality


class NagataGap(NamedTuple):
    gap: int
    verdict: str
    admissible: bool


def nagata_gap(c: ClassVector) -> NagataGap:
    """Exact status of ``sqrt(n) * d >= sum(m)``.

    ``gap`` is ``n d^2 - (sum m)^2``; the verdict comes from the exact sign of
    ``sqrt(n) d - sum(m)`` (the two agree whenever ``d, sum(m) >= 0``).
    Equality is admissible only for ``n = 9``.
    """
    n = c.n
    total = sum(c.m)
    gap = n * c.d * c.d - total * total
    if n < 9:
        return NagataGap(gap, "not-applicable", True)
    sign = SurdSum.sqrt(n, c.d).sub_rational(total).sign()
    if sign > 0:
        return NagataGap(gap, "satisfies-strict", True)
    if sign == 0:
        return NagataGap(gap, "equality", n == 9)
    return NagataGap(gap, "violates", False)


# ---------------------------------------------------------------------------
# Exact sums of square roots


def _square_free(s: int) -> tuple[int, int]:
    """Split ``s = k^2 * r`` with ``r`` square-free; returns ``(k, r)``."""
    if s < 0:
        raise ValueError("negative radicand")
    if s == 0:
        return 0, 1
    k, r = 1, 1
    p = 2
    while p * p <= s:
        e = 0
        while s % p == 0:
            s //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            r *= p
        p += 1 if p == 2 else 2
    return k, r * s


class SurdSum:
    """An exact finite sum ``sum c_i sqrt(s_i)`` with rational ``c_i``.

    Radicands are kept square-free and zero coefficients are dropped, so the
    representation is unique: square roots of distinct square-free integers are
    linearly independent over the rationals.  That makes ``== 0`` a syntactic
    test; strict signs are then settled by refining rational enclosures.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, Fraction] | Iterable[tuple[int, object]] = ()):
        acc: dict[int, Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for radicand, coeff in items:
            k, r = _square_free(int(radicand))
            q = Fraction(coeff) * k
            if q:
                acc[r] = acc.get(r, Fraction(0)) + q
        self._terms = tuple(sorted((r, c) for r, c in acc.items() if c))

    @classmethod
    def sqrt(cls, s: int, coeff=1) -> "SurdSum":
        return cls([(s, coeff)])

    @classmethod
    def rational(cls, q) -> "SurdSum":
        return cls([(1, q)])

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other) -> "SurdSum":
        other = _as_surd(other)
        return SurdSum(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self) -> "SurdSum":
        return SurdSum([(r, -c) for r, c in self._terms])

    def __sub__(self, other) -> "SurdSum":
        return self + (-_as_surd(other))

    def __rsub__(self, other) -> "SurdSum":
        return _as_surd(other) - self

    def sub_rational(self, q) -> "SurdSum":
        return self - SurdSum.rational(q)

    def __mul__(self, other) -> "SurdSum":
        if isinstance(other, (int, Fraction)):
            return SurdSum([(r, c * other) for r, c in self._terms])
        other = _as_surd(other)
        return SurdSum(
            [(r1 * r2, c1 * c2) for r1, c1 in self._terms for r2, c2 in other._terms]
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        try:
            other = _as_surd(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __lt__(self, other) -> bool:
        return surd_compare(self, _as_surd(other)) < 0

    def __le__(self, other) -> bool:
        return surd_compare(self, _as_surd(other)) <= 0

    def __gt__(self, other) -> bool:
        return surd_compare(self, _as_surd(other)) > 0

    def __ge__(self, other) -> bool:
        return surd_compare(self, _as_surd(other)) >= 0

    def __abs__(self) -> "SurdSum":
        return -self if self.sign() < 0 else self

    def is_rational(self) -> bool:
        return all(r == 1 for r, _ in self._terms)

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational interval containing the value, each root known to ``2**-bits``."""
        scale = 1 << bits
        lo = hi = Fraction(0)
        for r, c in self._terms:
            root = math.isqrt(r << (2 * bits))
            exact = root * root == r << (2 * bits)
            a = Fraction(root, scale)
            b = a if exact else Fraction(root + 1, scale)
            if c > 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        return lo, hi

    def separation_bits(self) -> int:
        """Precision that provably resolves the sign of a nonzero value.

        Clearing denominators by ``D`` gives an algebraic integer whose norm (the
        product of its at most ``2^t`` conjugates) is a nonzero integer; every
        conjugate is bounded by ``B = sum |D c_i| (isqrt(s_i) + 1)``, hence
        ``|value| >= 1 / (D * B^(2^t - 1))``.
        """
        t = sum(1 for r, _ in self._terms if r != 1)
        den = reduce(math.lcm, (c.denominator for _, c in self._terms), 1)
        bound = sum(abs(c * den) * (math.isqrt(r) + 1) for r, c in self._terms)
        bound_bits = math.ceil(bound).bit_length()
        weight = sum(abs(c) for _, c in self._terms) + 1
        return ((1 << t) - 1) * bound_bits + den.bit_length() + math.ceil(weight).bit_length() + 4

    def sign(self) -> int:
        if not self._terms:
            return 0
        if self.is_rational():
            return 1 if self._terms[0][1] > 0 else -1
        limit = self.separation_bits()
        bits = 64
        while True:
            lo, hi = self.enclosure(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            if bits > limit:
                raise NagataError("surd sign unresolved past the separation bound")
            bits *= 2

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __float__(self) -> float:
        lo, hi = self.enclosure(64)
        return float((lo + hi) / 2)

    def __repr__(self) -> str:
        return f"SurdSum({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for r, c in self._terms:
            if r == 1:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"sqrt({r})")
            elif c == -1:
                parts.append(f"-sqrt({r})")
            else:
                parts.append(f"{c}*sqrt({r})")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [[r, str(c)] for r, c in self._terms]

    @classmethod
    def from_json(cls, obj) -> "SurdSum":
        return cls([(int(r), Fraction(c)) for r, c in obj])


def _as_surd(x) -> SurdSum:
    if isinstance(x, SurdSum):
        return x
    if isinstance(x, (int, Fraction)):
        return SurdSum.rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as a surd sum")


def surd_compare(a: SurdSum | int | Fraction, b: SurdSum | int | Fraction) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    return (_as_surd(a) - _as_surd(b)).sign()


# ---------------------------------------------------------------------------
# Rays


@dataclass(frozen=True)
class Ray:
    """A primitive, positively oriented representative of ``{t c : t > 0}``."""

    rep: ClassVector
    scale: int = 1

    @property
    def n(self) -> int:
        return self.rep.n

    def __str__(self) -> str:
        return f"[{format_class(self.rep)}]"


def primitive_normalize(c: ClassVector) -> Ray:
    """Divide out the content; the first nonzero coordinate is made positive.

    ``scale`` is the signed integer that was divided out, so ``c == rep * scale``.
    """
    coords = c.coords()
    g = reduce(math.gcd, coords, 0)
    if g == 0:
        raise NagataError("the zero class does not span a ray")
    first = next(x for x in coords if x)
    if first < 0:
        g = -g
    return Ray(ClassVector(c.d // g, tuple(x // g for x in c.m)), g)


# ---------------------------------------------------------------------------
# Text form ``d;m1,m2^k,...``

_ENTRY = re.compile(r"\s*(-?\d+)(?:\s*\^\s*(\d+))?\s*")


def parse_class(text: str) -> ClassVector:
    if ";" not in text:
        raise ParseError("expected 'd;multiplicities'", text, len(text))
    head, _, tail = text.partition(";")
    head_match = re.fullmatch(r"\s*(-?\d+)\s*", head)
    if not head_match:
        raise ParseError("bad degree", text, 0)
    m: list[int] = []
    pos = len(head) + 1
    if tail.strip():
        for chunk in tail.split(","):
            match = _ENTRY.fullmatch(chunk)
            if not match:
                raise ParseError("bad multiplicity entry", text, pos)
            value = int(match.group(1))
            count = int(match.group(2)) if match.group(2) is not None else 1
            m.extend([value] * count)
            pos += len(chunk) + 1
    return ClassVector(int(head_match.group(1)), tuple(m))


def format_class(c: ClassVector) -> str:
    runs: list[str] = []
    i = 0
    while i < c.n:
        j = i
        while j < c.n and c.m[j] == c.m[i]:
            j += 1
        count = j - i
        runs.append(f"{c.m[i]}^{count}" if count > 1 else str(c.m[i]))
        i = j
    return f"{c.d};{','.join(runs)}"


def classes_from(seq: Sequence[ClassVector | str]) -> list[ClassVector]:
    return [parse_class(x) if isinstance(x, str) else x for x in seq]
