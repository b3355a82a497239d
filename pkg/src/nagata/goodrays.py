"""Certified good rays on ``X_n`` for every ``n >= 10``.

A certificate is a tree.  Leaves are accepted rays (the three base rays for
10, 11 and 12 points, the square rays ``(d; 1^{d^2})`` with ``d >= 4``, and the
anticanonical ray on nine points, which is nef but effective).  An expansion
node splits one point of multiplicity ``mu`` into ``s in {4, 9}`` points of
multiplicity ``mu`` after scaling the parent by ``a = sqrt(s)``:

    (d; m_1, ..., mu, ..., m_t)  ->  (a d; a m_1, ..., mu^s, ..., a m_t)

The nef class ``D = (a; 1^s)`` with ``D^2 = 0`` is the auxiliary input.
Construction (:func:`expand_ray`) and checking (:func:`validate_certificate`)
are written separately; the validator never calls the constructor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

from .errors import NagataError, ValidationError
from .lattice import (
    ClassVector,
    Ray,
    SurdSum,
    intersect,
    k_pairing,
    primitive_normalize,
    surd_compare,
    virtual_dimension,
)
from .negcurves import DEFAULT_MAX_DEGREE, NefScan, nef_obstructions

__all__ = [
    "Axiom",
    "Expansion",
    "Certificate",
    "ValidationReport",
    "AXIOM_RAYS",
    "base_ray",
    "square_ray",
    "anticanonical_ray",
    "expand_ray",
    "good_ray_for_n",
    "validate_certificate",
    "certificate_to_json",
    "certificate_from_json",
    "bqp_ray",
    "surd_convergents",
    "sqrt10_pairs",
    "nagata_direction_distance",
    "waldschmidt_bounds",
]

SQUARE_ROOTS = {4: 2, 9: 3}

AXIOM_RAYS = {
    "sns-10": ClassVector.of(13, 5, (4, 9)),
    "sns-11": ClassVector.of(7, 3, (2, 10)),
    "sns-12": ClassVector.of(6, (2, 8), (1, 4)),
}
SQUARE = "square-nagata"
ANTICANONICAL = "anticanonical-9"


@dataclass(frozen=True)
class Axiom:
    id: str
    ray: Ray

    kind = "axiom"


@dataclass(frozen=True)
class Expansion:
    parent: "Certificate"
    index: int
    s: int
    ray: Ray

    kind = "expansion"


Certificate = Union[Axiom, Expansion]


def base_ray(n: int) -> Axiom:
    key = f"sns-{n}"
    if key not in AXIOM_RAYS:
        raise NagataError(f"no base ray for n={n}; expected 10, 11 or 12")
    return Axiom(key, primitive_normalize(AXIOM_RAYS[key]))


def square_ray(d: int) -> Axiom:
    if d < 4:
        raise NagataError("square rays (d; 1^{d^2}) are good only for d >= 4")
    return Axiom(SQUARE, primitive_normalize(ClassVector(d, (1,) * (d * d))))


def anticanonical_ray() -> Axiom:
    return Axiom(ANTICANONICAL, primitive_normalize(ClassVector(3, (1,) * 9)))


@lru_cache(maxsize=None)
def _auxiliary_nef(s: int) -> tuple[ClassVector, str]:
    """The class ``D = (sqrt s; 1^s)`` and how its nefness is known."""
    a = SQUARE_ROOTS[s]
    D = ClassVector(a, (1,) * s)
    if s == 4:
        scan = nef_obstructions(D, DEFAULT_MAX_DEGREE)
        if not scan.nef_certified:
            raise ValidationError("(2; 1^4) failed its nefness scan")
        return D, "enumeration:FULL"
    return D, f"axiom:{ANTICANONICAL}"


def _split_point(c: ClassVector, index: int, s: int) -> ClassVector:
    a = SQUARE_ROOTS[s]
    mu = c.m[index]
    m = [a * x for x in c.m[:index]] + [mu] * s + [a * x for x in c.m[index + 1:]]
    return ClassVector(a * c.d, tuple(m))


def expand_ray(cert: Certificate, index: int, s: int) -> Expansion:
    """Split point ``index`` of the certified ray into ``s`` points.

    Checks the auxiliary class, the normalisation ``sum nu_i^2 >= 1`` on the
    scaled parent, and the exact outcomes ``child^2 = 0`` and
    ``child . K = a (parent . K) + (s - a) mu >= 0``.
    """
    if s not in SQUARE_ROOTS:
        raise ValidationError(f"s={s} rejected: only s in {{4, 9}} avoid circular hypotheses")
    parent = cert.ray.rep
    if not 0 <= index < parent.n:
        raise ValidationError(f"index {index} out of range for n={parent.n}")
    mu = parent.m[index]
    if mu <= 0:
        raise ValidationError(f"multiplicity at index {index} is {mu}, need > 0")
    D, _ = _auxiliary_nef(s)
    if intersect(D, D) != 0:
        raise ValidationError("auxiliary class has nonzero square")
    a = SQUARE_ROOTS[s]
    # nu_i = (a mu) / s = mu / a for each of the s points, so sum nu_i^2 = mu^2
    if Fraction(mu, a) ** 2 * s < 1:
        raise ValidationError("sum of nu_i^2 < 1")
    child = _split_point(parent, index, s)
    if intersect(child, child) != 0:
        raise ValidationError("self-intersection != 0 after expansion")
    kp = k_pairing(child)
    if kp != a * k_pairing(parent) + (s - a) * mu:
        raise ValidationError("K-pairing relation failed")
    if kp < 0:
        raise ValidationError("K-pairing < 0 after expansion")
    return Expansion(cert, index, s, primitive_normalize(child))


def good_ray_for_n(n: int) -> Certificate:
    """Squares ``d^2 >= 16`` use the square ray; otherwise expand a base ray at index 0."""
    if n < 10:
        raise NagataError("good rays exist only for n >= 10")
    d = math.isqrt(n)
    if d * d == n and d >= 4:
        return square_ray(d)
    base = 10 + (n - 10) % 3
    cert: Certificate = base_ray(base)
    for _ in range((n - base) // 3):
        cert = expand_ray(cert, 0, 4)
    return cert


# ---------------------------------------------------------------------------
# Independent validation


@dataclass
class ValidationReport:
    valid: bool
    failures: list[tuple[str, str]] = field(default_factory=list)
    ray: ClassVector | None = None
    k_pairing: int | None = None
    depth: int = 0
    nef_scan: NefScan | None = None

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "failures": [{"path": p, "violation": v} for p, v in self.failures],
            "ray": self.ray.to_json() if self.ray is not None else None,
            "k_pairing": self.k_pairing,
            "depth": self.depth,
            "nef_scan": self.nef_scan.to_json() if self.nef_scan is not None else None,
        }


def _whitelisted(node: Axiom) -> str | None:
    c = node.ray.rep
    if node.id in AXIOM_RAYS:
        return None if c == AXIOM_RAYS[node.id] else "ray does not match the accepted base ray"
    if node.id == SQUARE:
        d = c.d
        if d < 4 or c.m != (1,) * (d * d):
            return "not of the form (d; 1^{d^2}) with d >= 4"
        return None
    if node.id == ANTICANONICAL:
        return None if c == ClassVector(3, (1,) * 9) else "not (3; 1^9)"
    return f"unknown axiom {node.id!r}"


def _check_expansion(node: Expansion) -> list[str]:
    P = node.parent.ray.rep
    C = node.ray.rep
    s, i = node.s, node.index
    errs: list[str] = []
    if s not in SQUARE_ROOTS:
        return [f"s={s} not in {{4, 9}}"]
    if not 0 <= i < P.n:
        return [f"index {i} out of range"]
    if C.n != P.n + s - 1:
        return [f"point count {C.n} != {P.n} + {s} - 1"]
    mu = P.m[i]
    if mu <= 0:
        errs.append("split point has nonpositive multiplicity")
    block = C.m[i:i + s]
    nu = block[0]
    if any(x != nu for x in block) or nu <= 0:
        errs.append("split points do not carry one common positive multiplicity")
    rest_c = C.m[:i] + C.m[i + s:]
    rest_p = P.m[:i] + P.m[i + 1:]
    if any(C.d * x != P.d * y for x, y in zip(rest_p, rest_c)):
        errs.append("untouched multiplicities are not proportional to the parent")
    # child ~ (d; (mu/sqrt s)^s, ...): (C.d mu)^2 == s (P.d nu)^2
    if (C.d * mu) ** 2 != s * (P.d * nu) ** 2:
        errs.append("split multiplicity is not mu/sqrt(s) in the child's scale")
    # auxiliary class D = (sqrt s; 1^s)
    a = math.isqrt(s)
    if a * a != s:
        errs.append("s is not a perfect square")
    D = ClassVector(a, (1,) * s)
    if intersect(D, D) != 0:
        errs.append("auxiliary class D^2 != 0")
    if s == 4:
        if not nef_obstructions(D, DEFAULT_MAX_DEGREE).nef_certified:
            errs.append("auxiliary class (2; 1^4) not certified nef")
    if not errs:
        # rescale to the integer representative a * parent
        lam = Fraction(C.d, a * P.d)
        expected_k = lam * (a * k_pairing(P) + (s - a) * mu)
        if Fraction(k_pairing(C)) != expected_k:
            errs.append("K-pairing differs from a*(parent.K) + (s-a)*mu")
        if Fraction(mu, a) ** 2 * s < 1:
            errs.append("sum of nu_i^2 < 1")
    return errs


def _check_node(node: Certificate, path: str, failures: list) -> int:
    c = node.ray.rep
    coords = c.coords()
    if math.gcd(*coords) != 1 or c.d <= 0:
        failures.append((path, "ray is not primitive with positive degree"))
    if intersect(c, c) != 0:
        failures.append((path, "self-intersection != 0"))
    if k_pairing(c) < 0:
        failures.append((path, "K-pairing < 0"))
    if isinstance(node, Axiom):
        problem = _whitelisted(node)
        if problem:
            failures.append((path, problem))
        elif node.id == ANTICANONICAL:
            # only usable as the auxiliary class of an s = 9 split
            failures.append((path, "anticanonical ray is nef but effective, not good"))
        elif node.id != ANTICANONICAL and 3 * c.d >= sum(c.m):
            failures.append((path, "goodness precondition 3d < sum(m) fails"))
        return 0
    if isinstance(node, Expansion):
        for err in _check_expansion(node):
            failures.append((path, err))
        return 1 + _check_node(node.parent, path + ".parent", failures)
    failures.append((path, f"unknown node type {type(node).__name__}"))
    return 0


def validate_certificate(
    cert: Certificate, max_degree: int = DEFAULT_MAX_DEGREE, scan: bool = True
) -> ValidationReport:
    """Re-derive every node's arithmetic and scan the root for nef obstructions."""
    failures: list[tuple[str, str]] = []
    depth = _check_node(cert, "root", failures)
    c = cert.ray.rep
    report = ValidationReport(not failures, failures, c, k_pairing(c), depth)
    if scan:
        report.nef_scan = nef_obstructions(c, max_degree)
        if report.nef_scan.obstructions:
            report.valid = False
            e, p = report.nef_scan.obstructions[0]
            failures.append(("root", f"meets (-1)-class {e} with pairing {p}"))
    return report


def certificate_to_json(cert: Certificate) -> dict:
    out = {"kind": cert.kind, "ray": cert.ray.rep.to_json()}
    if isinstance(cert, Axiom):
        out["id"] = cert.id
    else:
        out.update(index=cert.index, s=cert.s, parent=certificate_to_json(cert.parent))
    return out


def certificate_from_json(obj: dict) -> Certificate:
    try:
        ray = Ray(ClassVector.from_json(obj["ray"]))
        if obj["kind"] == "axiom":
            return Axiom(str(obj["id"]), ray)
        if obj["kind"] == "expansion":
            return Expansion(
                certificate_from_json(obj["parent"]), int(obj["index"]), int(obj["s"]), ray
            )
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed certificate: missing {exc}") from None
    raise ValidationError(f"unknown certificate kind {obj.get('kind')!r}")


# ---------------------------------------------------------------------------
# The B family on ten points and continued fractions


def bqp_ray(q: int, p: int) -> Ray:
    """``(9q^2 + p^2; 9q^2 - p^2, (2qp)^9)``, on the boundary of ``Q_10``."""
    if not 1 <= q <= p:
        raise NagataError(f"need 1 <= q <= p, got q={q}, p={p}")
    c = ClassVector(9 * q * q + p * p, (9 * q * q - p * p,) + (2 * q * p,) * 9)
    return primitive_normalize(c)


class Convergents(NamedTuple):
    values: list[Fraction]
    a0: int
    period: list[int]


def surd_convergents(n: int, k: int) -> Convergents:
    """First ``k`` convergents of ``sqrt(n)`` and the period of its expansion."""
    a0 = math.isqrt(n)
    if a0 * a0 == n:
        raise NagataError(f"{n} is a perfect square")
    if k < 1:
        raise NagataError("need k >= 1")
    period: list[int] = []
    m, den, a = 0, 1, a0
    while True:
        m = den * a - m
        den = (n - m * m) // den
        a = (a0 + m) // den
        period.append(a)
        if a == 2 * a0:
            break
    values: list[Fraction] = []
    h_prev, h = 1, a0
    k_prev, kk = 0, 1
    values.append(Fraction(h, kk))
    i = 0
    while len(values) < k:
        a = period[i % len(period)]
        h_prev, h = h, a * h + h_prev
        k_prev, kk = kk, a * kk + k_prev
        values.append(Fraction(h, kk))
        i += 1
    return Convergents(values, a0, period)


def sqrt10_pairs(k: int) -> list[tuple[int, int]]:
    """``(q, p)`` with ``(p + q) / q`` the convergents of ``sqrt(10)``."""
    return [(c.denominator, c.numerator - c.denominator) for c in surd_convergents(10, k).values]


def nagata_direction_distance(c: ClassVector) -> SurdSum:
    """Max-norm distance from ``(1; m_i / d)`` to ``(1; 1/sqrt(n), ...)``."""
    if c.d <= 0:
        raise NagataError("direction needs positive degree")
    target = SurdSum.sqrt(c.n, Fraction(1, c.n))
    best = SurdSum()
    for x in sorted(set(c.m)):
        gap = abs(SurdSum.rational(Fraction(x, c.d)) - target)
        if surd_compare(gap, best) > 0:
            best = gap
    return best


# ---------------------------------------------------------------------------
# Waldschmidt-type bounds


class WaldschmidtBounds(NamedTuple):
    lower: SurdSum | None
    upper: list[Fraction]
    certified_by: str | None


def _least_degree(m: tuple[int, ...], k: int) -> int:
    """Least ``d >= 0`` with ``v(d; k m) >= 0``."""
    km = tuple(k * x for x in m)
    lo, hi = 0, 1
    while virtual_dimension(ClassVector(hi, km)) < 0:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if virtual_dimension(ClassVector(mid, km)) >= 0:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _auto_certificate(c: ClassVector) -> str | None:
    canon = c.canonical()
    for key, ray in AXIOM_RAYS.items():
        if ray.canonical() == canon:
            return f"axiom:{key}"
    if canon.m and set(canon.m) == {1} and canon.d ** 2 == canon.n:
        if canon.d >= 4:
            return f"axiom:{SQUARE}"
        if canon.d == 3:
            return f"axiom:{ANTICANONICAL}"
    if 2 <= c.n <= 8 and nef_obstructions(c).nef_certified:
        return "enumeration:FULL"
    return None


def waldschmidt_bounds(
    m, delta, k_max: int, certificate: Certificate | None = None
) -> WaldschmidtBounds:
    """Bounds on ``alpha(a_k) / k`` for the fat-point ideals ``a_k`` of ``(k m)``.

    ``upper[k-1]`` is the least degree with nonnegative virtual dimension,
    divided by ``k``.  ``lower`` is ``delta`` when the ray ``(delta; m)`` is known
    to be nef (a certificate, an accepted ray, or a FULL scan), else ``None``.
    """
    m = tuple(int(x) for x in m)
    delta = delta if isinstance(delta, SurdSum) else SurdSum.rational(delta)
    if delta * delta != SurdSum.rational(sum(x * x for x in m)) or delta.sign() <= 0:
        raise NagataError("delta^2 must equal the sum of squared multiplicities")
    upper = [Fraction(_least_degree(m, k), k) for k in range(1, k_max + 1)]
    source = None
    if delta.is_rational():
        dv = Fraction(delta.terms.get(1, 0))
        c = ClassVector(dv.numerator, tuple(x * dv.denominator for x in m))
        if certificate is not None:
            report = validate_certificate(certificate, scan=False)
            if not report.valid:
                raise ValidationError(f"certificate invalid: {report.failures}")
            if certificate.ray.rep.canonical() != primitive_normalize(c).rep.canonical():
                raise ValidationError("certificate ray differs from (delta; m)")
            source = "certificate"
        else:
            source = _auto_certificate(primitive_normalize(c).rep)
    return WaldschmidtBounds(delta if source else None, upper, source)
