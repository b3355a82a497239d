"""Where a class sits relative to the nonnegative cone and the de Fernex half-spaces."""

from __future__ import annotations

from dataclasses import dataclass

from .cremona import is_minus_one_class
from .errors import NagataError, ValidationError
from .lattice import ClassVector, SurdSum, intersect, k_pairing, nagata_gap

__all__ = [
    "ConePosition",
    "q_position",
    "de_fernex_sign",
    "nagata_pairing_sign",
    "minus_one_boundary_check",
    "is_homogeneous",
]

_SIGN_NAMES = {-1: "negative", 0: "zero", 1: "positive"}


@dataclass(frozen=True)
class ConePosition:
    q_status: str
    k_pairing: int
    de_fernex_sign: str
    nagata_pairing_sign: str

    def to_json(self) -> dict:
        return {
            "q_status": self.q_status,
            "k_pairing": self.k_pairing,
            "de_fernex_sign": self.de_fernex_sign,
            "nagata_pairing_sign": self.nagata_pairing_sign,
        }


def _q_status(c: ClassVector) -> str:
    sq = intersect(c, c)
    if c.d < 0 or sq < 0:
        return "outside"
    return "boundary" if sq == 0 else "interior"


def _signed_pairing(c: ClassVector, root_of: int) -> int:
    """Sign of ``sqrt(root_of) * d - sum(m)``."""
    return (SurdSum.sqrt(root_of, c.d) - sum(c.m)).sign()


def de_fernex_sign(c: ClassVector) -> int:
    """Sign of ``c . D_n`` with ``D_n = (sqrt(n-1); 1^n)``."""
    if c.n < 2:
        raise NagataError("de Fernex class needs n >= 2")
    return _signed_pairing(c, c.n - 1)


def nagata_pairing_sign(c: ClassVector) -> int:
    """Sign of ``c . (sqrt(n); 1^n)``."""
    return _signed_pairing(c, c.n)


def q_position(c: ClassVector) -> ConePosition:
    """Position against ``Q_n = {xi . L >= 0, xi^2 >= 0}``; ``d < 0`` is outside."""
    if c.is_zero():
        raise NagataError("the zero class has no position")
    df = _SIGN_NAMES[de_fernex_sign(c)] if c.n >= 2 else "not-applicable"
    return ConePosition(
        q_status=_q_status(c),
        k_pairing=k_pairing(c),
        de_fernex_sign=df,
        nagata_pairing_sign=_SIGN_NAMES[nagata_pairing_sign(c)],
    )


def is_homogeneous(c: ClassVector) -> bool:
    return len(set(c.m)) <= 1


def minus_one_boundary_check(e: ClassVector) -> bool:
    """Whether ``(e + D_10)^2 == 0`` where ``D_10 = (3; 1^10) = -K_10``."""
    if e.n != 10:
        raise ValidationError("the boundary identity is checked on X_10 only")
    if not is_minus_one_class(e):
        raise ValidationError(f"{e} is not a (-1)-class")
    shifted = e + ClassVector(3, (1,) * 10)
    return intersect(shifted, shifted) == 0


def info(c: ClassVector) -> dict:
    pos = q_position(c)
    gap = nagata_gap(c)
    out = pos.to_json()
    out["nagata_gap"] = {"gap": gap.gap, "verdict": gap.verdict, "admissible": gap.admissible}
    out["self_intersection"] = intersect(c, c)
    out["homogeneous"] = is_homogeneous(c)
    return out
