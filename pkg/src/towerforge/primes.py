"""Primes of F_q[T]: parsing, validation and residue fields F_L, F_L^(2)."""

from __future__ import annotations

import functools

from .fields import FieldCtx, FieldError, extend_field, is_irreducible, quadratic_extension
from .grammar import format_poly, parse_poly
from .polys import MPoly


def as_prime(L: "MPoly | str", Fq: FieldCtx) -> MPoly:
    """Coerce to a monic irreducible polynomial in T over Fq, or raise FieldError."""
    if isinstance(L, str):
        L = parse_poly(L, Fq)
    if L.ctx != Fq:
        L = L.change_ring(Fq) if Fq.contains(L.ctx) else L
    if L.vars not in ((), ("T",)) or L.degree() < 1:
        raise FieldError(f"{format_poly(L)} is not a non-constant polynomial in T")
    coeffs = L.univariate_coeffs("T")
    if coeffs[-1] != 1:
        raise FieldError(f"{format_poly(L)} is not monic")
    if not is_irreducible(Fq, coeffs):
        raise FieldError(f"{format_poly(L)} is not irreducible over {Fq.name}")
    return L


def is_T(L: MPoly) -> bool:
    return L.univariate_coeffs("T") == [0, 1]


@functools.lru_cache(maxsize=None)
def _residue(Fq: FieldCtx, coeffs: tuple[int, ...]) -> FieldCtx:
    return extend_field(Fq, list(coeffs))


@functools.lru_cache(maxsize=None)
def _residue2(Fq: FieldCtx, coeffs: tuple[int, ...]) -> FieldCtx:
    return quadratic_extension(_residue(Fq, coeffs))


def residue_field(L: MPoly) -> FieldCtx:
    """F_L = F_q[T]/(L) with alpha the class of T."""
    return _residue(L.ctx, tuple(L.univariate_coeffs("T")))


def residue_field2(L: MPoly) -> FieldCtx:
    """F_L^(2), the quadratic extension of F_L, with alpha carried along."""
    return _residue2(L.ctx, tuple(L.univariate_coeffs("T")))
