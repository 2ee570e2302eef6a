"""Skew polynomials in tau and the rank-2 family phi_T = u tau^2 + (u+T) tau + T.

The supersingularity oracle uses only skew arithmetic: phi is supersingular
at L of degree d exactly when phi_L has no tau^j term for j < 2d.
"""

from __future__ import annotations

from dataclasses import dataclass

from .deuring import family, m_d
from .checks import Check
from .fields import FieldCtx, FieldElem, FieldError
from .grammar import format_poly
from .polys import MPoly, distinct_roots
from .primes import as_prime, is_T, residue_field2


class SkewPoly:
    """sum a_i tau^i over K with tau a = a^q tau, q = |Fq|."""

    __slots__ = ("K", "Fq", "coeffs")

    def __init__(self, K: FieldCtx, Fq: FieldCtx, coeffs):
        if not K.contains(Fq) and K != Fq:
            raise FieldError(f"{K.name} is not an extension of {Fq.name}")
        cs = [K.embed_code(c.v, c.ctx) if isinstance(c, FieldElem) else c for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.K, self.Fq, self.coeffs = K, Fq, tuple(cs)

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def coeff(self, i: int) -> FieldElem:
        return FieldElem(self.K, self.coeffs[i] if i < len(self.coeffs) else 0)

    def _check(self, o: "SkewPoly") -> None:
        if o.K != self.K or o.Fq != self.Fq:
            raise FieldError("skew polynomials over different contexts")

    def __add__(self, o: "SkewPoly | FieldElem | int") -> "SkewPoly":
        o = self._lift(o)
        a, b = self.coeffs, o.coeffs
        n = max(len(a), len(b))
        add = self.K.add
        return SkewPoly(self.K, self.Fq, [add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self) -> "SkewPoly":
        return SkewPoly(self.K, self.Fq, [self.K.neg(c) for c in self.coeffs])

    def __sub__(self, o) -> "SkewPoly":
        return self + (-self._lift(o))

    def _lift(self, o) -> "SkewPoly":
        if isinstance(o, SkewPoly):
            self._check(o)
            return o
        if isinstance(o, FieldElem):
            return SkewPoly(self.K, self.Fq, [o])
        return SkewPoly(self.K, self.Fq, [self.K.from_int(o)])

    def __mul__(self, o) -> "SkewPoly":
        """Twisted product: coefficient of tau^k is sum_{i+j=k} a_i b_j^{q^i}."""
        o = self._lift(o)
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return SkewPoly(self.K, self.Fq, [])
        K, q = self.K, self.Fq.size
        out = [0] * (len(a) + len(b) - 1)
        twisted = list(b)
        for i, ai in enumerate(a):
            if i:
                twisted = [K.pow(c, q) for c in twisted]
            if ai:
                for j, bj in enumerate(twisted):
                    if bj:
                        out[i + j] = K.add(out[i + j], K.mul(ai, bj))
        return SkewPoly(K, self.Fq, out)

    def __eq__(self, o) -> bool:
        return isinstance(o, SkewPoly) and self.K == o.K and self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash((self.K.key, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = self.K.format_code(c)
            if "+" in cs:
                cs = f"({cs})"
            mono = "" if i == 0 else ("tau" if i == 1 else f"tau^{i}")
            parts.append(cs if not mono else (mono if c == 1 else f"{cs}*{mono}"))
        return " + ".join(parts)


@dataclass(frozen=True)
class DrinfeldModule:
    """phi_T = u tau^2 + (u + alpha) tau + alpha over K = F_L^(2)."""

    L: MPoly
    u: FieldElem

    def __post_init__(self):
        if self.u.is_zero():
            raise ValueError("u = 0 does not give a rank-2 module")

    @property
    def Fq(self) -> FieldCtx:
        return self.L.ctx

    @property
    def K(self) -> FieldCtx:
        return self.u.ctx

    @property
    def alpha(self) -> FieldElem:
        return FieldElem(self.K, self.K.alpha)

    def phi_T(self) -> SkewPoly:
        a, u = self.alpha, self.u
        return SkewPoly(self.K, self.Fq, [a, u + a, u])

    def j_invariant(self) -> FieldElem:
        return (self.u + self.alpha) ** (self.Fq.size + 1) / self.u

    def phi_image(self, f: MPoly) -> SkewPoly:
        """phi_f by Horner: f = c_0 + T g gives phi_f = c_0 + phi_g * phi_T."""
        coeffs = f.univariate_coeffs("T") if f.vars else ([f.terms[()]] if f.terms else [])
        phiT = self.phi_T()
        out = SkewPoly(self.K, self.Fq, [])
        for c in reversed(coeffs):
            out = out * phiT + FieldElem(self.K, self.K.embed_code(c, f.ctx))
        return out

    def phi_L(self) -> SkewPoly:
        return self.phi_image(self.L)

    def is_supersingular(self) -> bool:
        d = self.L.degree()
        return all(c == 0 for c in self.phi_L().coeffs[: 2 * d])


def module_for(L: "MPoly | str", u: "FieldElem | int", Fq: FieldCtx | None = None) -> DrinfeldModule:
    Fq = Fq or (L.ctx if isinstance(L, MPoly) else None)
    L = as_prime(L, Fq)
    K = residue_field2(L)
    if not isinstance(u, FieldElem):
        u = FieldElem(K, K.from_int(u))
    elif u.ctx != K:
        u = FieldElem(K, K.embed_code(u.v, u.ctx))
    return DrinfeldModule(L, u)


@dataclass
class SupersingularReport:
    L: MPoly
    q: int
    m_d: int
    u_values: list[FieldElem]
    via_p_d: list[FieldElem]

    @property
    def agree(self) -> bool:
        return self.u_values == self.via_p_d

    @property
    def ok(self) -> bool:
        return self.agree and len(self.u_values) == self.m_d

    def to_json(self) -> dict:
        return {
            "L": format_poly(self.L),
            "q": self.q,
            "m_d": self.m_d,
            "u_values": [u.to_json() for u in self.u_values],
            "via_p_d": [u.to_json() for u in self.via_p_d],
            "agree": self.agree,
        }


def supersingular_u_set(L: "MPoly | str", Fq: FieldCtx | None = None) -> SupersingularReport:
    """Supersingular u two ways: oracle scan of K* and u = -rho alpha^q over roots rho of p_d^(L)."""
    Fq = Fq or L.ctx
    L = as_prime(L, Fq)
    if is_T(L):
        raise FieldError("L = T is excluded")
    K = residue_field2(L)
    q, d = Fq.size, L.degree()
    oracle = []
    for c in K.codes():
        if c and DrinfeldModule(L, FieldElem(K, c)).is_supersingular():
            oracle.append(FieldElem(K, c))
    alpha_q = FieldElem(K, K.alpha) ** q
    pd = family(Fq).p_mod(L, d)
    via = sorted((-(r.value * alpha_q) for r in distinct_roots(pd, K)), key=lambda x: x.sort_key())
    return SupersingularReport(L, q, m_d(q, d), oracle, via)


def run_all(q: int = 2) -> list[Check]:
    from .checks import timed
    from .deuring import prime_list
    from .fields import base_field

    out = []
    for L in prime_list(base_field(q)):
        name = format_poly(L)
        out.append(
            timed(
                f"supersingular q={q} L={name}",
                lambda L=L: (lambda r: Check("", r.ok, f"{len(r.u_values)}/{r.m_d}"))(supersingular_u_set(L)),
            )
        )
    return out
