"""Recursive towers over finite fields: step relations, fibers, splitting and genus.

A tower is given by one bivariate relation R(X, Y) with X the previous
variable and Y the next one. Relations are normalized so that the X^q term
has coefficient -1, which makes equal towers compare equal as MPolys.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .checks import Check, timed
from .deuring import family, m_d
from .fields import FieldCtx, FieldElem, FieldError, base_field, quadratic_extension
from .grammar import format_poly, parse_element
from .polys import MPoly, RatFun, exact_divide, substitute
from .primes import as_prime, is_T, residue_field, residue_field2

KINDS = ("E", "F", "gamma", "gs", "elkies", "example_fP")
MAX_WORK = 2**22


class GuardError(ValueError):
    """Requested enumeration exceeds the work guard."""


class DegenerateStep(ValueError):
    """R(a, Y) vanishes identically."""


def max_work(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("TOWERFORGE_MAX_WORK")
    return int(env) if env else MAX_WORK


@dataclass
class TowerSpec:
    kind: str
    q: int
    K: FieldCtx
    relation: MPoly
    step_degree: int
    genus_type: str | None = None
    alpha: FieldElem | None = None
    L: MPoly | None = None
    gamma: FieldElem | None = None
    params: dict = field(default_factory=dict)
    _roots: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.relation.degree("Y") != self.step_degree:
            raise ValueError(f"relation has Y-degree {self.relation.degree('Y')}, declared {self.step_degree}")

    @property
    def name(self) -> str:
        if self.L is not None:
            return f"{self.kind}^({format_poly(self.L)})"
        if self.gamma is not None:
            return f"{self.kind}(gamma={self.gamma})"
        return self.kind

    @property
    def d(self) -> int:
        """Degree over F_q of the reduction point alpha."""
        if self.alpha is None:
            raise ValueError(f"{self.kind} tower has no reduction point")
        a, x, k = self.alpha, self.alpha ** self.q, 1
        while x != a:
            x, k = x ** self.q, k + 1
        return k

    @property
    def dv_bound(self) -> int:
        r = math.isqrt(self.K.size)
        if r * r != self.K.size:
            raise ValueError(f"|K| = {self.K.size} is not a square")
        return r - 1


def _normalize(R: MPoly, q: int) -> MPoly:
    lead = R.terms.get(_exp(R, {"X": q}))
    if lead is None:
        return R
    return R.scale(FieldElem(R.ctx, R.ctx.neg(R.ctx.inv(lead))))


def _exp(R: MPoly, powers: dict) -> tuple[int, ...]:
    return tuple(powers.get(v, 0) for v in R.vars)


def e_relation(K: FieldCtx, q: int, c: FieldElem) -> MPoly:
    """c (X+1)^{q-1} (Y+1)^{q-1} Y - X^q, c the inverse of the right-hand factor."""
    X, Y = MPoly.var(K, "X"), MPoly.var(K, "Y")
    return _normalize(((X + 1) ** (q - 1) * (Y + 1) ** (q - 1) * Y).scale(c) - X**q, q)


def f_relation(K: FieldCtx, q: int, c: FieldElem) -> MPoly:
    """c (X^{q-1}+1)(Y^q+Y) - X^q."""
    X, Y = MPoly.var(K, "X"), MPoly.var(K, "Y")
    return _normalize(((X ** (q - 1) + 1) * (Y**q + Y)).scale(c) - X**q, q)


def make_tower(kind: str, q: int | FieldCtx = 2, L=None, gamma=None, variant: str = "F", level: str | None = None) -> TowerSpec:
    """Build a builtin tower.

    E, F: reductions at a prime L != T with alpha = T mod L, over F_L^(2).
    gamma: the gamma family (variant F or E) over the quadratic extension of gamma's field.
    gs, elkies: the alpha = 1 forms over F_{q^2}.
    example_fP: a reduced modular relation f_P mod L (q = 2 only).
    """
    Fq = q if isinstance(q, FieldCtx) else base_field(q)
    q = Fq.size
    if kind in ("E", "F"):
        if L is None:
            raise ValueError(f"{kind} tower needs L")
        L = as_prime(L, Fq)
        if is_T(L):
            raise FieldError("L = T is excluded")
        K = residue_field2(L)
        alpha = FieldElem(K, K.alpha)
        if kind == "E":
            R = e_relation(K, q, alpha ** (q - 1))
        else:
            R = f_relation(K, q, alpha)
        return TowerSpec(kind, q, K, R, q, kind, alpha, L=L)
    if kind == "gamma":
        if gamma is None:
            raise ValueError("gamma tower needs gamma")
        if isinstance(gamma, str):
            gamma = parse_element(gamma, Fq)
        if gamma.is_zero():
            raise FieldError("gamma = 0 is excluded")
        if not gamma.ctx.contains(Fq) and gamma.ctx != Fq:
            raise FieldError(f"gamma lives in {gamma.ctx.name}, not an extension of {Fq.name}")
        K = quadratic_extension(gamma.ctx)
        g = FieldElem(K, K.embed_code(gamma.v, gamma.ctx))
        if variant == "F":
            R = f_relation(K, q, g.inverse())
        elif variant == "E":
            R = e_relation(K, q, g.inverse() ** (q - 1))
        else:
            raise ValueError(f"unknown gamma variant {variant!r}")
        return TowerSpec("gamma", q, K, R, q, variant, g.inverse(), gamma=g, params={"variant": variant})
    if kind in ("gs", "elkies"):
        K = quadratic_extension(Fq)
        one = K.one
        R = f_relation(K, q, one) if kind == "gs" else e_relation(K, q, one)
        return TowerSpec(kind, q, K, R, q, "F" if kind == "gs" else "E", one)
    if kind == "example_fP":
        from . import modular

        if q != 2:
            raise FieldError("modular example data exists only for q = 2")
        level = level or "T^2+T+1"
        L = as_prime(L if L is not None else "T", Fq)
        f = modular.reduce_example(level, L)
        K = residue_field2(L)
        R = f.change_ring(K)
        return TowerSpec("example_fP", q, K, R, R.degree("Y"), None, None, L=L, params={"level": level})
    raise ValueError(f"unknown tower kind {kind!r}; expected one of {KINDS}")


# fibers ---------------------------------------------------------------


@dataclass(frozen=True)
class Chain:
    level: int
    elements: tuple[FieldElem, ...]

    def sort_key(self):
        return tuple(e.sort_key() for e in self.elements)

    def to_json(self) -> list:
        return [e.to_json() for e in self.elements]


class StepRoots(NamedTuple):
    roots: tuple[FieldElem, ...]
    complete: bool


def step_roots(tower: TowerSpec, a: FieldElem) -> StepRoots:
    """Distinct roots in K of R(a, Y), sorted; complete iff there are deg_Y R of them, all simple."""
    K = tower.K
    code = K.embed_code(a.v, a.ctx)
    cache = tower._roots
    if code in cache:
        return cache[code]
    f = tower.relation.specialize({"X": FieldElem(K, code)}, K)
    if f.is_zero():
        raise DegenerateStep(f"R({a}, Y) vanishes identically")
    coeffs = f.univariate_coeffs("Y") if "Y" in f.vars else [f.constant_value().v]
    dcoeffs = [K.mul(K.from_int(i), c) for i, c in enumerate(coeffs)][1:]
    roots, simple = [], True
    for x in K.codes():
        if _horner(K, coeffs, x) == 0:
            roots.append(FieldElem(K, x))
            simple = simple and _horner(K, dcoeffs, x) != 0
    roots.sort(key=lambda r: r.sort_key())
    res = StepRoots(tuple(roots), simple and len(roots) == tower.step_degree)
    cache[code] = res
    return res


def _horner(K: FieldCtx, coeffs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = K.add(K.mul(acc, x), c)
    return acc


def _guard(tower: TowerSpec, n: int, limit: int | None) -> None:
    work = n * tower.step_degree**n
    cap = max_work(limit)
    if work > cap:
        raise GuardError(f"level {n} needs work {work} > guard {cap}")


class Fiber(NamedTuple):
    chains: list[Chain]
    complete: bool


def fiber_enumerate(tower: TowerSpec, a: FieldElem, n: int, limit: int | None = None) -> Fiber:
    """All chains (a_0 = a, ..., a_n) in K, depth first in sorted order."""
    _guard(tower, n, limit)
    K = tower.K
    a = FieldElem(K, K.embed_code(a.v, a.ctx))
    chains: list[Chain] = []
    complete = True

    def walk(path):
        nonlocal complete
        if len(path) == n + 1:
            chains.append(Chain(n, tuple(path)))
            return
        try:
            step = step_roots(tower, path[-1])
        except DegenerateStep:
            complete = False
            return
        complete = complete and step.complete
        for b in step.roots:
            walk(path + [b])

    walk([a])
    return Fiber(chains, complete)


# splitting ------------------------------------------------------------

_SET_MAPS = {
    "E": lambda K, q, a: K.mul(a, K.pow(K.add(a, 1), q - 1)),
    "F": lambda K, q, a: K.pow(K.add(K.pow(a, q), a), q - 1),
    "F_literal": lambda K, q, a: K.add(K.pow(a, q), a),
}


def p_d_at(Fq: FieldCtx, d: int, alpha: FieldElem) -> list[int]:
    """Coefficient codes (in alpha's field) of p_d(s) with T replaced by alpha."""
    K = alpha.ctx
    r = family(Fq).p_exact(d)
    num = r.num.specialize({"T": alpha}, K)
    den = r.den.specialize({"T": alpha}, K).constant_value()
    if den.is_zero():
        raise FieldError("alpha = 0 is a pole of p_d")
    inv = den.inverse().v
    cs = num.univariate_coeffs("s") if num.vars else [num.constant_value().v]
    return [K.mul(c, inv) for c in cs]


def splitting_points(tower: TowerSpec, tag: str | None = None) -> list[FieldElem]:
    """a in K with p_d(f(a)) = 0 at T = alpha, f chosen by the tower type (E or F)."""
    tag = tag or tower.genus_type
    if tag not in _SET_MAPS or tower.alpha is None:
        raise ValueError(f"{tower.name} has no splitting-set rule")
    K, q = tower.K, tower.q
    coeffs = p_d_at(base_field(q), tower.d, tower.alpha)
    f = _SET_MAPS[tag]
    return [FieldElem(K, a) for a in K.codes() if _horner(K, coeffs, f(K, q, a)) == 0]


@dataclass
class Certificate:
    points: list[FieldElem]
    level: int
    counts: dict
    complete: bool
    closed: bool
    q_n: int = 1

    @property
    def N_lb(self) -> int:
        return sum(self.counts.values())

    @property
    def ok(self) -> bool:
        expected = self.level and self.counts and all(c == self.q_n for c in self.counts.values())
        return bool(self.complete and self.closed and (expected or self.level == 0))


def certify_splitting(tower: TowerSpec, S=None, n: int = 1, limit: int | None = None) -> Certificate:
    """Count chains of length n from every a in S by memoized DFS, checking closure under steps.

    The count equals len(fiber_enumerate(...).chains); memoization keeps it
    linear in |S| * n even when q^n chains exist.
    """
    _guard(tower, n, limit)
    pts = list(S) if S is not None else splitting_points(tower)
    K = tower.K
    pts = [FieldElem(K, K.embed_code(a.v, a.ctx)) for a in pts]
    members = {a.v for a in pts}
    memo: dict = {}
    state = {"complete": True, "closed": True}

    def count(a: FieldElem, k: int) -> int:
        if k == 0:
            return 1
        key = (a.v, k)
        if key in memo:
            return memo[key]
        try:
            step = step_roots(tower, a)
        except DegenerateStep:
            state["complete"] = False
            memo[key] = 0
            return 0
        if not step.complete:
            state["complete"] = False
        if any(b.v not in members for b in step.roots):
            state["closed"] = False
        memo[key] = total = sum(count(b, k - 1) for b in step.roots)
        return total

    counts = {a.v: count(a, n) for a in pts}
    return Certificate(pts, n, counts, state["complete"], state["closed"], q_n=tower.step_degree**n)


# genus ----------------------------------------------------------------


class Genus(NamedTuple):
    value: Fraction
    flags: tuple[str, ...]

    def __str__(self) -> str:
        return str(self.value)


def genus_E(n: int, q: int) -> Genus:
    """Closed genus formula for the E-type tower at level n (exact, with anomaly flags)."""
    lo = (n - 1) // 2
    tail = Fraction(q) ** lo
    num = q ** (n + 2) + q ** (n + 1) - (q + 1) * (2 + q + q ** (2 + n // 2) + tail)
    g = Fraction(num) / (q * q - 1)
    flags = []
    if g.denominator != 1:
        flags.append("non-integral")
    if g <= 0:
        flags.append("non-positive")
    if n < 3:
        flags.append("small-level")
    return Genus(g, tuple(flags))


def genus_F(n: int, q: int) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n % 2:
        return (q ** ((n + 1) // 2) - 1) ** 2
    return (q ** ((n + 2) // 2) - 1) * (q ** (n // 2) - 1)


def genus_bound_holds(n: int, q: int) -> bool:
    """(g(F_n) - 1)/q^n <= q, in exact arithmetic."""
    return Fraction(genus_F(n, q) - 1, q**n) <= q


# reports --------------------------------------------------------------

REPORT_COLUMNS = (
    "tower", "q", "L", "gamma", "field", "level", "split_size", "complete",
    "N_lb", "genus", "genus_flags", "ratio", "dv_bound", "prop22_ok",
)


@dataclass
class SplitReport:
    tower: str
    q: int
    L: str | None
    gamma: str | None
    field: dict
    level: int
    split_size: int
    complete: bool
    N_lb: int
    genus: Fraction
    genus_flags: tuple[str, ...]
    dv_bound: int
    prop22_ok: bool | None

    @property
    def ratio(self) -> float | None:
        if self.genus <= 0:
            return None
        return float(Fraction(self.N_lb) / self.genus)

    def to_json(self) -> dict:
        out = {}
        for k in REPORT_COLUMNS:
            v = getattr(self, k)
            if k == "genus":
                v = str(v)
            elif k == "genus_flags":
                v = list(v)
            elif k == "ratio" and v is not None:
                v = round(v, 12)
            out[k] = v
        return out

    def csv_row(self) -> list[str]:
        row = []
        for k, v in self.to_json().items():
            if k == "field":
                v = f"{v['p']}^{len(v['modulus']) - 1}"
            elif k == "genus_flags":
                v = ";".join(v)
            row.append("" if v is None else str(v).lower() if isinstance(v, bool) else str(v))
        return row


def genus_for(tower: TowerSpec, n: int) -> Genus:
    if tower.genus_type == "E":
        return genus_E(n, tower.q)
    if tower.genus_type == "F":
        return Genus(Fraction(genus_F(n, tower.q)), ())
    raise ValueError(f"{tower.name} has no genus formula")


def dv_report(tower: TowerSpec, n: int, S=None, limit: int | None = None) -> SplitReport:
    g = genus_for(tower, n)
    cert = certify_splitting(tower, S, n, limit)
    return SplitReport(
        tower=tower.kind if tower.kind != "gamma" else f"gamma-{tower.genus_type}",
        q=tower.q,
        L=format_poly(tower.L) if tower.L is not None else None,
        gamma=repr(tower.gamma) if tower.gamma is not None else None,
        field=tower.K.to_json(),
        level=n,
        split_size=len(cert.points),
        complete=cert.ok,
        N_lb=cert.N_lb,
        genus=g.value,
        genus_flags=g.flags,
        dv_bound=tower.dv_bound,
        prop22_ok=genus_bound_holds(n, tower.q) if tower.genus_type == "F" else None,
    )


def dv_series(tower: TowerSpec, levels, limit: int | None = None) -> list[SplitReport]:
    S = splitting_points(tower)
    return [dv_report(tower, n, S, limit) for n in levels]


# identities -----------------------------------------------------------


def _rat(ctx: FieldCtx, name: str) -> RatFun:
    return RatFun(MPoly.var(ctx, name))


def identity_factorization(q: int) -> Check:
    """(u0+T^q)^{q+1}/u0^q - (u1+T)^{q+1}/u1 splits off the factor u0 - T^{q+1}/u1."""
    F = base_field(q)
    u0, u1, T = _rat(F, "u0"), _rat(F, "u1"), _rat(F, "T")
    lhs = (u0 + T**q) ** (q + 1) / u0**q - (u1 + T) ** (q + 1) / u1
    second = 1 + T ** (q * q) / u0**q - (u1 - T ** (q + 1) / u0) ** (q - 1) * (u1 / u0 + T / u0)
    rhs = (u0 - T ** (q + 1) / u1) * second
    # the second factor rewritten as (u0+T^q)/(u1+T) = v0^{q-1}
    v0 = (u0 * u1 - T ** (q + 1)) / (u0 + T**q)
    rewrite = ((u0 + T**q) / (u1 + T) - v0 ** (q - 1)) * (u0 + T**q) ** (q - 1) * (u1 + T) / u0**q
    ok = lhs == rhs and rewrite == second
    return Check(f"identity (a) factorization q={q}", ok, "exact")


def identity_v0(q: int) -> Check:
    """u0 = v0^{q-1}(v0+T), u1 = (v0+T)^q/v0^{q-1} solve the curve and recover v0."""
    F = base_field(q)
    v0, T = _rat(F, "v0"), _rat(F, "T")
    u0 = v0 ** (q - 1) * (v0 + T)
    u1 = (v0 + T) ** q / v0 ** (q - 1)
    curve = (u0 + T**q) ** (q + 1) / u0**q - (u1 + T) ** (q + 1) / u1
    back = (u0 * u1 - T ** (q + 1)) / (u0 + T**q)
    return Check(f"identity (b) v0 parametrization q={q}", curve.is_zero() and back == v0, "exact")


def identity_xi(q: int) -> Check:
    """xi_0 = -(v0+T)/T turns the v0 parametrization into the xi form and the step into the E step."""
    F = base_field(q)
    xi, T = _rat(F, "xi"), _rat(F, "T")
    v0 = -T * (xi + 1)
    u0 = v0 ** (q - 1) * (v0 + T)
    u1 = (v0 + T) ** q / v0 ** (q - 1)
    ok0 = u0 == -(T**q) * (xi + 1) ** (q - 1) * xi
    ok1 = u1 == -T * xi**q / (xi + 1) ** (q - 1)
    # u0(xi_1) = u1(xi_0) cleared equals -T (xi_0+1)^{q-1}-multiple of the E step at alpha = T
    X, Y = _rat(F, "X"), _rat(F, "Y")
    glue = -(T**q) * (Y + 1) ** (q - 1) * Y + T * X**q / (X + 1) ** (q - 1)
    step = T ** (q - 1) * (X + 1) ** (q - 1) * (Y + 1) ** (q - 1) * Y - X**q
    ok2 = glue * (X + 1) ** (q - 1) == -T * step
    return Check(f"identity (c) xi substitution q={q}", ok0 and ok1 and ok2, "exact")


def identity_kummer(q: int) -> Check:
    """xi = x^{q-1}: (x^q+x)^{q-1} = xi(xi+1)^{q-1}, and the F step divides the E step pulled back."""
    F = base_field(q)
    x, T = MPoly.var(F, "x"), MPoly.var(F, "T")
    xi = x ** (q - 1)
    ok0 = (x**q + x) ** (q - 1) == xi * (xi + 1) ** (q - 1)
    X, Y = MPoly.var(F, "X"), MPoly.var(F, "Y")
    e_step = T ** (q - 1) * (X + 1) ** (q - 1) * (Y + 1) ** (q - 1) * Y - X**q
    f_step = T * (X ** (q - 1) + 1) * (Y**q + Y) - X**q
    pulled = substitute(e_step, {"X": X ** (q - 1), "Y": Y ** (q - 1)})
    ok1 = pulled.is_polynomial() and exact_divide(pulled.as_poly(), f_step) is not None
    return Check(f"identity (d) xi = x^(q-1) q={q}", ok0 and ok1, "exact")


def identity_j1(q: int) -> Check:
    """j_1 through u_1 and v_0 = -T(x0^{q-1}+1) equals -T^q (x0^{q^2}-x0)^{q+1}/(x0^q+x0)^{q^2+1}."""
    F = base_field(q)
    x, T = _rat(F, "x"), _rat(F, "T")
    v0 = -T * (x ** (q - 1) + 1)
    u1 = (v0 + T) ** q / v0 ** (q - 1)
    j1 = (u1 + T) ** (q + 1) / u1
    shown = -(T**q) * (x ** (q * q) - x) ** (q + 1) / (x**q + x) ** (q * q + 1)
    return Check(f"identity (e) j_1 in x_0 q={q}", j1 == shown, "exact")


IDENTITIES = {
    "a": ("factorization", identity_factorization),
    "b": ("v0 parametrization", identity_v0),
    "c": ("xi substitution", identity_xi),
    "d": ("xi = x^(q-1)", identity_kummer),
    "e": ("j_1 in x_0", identity_j1),
}


def verify_identity_suite(q: int) -> list[Check]:
    if q not in (2, 3, 4):
        raise ValueError("identity suite runs for q in {2, 3, 4}")
    return [timed(f"identity ({k}) {label} q={q}", lambda fn=fn: fn(q)) for k, (label, fn) in IDENTITIES.items()]


def verify_specializations(q: int) -> list[Check]:
    """Builtin towers that must coincide as normalized relations."""
    Fq = base_field(q)
    out = []
    one = "T-1"
    F1, E1 = make_tower("F", Fq, L=one), make_tower("E", Fq, L=one)
    out.append(Check(f"gs = F^(T-1) q={q}", make_tower("gs", Fq).relation == F1.relation))
    out.append(Check(f"elkies = E^(T-1) q={q}", make_tower("elkies", Fq).relation == E1.relation))
    for Ls in (("T+1", "T^2+T+1") if q == 2 else ("T-1",)):
        FL = make_tower("F", Fq, L=Ls)
        EL = make_tower("E", Fq, L=Ls)
        Fa = residue_field(FL.L)
        g = FieldElem(Fa, Fa.alpha).inverse()
        out.append(Check(f"gamma(1/alpha) = F^({Ls}) q={q}", make_tower("gamma", Fq, gamma=g).relation == FL.relation))
        out.append(
            Check(f"gamma-E(1/alpha) = E^({Ls}) q={q}", make_tower("gamma", Fq, gamma=g, variant="E").relation == EL.relation)
        )
    if q == 2:
        out.append(Check("E = F at q=2", E1.relation == F1.relation))
    return out


def verify_splitting(tower: TowerSpec, levels, tag: str | None = None, limit: int | None = None) -> list[Check]:
    """Splitting-set size, full fibers of q^n simple chains, and closure, per level."""
    S = splitting_points(tower, tag)
    tag = tag or tower.genus_type
    expected = tower.q * (tower.q - 1 if tag == "F" else 1) * m_d(tower.q, tower.d)
    out = [Check(f"|S_{tag}| {tower.name} q={tower.q}", len(S) == expected, f"{len(S)}/{expected}")]
    for n in levels:
        cert = certify_splitting(tower, S, n, limit)
        out.append(Check(f"split {tower.name} q={tower.q} n={n}", cert.ok, f"N_lb={cert.N_lb}"))
    return out


def run_all(q: int = 2) -> list[Check]:
    out: list[Check] = []
    out.extend(verify_identity_suite(q) if q in (2, 3, 4) else [])
    out.extend(verify_specializations(q))
    primes = {2: ("T+1", "T^2+T+1"), 3: ("T-1",)}.get(q, ("T-1",))
    levels = {2: range(1, 7), 3: range(1, 5)}.get(q, range(1, 3))
    for Ls in primes:
        for kind in ("E", "F"):
            out.extend(verify_splitting(make_tower(kind, q, L=Ls), levels))
    out.extend(Check(f"genus bound q={qq} n={n}", genus_bound_holds(n, qq)) for qq in (2, 3, 4, 5) for n in (20,))
    return out
