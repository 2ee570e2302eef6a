"""Sparse multivariate polynomials and rational functions over a FieldCtx.

Variables come from a fixed symbol set and are always stored in the order of
``VAR_ORDER``; terms map exponent tuples to nonzero element codes.  Products
over prime fields switch to a dense Kronecker/numpy convolution once both
operands are large.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, NamedTuple, Union

import numpy as np

from .fields import (
    FieldCtx,
    FieldElem,
    FieldError,
    MAX_ENUMERATE,
    _pgcd,
    _pmod,
    _pmul,
    _trim,
    find_irreducible,
    make_prime_field,
)

__all__ = [
    "VAR_ORDER",
    "MPoly",
    "RatFun",
    "ReductionError",
    "Root",
    "exact_divide",
    "substitute",
    "reduce_mod_L",
    "distinct_roots",
    "derivative",
    "pseudo_reduce",
    "factor_univariate_over_Fq",
    "monic_irreducibles",
]

VAR_ORDER = ("T", "s", "t", "u", "u0", "u1", "v0", "x", "X", "Y", "Z", "xi")
_RANK = {v: i for i, v in enumerate(VAR_ORDER)}

DENSE_THRESHOLD = 4096  # len(a) * len(b) above which prime-field products go dense
DENSE_MAX_CELLS = 4_000_000
MAX_FACTOR_DEGREE = 12


class ReductionError(ValueError):
    """A denominator vanishes under reduction modulo a prime."""


def _check_vars(vs: Iterable[str]) -> None:
    for v in vs:
        if v not in _RANK:
            raise ValueError(f"unknown variable {v!r}; allowed: {', '.join(VAR_ORDER)}")


class MPoly:
    __slots__ = ("ctx", "vars", "terms")

    def __init__(self, ctx: FieldCtx, vars: Iterable[str] = (), terms: Mapping | None = None):
        vars = tuple(vars)
        _check_vars(vars)
        order = sorted(range(len(vars)), key=lambda i: _RANK[vars[i]])
        svars = tuple(vars[i] for i in order)
        if len(set(svars)) != len(svars):
            raise ValueError("duplicate variables")
        clean = {}
        for e, c in (terms or {}).items():
            if isinstance(c, FieldElem):
                c = ctx.embed_code(c.v, c.ctx)
            elif isinstance(c, int) and ctx.is_prime:
                c = c % ctx.p
            if len(e) != len(vars):
                raise ValueError("exponent vector length mismatch")
            e = tuple(e[i] for i in order)
            if any(x < 0 for x in e):
                raise ValueError("negative exponent")
            if e in clean:
                c = ctx.add(clean[e], c)
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self.ctx = ctx
        self.vars, self.terms = _trim_vars(svars, clean)

    @classmethod
    def _raw(cls, ctx: FieldCtx, vars: tuple[str, ...], terms: dict) -> "MPoly":
        """Trusted constructor: vars sorted, no zero coefficients."""
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.vars, obj.terms = _trim_vars(vars, terms)
        return obj

    # constructors
    @classmethod
    def zero(cls, ctx: FieldCtx) -> "MPoly":
        return cls._raw(ctx, (), {})

    @classmethod
    def const(cls, ctx: FieldCtx, c) -> "MPoly":
        code = _code(ctx, c)
        return cls._raw(ctx, (), {(): code} if code else {})

    @classmethod
    def var(cls, ctx: FieldCtx, name: str) -> "MPoly":
        _check_vars([name])
        return cls._raw(ctx, (name,), {(1,): 1})

    @classmethod
    def from_univariate(cls, ctx: FieldCtx, name: str, coeffs: Iterable) -> "MPoly":
        """Little-endian coefficients given as element codes or FieldElems."""
        terms = {}
        for i, c in enumerate(coeffs):
            code = ctx.embed_code(c.v, c.ctx) if isinstance(c, FieldElem) else c
            if not 0 <= code < ctx.size:
                raise ValueError(f"{code} is not an element code of {ctx.name}")
            if code:
                terms[(i,)] = code
        return cls._raw(ctx, (name,), terms)

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> FieldElem:
        if self.vars:
            raise ValueError("polynomial is not constant")
        return FieldElem(self.ctx, self.terms.get((), 0))

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if None); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def leading(self) -> tuple[tuple[int, ...], int]:
        """Leading (exponents, code) under graded lex with VAR_ORDER significance."""
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def univariate_coeffs(self, var: str | None = None) -> list[int]:
        """Dense little-endian codes; the polynomial must involve at most one variable."""
        if len(self.vars) > 1 or (var is not None and self.vars and self.vars != (var,)):
            raise ValueError(f"not univariate in {var}: variables {self.vars}")
        if not self.terms:
            return []
        if not self.vars:
            return [self.terms[()]]
        out = [0] * (self.degree() + 1)
        for (e,), c in self.terms.items():
            out[e] = c
        return out

    def coeffs_in(self, var: str) -> dict[int, "MPoly"]:
        """Split into {exponent of var: coefficient polynomial in the other variables}."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        groups: dict[int, dict] = {}
        for e, c in self.terms.items():
            groups.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: MPoly._raw(self.ctx, rest, t) for k, t in groups.items()}

    # arithmetic
    def _coerce(self, o) -> "MPoly":
        if isinstance(o, MPoly):
            if o.ctx != self.ctx:
                if self.ctx.contains(o.ctx):
                    return o.change_ring(self.ctx)
                raise FieldError(f"context mismatch: {self.ctx.name} vs {o.ctx.name}")
            return o
        if isinstance(o, (int, FieldElem)):
            return MPoly.const(self.ctx, o)
        return NotImplemented

    def __add__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        vars, ta, tb = _unify(self, o)
        out = dict(ta)
        add = self.ctx.add
        for e, c in tb.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = add(v, c)
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MPoly._raw(self.ctx, vars, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ctx.neg
        return MPoly._raw(self.ctx, self.vars, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, RatFun):
            return NotImplemented
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        if not self.terms or not o.terms:
            return MPoly.zero(self.ctx)
        vars, ta, tb = _unify(self, o)
        ctx = self.ctx
        if ctx.is_prime and len(ta) * len(tb) >= DENSE_THRESHOLD and len(ta) > 1 and len(tb) > 1:
            dense = _dense_mul(ctx.p, len(vars), ta, tb)
            if dense is not None:
                return MPoly._raw(ctx, vars, dense)
        return MPoly._raw(ctx, vars, _sparse_mul(ctx, ta, tb))

    __rmul__ = __mul__

    def scale(self, c) -> "MPoly":
        code = _code(self.ctx, c)
        if not code:
            return MPoly.zero(self.ctx)
        mul = self.ctx.mul
        return MPoly._raw(self.ctx, self.vars, {e: mul(v, code) for e, v in self.terms.items()})

    def frobenius_p(self) -> "MPoly":
        """f -> f^p, computed termwise (characteristic p)."""
        p, ctx = self.ctx.p, self.ctx
        return MPoly._raw(ctx, self.vars, {tuple(x * p for x in e): ctx.pow(c, p) for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "MPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("MPoly powers must be non-negative integers")
        if n == 0:
            return MPoly.const(self.ctx, 1)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return MPoly._raw(self.ctx, self.vars, {tuple(x * n for x in e): self.ctx.pow(c, n)})
        p = self.ctx.p
        if n % p == 0:
            return (self ** (n // p)).frobenius_p()
        if n >= p:
            return (self ** (n - n % p)) * (self ** (n % p))
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def __truediv__(self, o):
        return RatFun(self) / o

    def __rtruediv__(self, o):
        return RatFun(MPoly.const(self.ctx, 1) if isinstance(o, int) else o) / self

    def __eq__(self, o) -> bool:
        if isinstance(o, RatFun):
            return o == self
        o = self._coerce(o) if isinstance(o, (MPoly, int, FieldElem)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.vars == o.vars and self.terms == o.terms

    def __hash__(self) -> int:
        return hash((self.ctx.key, self.vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        from .grammar import format_poly

        return format_poly(self)

    # evaluation / ring changes
    def change_ring(self, target: FieldCtx) -> "MPoly":
        emb = target.embed_code
        src = self.ctx
        return MPoly._raw(target, self.vars, {e: emb(c, src) for e, c in self.terms.items()})

    def specialize(self, values: Mapping[str, "FieldElem | int"], target: FieldCtx | None = None) -> "MPoly":
        """Bind some variables to field elements; coefficients move to ``target``."""
        target = target or self.ctx
        codes = {}
        for v, x in values.items():
            codes[v] = target.embed_code(x.v, x.ctx) if isinstance(x, FieldElem) else x % target.p
        keep = [i for i, v in enumerate(self.vars) if v not in codes]
        bound = [(i, codes[v]) for i, v in enumerate(self.vars) if v in codes]
        kvars = tuple(self.vars[i] for i in keep)
        emb, mul, add, pw = target.embed_code, target.mul, target.add, target.pow
        powcache: dict = {}
        out: dict = {}
        src = self.ctx
        for e, c in self.terms.items():
            val = emb(c, src)
            for i, x in bound:
                if e[i]:
                    key = (x, e[i])
                    px = powcache.get(key)
                    if px is None:
                        px = powcache[key] = pw(x, e[i])
                    val = mul(val, px)
            if not val:
                continue
            ke = tuple(e[i] for i in keep)
            prev = out.get(ke)
            if prev is None:
                out[ke] = val
            else:
                s = add(prev, val)
                if s:
                    out[ke] = s
                else:
                    del out[ke]
        return MPoly._raw(target, kvars, out)

    def evaluate(self, values: Mapping[str, "FieldElem | int"], target: FieldCtx | None = None) -> FieldElem:
        r = self.specialize(values, target)
        if r.vars:
            raise ValueError(f"unbound variables {r.vars}")
        return r.constant_value()

    def rename(self, mapping: Mapping[str, str]) -> "MPoly":
        """Rename variables (a permutation or injective map into unused names)."""
        new = [mapping.get(v, v) for v in self.vars]
        return MPoly(self.ctx, new, dict(self.terms))


PolyLike = Union[MPoly, int, FieldElem]


def _code(ctx: FieldCtx, c) -> int:
    if isinstance(c, FieldElem):
        return ctx.embed_code(c.v, c.ctx)
    return c % ctx.p


def _trim_vars(vars: tuple[str, ...], terms: dict):
    if not vars:
        return vars, terms
    used = [False] * len(vars)
    for e in terms:
        for i, x in enumerate(e):
            if x:
                used[i] = True
        if all(used):
            return vars, terms
    keep = [i for i, u in enumerate(used) if u]
    return tuple(vars[i] for i in keep), {tuple(e[i] for i in keep): c for e, c in terms.items()}


def _unify(a: MPoly, b: MPoly):
    if a.vars == b.vars:
        return a.vars, a.terms, b.terms
    vars = tuple(sorted(set(a.vars) | set(b.vars), key=_RANK.__getitem__))
    return vars, _remap(a, vars), _remap(b, vars)


def _remap(a: MPoly, vars: tuple[str, ...]) -> dict:
    if a.vars == vars:
        return a.terms
    pos = [vars.index(v) for v in a.vars]
    n = len(vars)
    out = {}
    for e, c in a.terms.items():
        full = [0] * n
        for i, x in zip(pos, e):
            full[i] = x
        out[tuple(full)] = c
    return out


def _sparse_mul(ctx: FieldCtx, ta: dict, tb: dict) -> dict:
    out: dict = {}
    if ctx.is_prime:
        p = ctx.p
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return {e: c % p for e, c in out.items() if c % p}
    mul, add = ctx.mul, ctx.add
    for ea, ca in ta.items():
        for eb, cb in tb.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = mul(ca, cb)
            prev = out.get(e)
            out[e] = v if prev is None else add(prev, v)
    return {e: c for e, c in out.items() if c}


def _dense_mul(p: int, n: int, ta: dict, tb: dict) -> dict | None:
    """Kronecker-substituted product over F_p, or None if the grid is too big."""
    ea = np.array(list(ta.keys()), dtype=np.int64).reshape(len(ta), n)
    eb = np.array(list(tb.keys()), dtype=np.int64).reshape(len(tb), n)
    da, db = ea.max(axis=0), eb.max(axis=0)
    sizes = da + db + 1
    total = int(np.prod(sizes.astype(object)))
    if total > DENSE_MAX_CELLS:
        return None
    strides = np.ones(n, dtype=np.int64)
    for i in range(n - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    ia, ib = ea @ strides, eb @ strides
    A = np.zeros(int(ia.max()) + 1, dtype=np.int64)
    B = np.zeros(int(ib.max()) + 1, dtype=np.int64)
    A[ia] = np.array(list(ta.values()), dtype=np.int64)
    B[ib] = np.array(list(tb.values()), dtype=np.int64)
    C = _convolve_mod(A, B, p)
    idx = np.nonzero(C)[0]
    vals = C[idx]
    exps = (idx[:, None] // strides[None, :]) % sizes[None, :]
    return dict(zip(map(tuple, exps.tolist()), vals.tolist()))


def _convolve_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    if len(A) * len(B) <= 20_000_000:
        return np.convolve(A, B) % p
    m = len(A) + len(B) - 1
    size = 1 << (m - 1).bit_length()
    fa = np.fft.rfft(A.astype(np.float64), size)
    fb = np.fft.rfft(B.astype(np.float64), size)
    raw = np.fft.irfft(fa * fb, size)[:m]
    C = np.rint(raw)
    if np.max(np.abs(raw - C), initial=0.0) > 0.2:  # pragma: no cover - precision guard
        raise ArithmeticError("FFT convolution lost exactness")
    return C.astype(np.int64) % p


# ---------------------------------------------------------------------------
# rational functions


class RatFun:
    """num/den with den != 0.

    Normalization removes the common monomial factor, a univariate content
    gcd when the denominator involves a single variable, and makes the
    denominator's leading coefficient 1.  Equality is decided by
    cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: PolyLike, den: PolyLike = 1, _normalized: bool = False):
        if not isinstance(num, MPoly):
            if isinstance(den, MPoly):
                num = MPoly.const(den.ctx, num)
            else:
                raise TypeError("RatFun needs at least one MPoly to fix the field")
        if not isinstance(den, MPoly):
            den = MPoly.const(num.ctx, den)
        if den.ctx != num.ctx:
            den = num._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            num, den = _normalize(num, den)
        self.num, self.den = num, den

    @property
    def ctx(self) -> FieldCtx:
        return self.num.ctx

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MPoly:
        if not self.den.is_constant():
            raise ValueError("rational function is not a polynomial")
        return self.num.scale(self.den.constant_value().inverse())

    def _coerce(self, o) -> "RatFun":
        if isinstance(o, RatFun):
            return o
        if isinstance(o, (MPoly, int, FieldElem)):
            return RatFun(self.num._coerce(o), _normalized=True)
        return NotImplemented

    def __add__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, _normalized=True)

    def __sub__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return self._coerce(o) / self

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RatFun(self.den ** (-n), self.num ** (-n))
        return RatFun(self.num**n, self.den**n)

    def __eq__(self, o) -> bool:
        o = self._coerce(o) if isinstance(o, (RatFun, MPoly, int, FieldElem)) else NotImplemented
        if o is NotImplemented:
            return o
        if self.num == o.num and self.den == o.den:
            return True
        return (self.num * o.den - o.num * self.den).is_zero()

    __hash__ = None  # equality is cross-multiplicative

    def __repr__(self) -> str:
        from .grammar import format_ratfun

        return format_ratfun(self)

    def evaluate(self, values: Mapping, target: FieldCtx | None = None) -> FieldElem:
        d = self.den.evaluate(values, target)
        if d.is_zero():
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(values, target) / d


def _monomial_gcd(num: MPoly, den: MPoly):
    vars, tn, td = _unify(num, den)
    if not vars:
        return num, den
    mins = list(next(iter(td)))
    for e in list(tn) + list(td):
        for i, x in enumerate(e):
            if x < mins[i]:
                mins[i] = x
    if not any(mins):
        return num, den

    def shift(t):
        return {tuple(x - m for x, m in zip(e, mins)): c for e, c in t.items()}

    return MPoly._raw(num.ctx, vars, shift(tn)), MPoly._raw(num.ctx, vars, shift(td))


def _normalize(num: MPoly, den: MPoly):
    ctx = num.ctx
    if num.is_zero():
        return num, MPoly.const(ctx, 1)
    num, den = _monomial_gcd(num, den)
    if len(den.vars) == 1 and len(den) > 1:
        (v,) = den.vars
        dcoef = den.univariate_coeffs()
        g = dcoef
        for c in num.coeffs_in_others(v):
            g = _pgcd(ctx, g, c)
            if len(g) <= 1:
                break
        if len(g) > 1:
            den = MPoly.from_univariate(ctx, v, _exact_udiv(ctx, dcoef, g))
            num = _divide_by_univariate(num, v, g)
    if den.is_constant():
        inv = den.constant_value().inverse()
        return num.scale(inv), MPoly.const(ctx, 1)
    _, lc = den.leading()
    if lc != 1:
        inv = ctx.inv(lc)
        num, den = num.scale(FieldElem(ctx, inv)), den.scale(FieldElem(ctx, inv))
    return num, den


def _coeffs_in_others(self: MPoly, v: str) -> list[list[int]]:
    """Dense univariate-in-v coefficient lists, one per monomial in the other variables."""
    if v not in self.vars:
        return [[c] for c in self.terms.values()]
    i = self.vars.index(v)
    groups: dict = {}
    for e, c in self.terms.items():
        rest = e[:i] + e[i + 1:]
        lst = groups.setdefault(rest, [])
        k = e[i]
        if len(lst) <= k:
            lst.extend([0] * (k + 1 - len(lst)))
        lst[k] = c
    return list(groups.values())


MPoly.coeffs_in_others = _coeffs_in_others


def _exact_udiv(ctx: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    inv = ctx.inv(b[-1])
    q = [0] * (len(a) - db)
    for top in range(len(a) - 1, db - 1, -1):
        c = a[top]
        if c:
            c = ctx.mul(c, inv)
            q[top - db] = c
            for j in range(db + 1):
                a[top - db + j] = ctx.sub(a[top - db + j], ctx.mul(c, b[j]))
    if _trim(a):
        raise ArithmeticError("inexact univariate division")
    return q


def _divide_by_univariate(f: MPoly, v: str, g: list[int]) -> MPoly:
    ctx = f.ctx
    if v not in f.vars:
        raise ArithmeticError("inexact division")
    i = f.vars.index(v)
    groups: dict = {}
    for e, c in f.terms.items():
        rest = e[:i] + e[i + 1:]
        lst = groups.setdefault(rest, [])
        if len(lst) <= e[i]:
            lst.extend([0] * (e[i] + 1 - len(lst)))
        lst[e[i]] = c
    out = {}
    for rest, lst in groups.items():
        qd = _exact_udiv(ctx, lst, g)
        for k, c in enumerate(qd):
            if c:
                out[rest[:i] + (k,) + rest[i:]] = c
    return MPoly._raw(ctx, f.vars, out)


# ---------------------------------------------------------------------------
# operations


def exact_divide(a: MPoly, b: MPoly) -> MPoly | None:
    """Quotient q with a == b*q, or None when b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    a = b._coerce(a)
    vars, ta, tb = _unify(a, b)
    ctx = a.ctx
    lb = max(tb, key=lambda e: (sum(e), e))
    inv = ctx.inv(tb[lb])
    r = dict(ta)
    q: dict = {}
    mul, sub = ctx.mul, ctx.sub
    while r:
        lr = max(r, key=lambda e: (sum(e), e))
        shift = tuple(x - y for x, y in zip(lr, lb))
        if any(x < 0 for x in shift):
            return None
        c = mul(r[lr], inv)
        q[shift] = c
        for e, cb in tb.items():
            t = tuple(x + y for x, y in zip(e, shift))
            v = sub(r.get(t, 0), mul(c, cb))
            if v:
                r[t] = v
            else:
                r.pop(t, None)
    return MPoly._raw(ctx, vars, q)


def _as_ratfun(x, ctx: FieldCtx) -> RatFun:
    if isinstance(x, RatFun):
        return x
    if isinstance(x, MPoly):
        return RatFun(x, _normalized=True)
    return RatFun(MPoly.const(ctx, x), _normalized=True)


def substitute(f: "MPoly | RatFun", bindings: Mapping[str, "RatFun | MPoly | int | FieldElem"]) -> RatFun:
    """Replace variables by rational functions, clearing denominators once.

    With x_j -> n_j/d_j and D_j = deg_{x_j} f, the numerator is
    sum c * m * prod n_j^{a_j} d_j^{D_j - a_j} over the denominator prod d_j^{D_j}.
    """
    if isinstance(f, RatFun):
        return substitute(f.num, bindings) / substitute(f.den, bindings)
    ctx = f.ctx
    binds = {v: _as_ratfun(b, ctx) for v, b in bindings.items() if v in f.vars}
    if not binds:
        return RatFun(f, _normalized=True)
    bvars = [v for v in f.vars if v in binds]
    bidx = [f.vars.index(v) for v in bvars]
    free = [i for i, v in enumerate(f.vars) if v not in binds]
    fvars = tuple(f.vars[i] for i in free)
    degs = [f.degree(v) for v in bvars]
    npow = []
    dpow = []
    for v, D in zip(bvars, degs):
        r = binds[v]
        pw_n, pw_d = [MPoly.const(ctx, 1)], [MPoly.const(ctx, 1)]
        for _ in range(D):
            pw_n.append(pw_n[-1] * r.num)
            pw_d.append(pw_d[-1] * r.den)
        npow.append(pw_n)
        dpow.append(pw_d)
    groups: dict = {}
    for e, c in f.terms.items():
        be = tuple(e[i] for i in bidx)
        groups.setdefault(be, {})[tuple(e[i] for i in free)] = c
    total = MPoly.zero(ctx)
    for be, cterms in groups.items():
        prod = MPoly._raw(ctx, fvars, cterms)
        for j, a in enumerate(be):
            prod = prod * npow[j][a]
            if degs[j] - a:
                prod = prod * dpow[j][degs[j] - a]
        total = total + prod
    den = MPoly.const(ctx, 1)
    for j, D in enumerate(degs):
        den = den * dpow[j][D]
    return RatFun(total, den)


def derivative(f: MPoly, var: str) -> MPoly:
    if var not in f.vars:
        return MPoly.zero(f.ctx)
    i = f.vars.index(var)
    ctx = f.ctx
    out = {}
    for e, c in f.terms.items():
        if e[i]:
            v = ctx.mul(c, ctx.from_int(e[i]))
            if v:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = v
    return MPoly._raw(ctx, f.vars, out)


def pseudo_reduce(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Remainder of f modulo g, where g is monic in ``var``."""
    g = f._coerce(g)
    n = g.degree(var)
    gc = g.coeffs_in(var)
    if n < 1 or gc[n] != MPoly.const(g.ctx, 1):
        raise ValueError(f"divisor is not monic of positive degree in {var}")
    x = MPoly.var(f.ctx, var)
    while f.degree(var) >= n:
        d = f.degree(var)
        lc = f.coeffs_in(var)[d]
        f = f - lc * x ** (d - n) * g
    return f


def _poly_L(base: FieldCtx, L) -> list[int]:
    if isinstance(L, MPoly):
        return L.univariate_coeffs("T")
    return _trim([base.embed_code(c.v, c.ctx) if isinstance(c, FieldElem) else c for c in L])


def reduce_mod_L(f: "MPoly | RatFun", L, target: FieldCtx) -> "MPoly | RatFun":
    """Replace T by alpha = target.alpha and map coefficients into ``target``."""
    if target.alpha is None:
        raise FieldError(f"{target.name} has no designated image of T")
    alpha = FieldElem(target, target.alpha)
    base = f.ctx
    lc = _poly_L(base, L)
    acc = target.zero
    for c in reversed(lc):
        acc = acc * alpha + FieldElem(target, target.embed_code(c, base))
    if not acc.is_zero():
        raise FieldError("target alpha is not a root of L")
    if isinstance(f, RatFun):
        num = f.num.specialize({"T": alpha}, target)
        den = f.den.specialize({"T": alpha}, target)
        if den.is_zero():
            from .grammar import format_poly

            raise ReductionError(f"denominator vanishes modulo L = {format_poly(MPoly.from_univariate(base, 'T', lc))}")
        if den.is_constant():
            return num.scale(den.constant_value().inverse())
        return RatFun(num, den)
    return f.specialize({"T": alpha}, target)


class Root(NamedTuple):
    value: FieldElem
    simple: bool


def distinct_roots(f: MPoly, K: FieldCtx) -> list[Root]:
    """All roots of univariate f in K (exhaustive scan), with simplicity flags."""
    if f.is_zero():
        raise ValueError("zero polynomial has every element as a root")
    if K.size > MAX_ENUMERATE:
        raise FieldError(f"{K.name} exceeds the root-scan guard {MAX_ENUMERATE}")
    if len(f.vars) > 1:
        raise ValueError(f"not univariate: {f.vars}")
    coeffs = [K.embed_code(c, f.ctx) for c in f.univariate_coeffs()]
    var = f.vars[0] if f.vars else "s"
    dcoeffs = [K.embed_code(c, f.ctx) for c in derivative(f, var).univariate_coeffs()] if f.vars else []
    out = []
    for x in K.codes():
        if _horner(K, coeffs, x) == 0:
            out.append(Root(FieldElem(K, x), _horner(K, dcoeffs, x) != 0))
    return out


def _horner(K: FieldCtx, coeffs: list[int], x: int) -> int:
    mul, add = K.mul, K.add
    acc = 0
    for c in reversed(coeffs):
        acc = add(mul(acc, x), c)
    return acc


def monic_irreducibles(base: FieldCtx, degree: int) -> list[MPoly]:
    """All monic irreducible polynomials in T of the given degree, in lex order."""
    from .fields import is_irreducible
    import itertools

    order = base.codes()
    out = []
    for cs in itertools.product(order, repeat=degree):
        f = list(cs) + [1]
        if is_irreducible(base, f):
            out.append(MPoly.from_univariate(base, "T", f))
    return out


def factor_univariate_over_Fq(N: MPoly) -> list[tuple[MPoly, int]]:
    """Monic irreducible factors of N (in T) with multiplicities, by trial division."""
    if N.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    base = N.ctx
    f = N.univariate_coeffs("T")
    if len(f) - 1 > MAX_FACTOR_DEGREE:
        raise ValueError(f"degree {len(f) - 1} exceeds the factoring guard {MAX_FACTOR_DEGREE}")
    inv = base.inv(f[-1])
    f = [base.mul(c, inv) for c in f]
    out = []
    d = 1
    while len(f) - 1 >= 2 * d:
        for P in monic_irreducibles(base, d):
            pc = P.univariate_coeffs()
            mult = 0
            while len(f) > 1 and not _pmod(base, f, pc):
                f = _exact_udiv(base, f, pc)
                mult += 1
            if mult:
                out.append((P, mult))
        d += 1
    if len(f) > 1:
        out.append((MPoly.from_univariate(base, "T", f), 1))
    return out
