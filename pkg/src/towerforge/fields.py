"""Finite fields F_{p^k} with integer-coded elements.

An element of a field with modulus ``m`` of degree ``k`` over F_p is stored as
the integer ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``, where ``(c_0, ..., c_{k-1})``
is its little-endian coefficient vector in powers of the generator ``g``.
Multiplication goes through exp/log tables built from a primitive element.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

__all__ = [
    "FieldCtx",
    "FieldElem",
    "FieldError",
    "make_prime_field",
    "extend_field",
    "quadratic_extension",
    "find_irreducible",
    "is_irreducible",
    "enumerate_field",
    "frobenius",
    "MAX_ENUMERATE",
]

MAX_ENUMERATE = 2**20
MAX_PRIME = 2**31


class FieldError(ValueError):
    """Invalid field construction or mixed-context arithmetic."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class _Arith:
    """Shared arithmetic tables for one (p, modulus) pair."""

    def __init__(self, p: int, modulus: tuple[int, ...]):
        self.p = p
        self.modulus = modulus
        self.k = k = len(modulus) - 1
        self.size = p**k
        self.exp: list[int] | None = None
        self.log: list[int] | None = None
        self.zech: list[int] | None = None
        if k > 1 and self.size <= MAX_ENUMERATE:
            self._build_tables()

    # digit-level arithmetic, used to build tables and for oversized fields
    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def undigits(self, ds: Sequence[int]) -> int:
        v = 0
        for d in reversed(ds):
            v = v * self.p + d
        return v

    def slow_mul(self, a: int, b: int) -> int:
        p, k, m = self.p, self.k, self.modulus
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c:
                for j in range(k):
                    prod[top - k + j] = (prod[top - k + j] - c * m[j]) % p
                prod[top] = 0
        return self.undigits(prod[:k])

    def slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.slow_mul(r, a)
            a = self.slow_mul(a, a)
            e >>= 1
        return r

    def _build_tables(self) -> None:
        n = self.size - 1
        factors = _prime_factors(n)
        prim = None
        for c in range(2, self.size):
            if all(self.slow_pow(c, n // r) != 1 for r in factors):
                prim = c
                break
        if prim is None:  # pragma: no cover - modulus was irreducible
            raise FieldError("no primitive element; modulus reducible?")
        exp = [0] * (2 * n)
        log = [0] * self.size
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self.slow_mul(x, prim)
        exp[n:] = exp[:n]
        self.exp, self.log = exp, log
        if self.p != 2:
            p = self.p
            zech = [-1] * n
            for i in range(n):
                v = exp[i]
                w = v - v % p + (v % p + 1) % p
                zech[i] = log[w] if w else -1
            self.zech = zech


_ARITH: dict[tuple[int, tuple[int, ...]], _Arith] = {}
_ARITH_LOCK = threading.Lock()


def _arith(p: int, modulus: tuple[int, ...]) -> _Arith:
    key = (p, modulus)
    a = _ARITH.get(key)
    if a is None:
        with _ARITH_LOCK:
            a = _ARITH.get(key)
            if a is None:
                a = _ARITH[key] = _Arith(p, modulus)
    return a


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """A finite field F_p[g]/(modulus), optionally embedded over a parent field.

    ``parent_image`` is the code (in this field) of the parent's generator; for
    a prime parent the embedding is the canonical one and ``parent_image`` is
    None.  ``alpha`` is an optional distinguished element, the residue of T
    when the field was built as F_q[T]/(L).
    """

    p: int
    modulus: tuple[int, ...]
    parent: "FieldCtx | None" = None
    parent_image: int | None = None
    alpha: int | None = None
    _embed_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        ar = _arith(self.p, self.modulus)
        object.__setattr__(self, "_ar", ar)
        p, n = self.p, ar.size - 1
        if ar.k == 1:
            object.__setattr__(self, "add", lambda a, b: (a + b) % p)
            object.__setattr__(self, "sub", lambda a, b: (a - b) % p)
            object.__setattr__(self, "neg", lambda a: -a % p)
            object.__setattr__(self, "mul", lambda a, b: a * b % p)
            return
        if ar.exp is None:
            object.__setattr__(self, "add", self._slow_add)
            object.__setattr__(self, "sub", lambda a, b: self._slow_add(a, self._slow_neg(b)))
            object.__setattr__(self, "neg", self._slow_neg)
            object.__setattr__(self, "mul", ar.slow_mul)
            return
        exp, log = ar.exp, ar.log

        def mul(a: int, b: int) -> int:
            if a == 0 or b == 0:
                return 0
            return exp[log[a] + log[b]]

        object.__setattr__(self, "mul", mul)
        if p == 2:
            object.__setattr__(self, "add", lambda a, b: a ^ b)
            object.__setattr__(self, "sub", lambda a, b: a ^ b)
            object.__setattr__(self, "neg", lambda a: a)
            return
        zech = ar.zech
        half = n // 2

        def add(a: int, b: int) -> int:
            if a == 0:
                return b
            if b == 0:
                return a
            la = log[a]
            z = zech[(log[b] - la) % n]
            if z < 0:
                return 0
            return exp[(la + z) % n]

        def neg(a: int) -> int:
            return exp[(log[a] + half) % n] if a else 0

        object.__setattr__(self, "add", add)
        object.__setattr__(self, "neg", neg)
        object.__setattr__(self, "sub", lambda a, b: add(a, neg(b)))

    # identity: two contexts with the same modulus share elements
    @property
    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.p, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"FieldCtx({self.name})"

    @property
    def k(self) -> int:
        return len(self.modulus) - 1

    @property
    def size(self) -> int:
        return self.p**self.k

    @property
    def name(self) -> str:
        return f"F_{self.size}"

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    def _slow_add(self, a: int, b: int) -> int:
        ar = self._ar
        return ar.undigits([(x + y) % self.p for x, y in zip(ar.digits(a), ar.digits(b))])

    def _slow_neg(self, a: int) -> int:
        ar = self._ar
        return ar.undigits([-x % self.p for x in ar.digits(a)])

    # code-level API (ints); add/sub/neg/mul are bound in __post_init__
    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + self.name)
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        ar = self._ar
        if ar.exp is None:
            return ar.slow_pow(a, ar.size - 2)
        n = ar.size - 1
        return ar.exp[(n - ar.log[a]) % n]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.k == 1:
            return pow(a, e, self.p)
        ar = self._ar
        if ar.exp is None:
            return ar.slow_pow(a, e % (ar.size - 1) or (ar.size - 1))
        n = ar.size - 1
        return ar.exp[(ar.log[a] * e) % n]

    def from_int(self, n: int) -> int:
        return n % self.p

    def digits(self, a: int) -> list[int]:
        return self._ar.digits(a)

    def from_digits(self, ds: Sequence[int]) -> int:
        ds = [d % self.p for d in ds]
        if len(ds) > self.k:
            raise FieldError(f"coefficient vector longer than degree {self.k}")
        return self._ar.undigits(ds + [0] * (self.k - len(ds)))

    def sort_key(self, a: int) -> tuple[int, ...]:
        """Little-endian lexicographic key: compares c_0 first."""
        return tuple(self._ar.digits(a))

    @property
    def gen_code(self) -> int:
        return self.p if self.k > 1 else 0

    # element-level API
    def __call__(self, x: "int | Sequence[int] | FieldElem") -> "FieldElem":
        if isinstance(x, FieldElem):
            return FieldElem(self, self.embed_code(x.v, x.ctx))
        if isinstance(x, int):
            return FieldElem(self, x % self.p)
        return FieldElem(self, self.from_digits(list(x)))

    def elem(self, code: int) -> "FieldElem":
        return FieldElem(self, code)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    @property
    def gen(self) -> "FieldElem":
        return FieldElem(self, self.gen_code)

    @property
    def alpha_elem(self) -> "FieldElem":
        if self.alpha is None:
            raise FieldError(f"{self.name} has no distinguished element alpha")
        return FieldElem(self, self.alpha)

    def codes(self) -> list[int]:
        """All element codes in the deterministic coefficient-vector order."""
        if self.size > MAX_ENUMERATE:
            raise FieldError(f"{self.name} exceeds enumeration guard {MAX_ENUMERATE}")
        order = self._embed_cache.get("__order__")
        if order is None:
            order = sorted(range(self.size), key=self.sort_key)
            self._embed_cache["__order__"] = order
        return order

    # embeddings
    def chain(self) -> list["FieldCtx"]:
        out, c = [], self
        while c is not None:
            out.append(c)
            c = c.parent
        return out

    def contains(self, other: "FieldCtx") -> bool:
        """True iff ``other`` embeds into this field along the parent chain."""
        if other.is_prime and other.p == self.p:
            return True
        return any(c == other for c in self.chain())

    def embed_code(self, code: int, src: "FieldCtx") -> int:
        if src == self:
            return code
        if src.p != self.p:
            raise FieldError(f"cannot embed {src.name} into {self.name}")
        if src.is_prime:
            return code
        table = self._embed_cache.get(src.key)
        if table is None:
            table = self._embedding_table(src)
            self._embed_cache[src.key] = table
        return table[code]

    def _embedding_table(self, src: "FieldCtx") -> list[int]:
        path = []
        c = self
        while c is not None and c != src:
            path.append(c)
            c = c.parent
        if c is None:
            raise FieldError(f"{src.name} is not a parent of {self.name}")
        # images of all src codes, pushed one parent->child step at a time
        cur_ctx = src
        table = list(range(src.size))
        for child in reversed(path):
            if cur_ctx.is_prime:
                step = list(range(cur_ctx.size))
            else:
                beta = child.parent_image
                powers = [1]
                for _ in range(cur_ctx.k - 1):
                    powers.append(child.mul(powers[-1], beta))
                step = []
                for a in range(cur_ctx.size):
                    acc = 0
                    for d, bp in zip(cur_ctx.digits(a), powers):
                        if d:
                            acc = child.add(acc, child.mul(child.from_int(d), bp))
                    step.append(acc)
            table = [step[t] for t in table]
            cur_ctx = child
        return table

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def format_code(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        ds = self.digits(a)
        parts = []
        for i in range(len(ds) - 1, -1, -1):
            d = ds[i]
            if not d:
                continue
            if i == 0:
                parts.append(str(d))
                continue
            mono = "g" if i == 1 else f"g^{i}"
            parts.append(mono if d == 1 else f"{d}*{mono}")
        return "+".join(parts) if parts else "0"


class FieldElem:
    """An element of a :class:`FieldCtx`; immutable."""

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldCtx, v: int):
        self.ctx = ctx
        self.v = v

    def _other(self, o) -> int:
        if isinstance(o, FieldElem):
            if o.ctx == self.ctx:
                return o.v
            if self.ctx.contains(o.ctx):
                return self.ctx.embed_code(o.v, o.ctx)
            raise FieldError(f"context mismatch: {self.ctx.name} vs {o.ctx.name}")
        if isinstance(o, int):
            return o % self.ctx.p
        return NotImplemented

    def __add__(self, o):
        b = self._other(o)
        return FieldElem(self.ctx, self.ctx.add(self.v, b))

    __radd__ = __add__

    def __sub__(self, o):
        b = self._other(o)
        return FieldElem(self.ctx, self.ctx.sub(self.v, b))

    def __rsub__(self, o):
        b = self._other(o)
        return FieldElem(self.ctx, self.ctx.sub(b, self.v))

    def __mul__(self, o):
        b = self._other(o)
        return FieldElem(self.ctx, self.ctx.mul(self.v, b))

    __rmul__ = __mul__

    def __truediv__(self, o):
        b = self._other(o)
        return FieldElem(self.ctx, self.ctx.div(self.v, b))

    def __rtruediv__(self, o):
        b = self._other(o)
        return FieldElem(self.ctx, self.ctx.div(b, self.v))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.v))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.v, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.v))

    def __eq__(self, o) -> bool:
        if isinstance(o, FieldElem):
            if o.ctx == self.ctx:
                return o.v == self.v
            if self.ctx.contains(o.ctx):
                return self.ctx.embed_code(o.v, o.ctx) == self.v
            if o.ctx.contains(self.ctx):
                return o.ctx.embed_code(self.v, self.ctx) == o.v
            return False
        if isinstance(o, int):
            return self.v == o % self.ctx.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.key, self.v))

    def __bool__(self) -> bool:
        return self.v != 0

    def is_zero(self) -> bool:
        return self.v == 0

    @property
    def coeffs(self) -> list[int]:
        return self.ctx.digits(self.v)

    def sort_key(self) -> tuple[int, ...]:
        return self.ctx.sort_key(self.v)

    def __lt__(self, o: "FieldElem") -> bool:
        return self.sort_key() < o.sort_key()

    def __repr__(self) -> str:
        return self.ctx.format_code(self.v)

    def to_json(self) -> list[int]:
        return self.coeffs


# ---------------------------------------------------------------------------
# dense univariate helpers over a context (little-endian code lists)


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod(ctx: FieldCtx, f: list[int], m: list[int]) -> list[int]:
    f = list(f)
    dm = len(m) - 1
    inv_lead = ctx.inv(m[-1])
    mul, sub = ctx.mul, ctx.sub
    for top in range(len(f) - 1, dm - 1, -1):
        c = f[top]
        if c:
            c = mul(c, inv_lead)
            off = top - dm
            for j in range(dm + 1):
                if m[j]:
                    f[off + j] = sub(f[off + j], mul(c, m[j]))
    return _trim(f[:dm])


def _pmul(ctx: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    mul, add = ctx.mul, ctx.add
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return _trim(out)


def _pgcd(ctx: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(ctx, a, b)
    if a:
        inv = ctx.inv(a[-1])
        a = [ctx.mul(c, inv) for c in a]
    return a


def _ppowmod(ctx: FieldCtx, base: list[int], e: int, m: list[int]) -> list[int]:
    result = [1]
    base = _pmod(ctx, base, m)
    while e:
        if e & 1:
            result = _pmod(ctx, _pmul(ctx, result, base), m)
        base = _pmod(ctx, _pmul(ctx, base, base), m)
        e >>= 1
    return result


def _x_power_chain(ctx: FieldCtx, f: list[int], upto: int) -> list[list[int]]:
    """[x^(Q^j) mod f for j = 0..upto] with Q = |ctx|."""
    x = _pmod(ctx, [0, 1], f)
    out = [x]
    cur = x
    for _ in range(upto):
        cur = _ppowmod(ctx, cur, ctx.size, f)
        out.append(cur)
    return out


def _sub_x(ctx: FieldCtx, g: list[int]) -> list[int]:
    g = list(g) + [0] * max(0, 2 - len(g))
    g[1] = ctx.sub(g[1], 1)
    return _trim(g)


def _smallest_factor_degree(ctx: FieldCtx, f: list[int]) -> int | None:
    """Degree of the smallest irreducible factor when f is reducible, else None."""
    n = len(f) - 1
    chain = _x_power_chain(ctx, f, n // 2)
    for j in range(1, n // 2 + 1):
        g = _pgcd(ctx, f, _sub_x(ctx, chain[j]))
        if len(g) > 1:
            return j
    return None


def is_irreducible(ctx: FieldCtx, f: Sequence[int]) -> bool:
    """Rabin's test for a monic polynomial given as little-endian codes."""
    f = _trim(list(f))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    chain = _x_power_chain(ctx, f, n)
    if _sub_x(ctx, chain[n]) != []:
        return False
    for r in _prime_factors(n):
        g = _pgcd(ctx, f, _sub_x(ctx, chain[n // r]))
        if len(g) > 1:
            return False
    return True


def _poly_codes(ctx: FieldCtx, poly) -> list[int]:
    """Accept codes, ints, FieldElems, or an object with ``univariate_coeffs``."""
    if hasattr(poly, "univariate_coeffs"):
        if poly.ctx != ctx:
            raise FieldError(f"polynomial over {poly.ctx.name}, expected {ctx.name}")
        return list(poly.univariate_coeffs())
    out = []
    for c in poly:
        if isinstance(c, FieldElem):
            out.append(ctx.embed_code(c.v, c.ctx))
        else:
            out.append(int(c))
    return _trim(out)


# ---------------------------------------------------------------------------
# constructions


def make_prime_field(p: int) -> FieldCtx:
    if not (isinstance(p, int) and p <= MAX_PRIME and _is_prime(p)):
        raise FieldError(f"{p} is not a prime (<= 2^31)")
    return FieldCtx(p, (0, 1))


def _prime_of(ctx: FieldCtx) -> FieldCtx:
    return make_prime_field(ctx.p)


def find_irreducible(ctx: FieldCtx, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of ``degree`` over ``ctx``.

    Candidates are ordered by their coefficient vectors (c_0, ..., c_{n-1}),
    each coefficient compared by the field's element order.
    """
    if degree < 1:
        raise FieldError("degree must be >= 1")
    order = ctx.codes()
    for cs in itertools.product(order, repeat=degree):
        f = list(cs) + [1]
        if degree > 1 and cs[0] == 0:
            continue
        if is_irreducible(ctx, f):
            return tuple(f)
    raise AssertionError("unreachable: irreducibles exist in every degree")  # pragma: no cover


def _roots_in(ctx: FieldCtx, f: list[int]) -> list[int]:
    out = []
    mul, add = ctx.mul, ctx.add
    for x in ctx.codes():
        acc = 0
        for c in reversed(f):
            acc = add(mul(acc, x), c)
        if acc == 0:
            out.append(x)
    return out


def extend_field(base: FieldCtx, modulus) -> FieldCtx:
    """Build base[T]/(modulus), flattened over the prime field.

    The result records an embedding of ``base`` and carries ``alpha``, the
    image of T.
    """
    f = _poly_codes(base, modulus)
    m = len(f) - 1
    if m < 1:
        raise FieldError("modulus must have degree >= 1")
    if f[-1] != 1:
        raise FieldError("modulus must be monic")
    j = _smallest_factor_degree(base, f)
    if j is not None:
        raise FieldError(f"modulus is reducible over {base.name}: factor of degree {j}")
    if m == 1:
        return replace(base, alpha=base.neg(f[0]), _embed_cache={})
    if base.is_prime:
        return FieldCtx(base.p, tuple(f), parent=base, parent_image=None, alpha=base.p)
    child = FieldCtx(base.p, find_irreducible(_prime_of(base), base.k * m))
    beta = min(_roots_in(child, list(base.modulus)), key=child.sort_key)
    child = FieldCtx(child.p, child.modulus, parent=base, parent_image=beta)
    image = [child.embed_code(c, base) for c in f]
    alpha = min(_roots_in(child, image), key=child.sort_key)
    return replace(child, alpha=alpha, _embed_cache={})


def quadratic_extension(ctx: FieldCtx) -> FieldCtx:
    """The degree-2 extension of ``ctx``, with ``alpha`` carried along."""
    prime = _prime_of(ctx)
    child = FieldCtx(ctx.p, find_irreducible(prime, 2 * ctx.k))
    if ctx.is_prime:
        beta = None
    else:
        beta = min(_roots_in(child, list(ctx.modulus)), key=child.sort_key)
    child = FieldCtx(ctx.p, child.modulus, parent=ctx, parent_image=beta)
    if ctx.alpha is not None:
        child = replace(child, alpha=child.embed_code(ctx.alpha, ctx), _embed_cache={})
    return child


def enumerate_field(ctx: FieldCtx) -> list[FieldElem]:
    return [FieldElem(ctx, c) for c in ctx.codes()]


def frobenius(x: FieldElem, ctx_of_q: FieldCtx) -> FieldElem:
    """x -> x^q with q = |ctx_of_q|; ctx_of_q must be a subfield of x's field."""
    if ctx_of_q.p != x.ctx.p or x.ctx.k % ctx_of_q.k:
        raise FieldError(f"{x.ctx.name} is not an extension of {ctx_of_q.name}")
    return x ** ctx_of_q.size


def prime_power(q: int) -> tuple[int, int]:
    """(p, m) with q = p^m, or FieldError."""
    if not isinstance(q, int) or q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = _prime_factors(q)[0]
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, m


def base_field(q: int) -> FieldCtx:
    """The base-q context F_q, built over the prime field with the smallest modulus."""
    p, m = prime_power(q)
    Fp = make_prime_field(p)
    if m == 1:
        return Fp
    return FieldCtx(p, find_irreducible(Fp, m), parent=Fp)
