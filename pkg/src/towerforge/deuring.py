"""The polynomials p_i(s) over F_q(T), their reductions mod L, and splitting sets.

p_{-1} = 0, p_0 = 1 and
    p_{i+1} = (s^{q^i} - 1) p_i + ((T^{q^i-1} - 1)/T^{q^i-1}) s^{q^i} p_{i-1}.
Every p_i is stored as a RatFun whose denominator is a power of T.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field

from .checks import Check
from .fields import FieldCtx, FieldElem, FieldError, extend_field, find_irreducible, make_prime_field
from .grammar import format_poly
from .polys import MPoly, RatFun, Root, derivative, distinct_roots, reduce_mod_L, substitute
from .primes import as_prime, is_T, residue_field, residue_field2

MAX_DEGREE = 2**14


def m_d(q: int, d: int) -> int:
    """(q^d - 1)/(q - 1): degree of p_d and the supersingular count at a prime of degree d."""
    return (q**d - 1) // (q - 1)


@dataclass
class RootReport:
    L: MPoly
    d: int
    field: FieldCtx
    roots: list[Root]
    value_at_zero: FieldElem
    m_d: int
    q1_powers: bool

    @property
    def ok(self) -> bool:
        return (
            len(self.roots) == self.m_d
            and all(r.simple for r in self.roots)
            and not self.value_at_zero.is_zero()
        )

    def to_json(self) -> dict:
        return {
            "L": format_poly(self.L),
            "d": self.d,
            "field": self.field.to_json(),
            "roots": [r.value.to_json() for r in self.roots],
            "all_simple": all(r.simple for r in self.roots),
            "value_at_zero": self.value_at_zero.to_json(),
            "m_d": self.m_d,
            "roots_are_q-1_powers": self.q1_powers,
            "ok": self.ok,
        }


@dataclass
class SplitSet:
    L: MPoly
    tag: str
    field: FieldCtx
    members: list[FieldElem]
    predicted: int

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a: FieldElem) -> bool:
        return a in self._lookup

    @property
    def _lookup(self) -> frozenset:
        return frozenset(self.members)

    def to_json(self) -> dict:
        return {
            "L": format_poly(self.L),
            "tag": self.tag,
            "field": self.field.to_json(),
            "members": [m.to_json() for m in self.members],
            "predicted": self.predicted,
            "actual": len(self.members),
        }


class DeuringFamily:
    """The sequence p_i(s) for a fixed base field F_q, with per-index caches."""

    def __init__(self, Fq: FieldCtx):
        self.Fq = Fq
        self.q = Fq.size
        self._exact: dict[int, RatFun] = {}
        self._depth1: dict[int, RatFun] = {}
        self._mod: dict[tuple, MPoly] = {}
        self._lock = threading.RLock()
        self.s = MPoly.var(Fq, "s")
        self.T = MPoly.var(Fq, "T")
        self.one = MPoly.const(Fq, 1)

    def _guard(self, i: int) -> None:
        if i < -1:
            raise ValueError("index must be >= -1")
        if i >= 0 and m_d(self.q, i) > MAX_DEGREE:
            raise ValueError(f"degree of p_{i} exceeds the guard {MAX_DEGREE}")

    # exact family ---------------------------------------------------------
    def p_exact(self, i: int) -> RatFun:
        self._guard(i)
        with self._lock:
            if i not in self._exact:
                self._fill_exact(i)
            return self._exact[i]

    def _fill_exact(self, upto: int) -> None:
        zero = MPoly.zero(self.Fq)
        if -1 not in self._exact:
            self._exact[-1] = RatFun(zero)
            self._exact[0] = RatFun(self.one)
        # numerators over T^e, kept as (num, e) pairs to avoid repeated normalisation
        lau = {j: (r.num, r.den.degree("T")) for j, r in self._exact.items()}
        top = max(self._exact)
        s, T, q = self.s, self.T, self.q
        for i in range(top, upto):
            Q = q**i
            n1, e1 = lau[i]
            n0, e0 = lau[i - 1]
            E = max(e1, e0 + Q - 1)
            sQ = s**Q
            num = (sQ - 1) * n1 * T ** (E - e1) + (T ** (Q - 1) - 1) * sQ * n0 * T ** (E - e0 - (Q - 1))
            lau[i + 1] = (num, E)
            self._exact[i + 1] = RatFun(num, T**E)

    def p_exact_depth1(self, i: int) -> RatFun:
        """p_i from p_{i-1} alone: (-1)^{i+1} s^{m_i} p_{i-1}(1/(T^{q-1} s)) - p_{i-1}(s)."""
        self._guard(i)
        if i < 0:
            raise ValueError("depth-one recursion starts at i = 0")
        with self._lock:
            if i not in self._depth1:
                if i == 0:
                    self._depth1[0] = RatFun(self.one)
                else:
                    prev = self.p_exact_depth1(i - 1)
                    inv = RatFun(self.one, self.T ** (self.q - 1) * self.s)
                    flipped = substitute(prev, {"s": inv})
                    sign = 1 if (i + 1) % 2 == 0 else -1
                    term = flipped * RatFun(self.s ** m_d(self.q, i))
                    self._depth1[i] = (term if sign > 0 else -term) - prev
            return self._depth1[i]

    def degree(self, i: int) -> int:
        return self.p_exact(i).num.degree("s")

    def value_at_zero(self, i: int) -> RatFun:
        r = self.p_exact(i)
        return RatFun(r.num.specialize({"s": 0}), r.den)

    # identities -----------------------------------------------------------
    def _shifted_arg(self) -> RatFun:
        s, T, q = self.s, self.T, self.q
        return RatFun(s**q, (T * (s + 1)) ** (q - 1))

    def verify_theorem15(self, i: int) -> Check:
        """p_i(s(s+1)^{q-1}) - (T(s+1))^{q^i-1} p_i(y) = (T^{q^i-1}-1)(s+1)^{q^i-1} p_{i-1}(y), y = s^q/(T(s+1))^{q-1}."""
        s, T, q = self.s, self.T, self.q
        name = f"theorem15 q={q} i={i}"
        if i == 0:
            lhs = RatFun(self.one) - RatFun(self.one)
            return Check(name, lhs.is_zero(), "exact")
        y = self._shifted_arg()
        Qm = q**i - 1
        lhs = substitute(self.p_exact(i), {"s": s * (s + 1) ** (q - 1)})
        lhs = lhs - RatFun((T * (s + 1)) ** Qm) * substitute(self.p_exact(i), {"s": y})
        rhs = RatFun((T**Qm - 1) * (s + 1) ** Qm) * substitute(self.p_exact(i - 1), {"s": y})
        diff = lhs - rhs
        return Check(name, diff.is_zero(), "exact", None if diff.is_zero() else diff.num)

    def verify_theorem15_random(self, i: int, points: int = 20, seed: int = 0, K: FieldCtx | None = None) -> Check:
        """Evaluate both sides of the key identity at random (s, T) in an extension field."""
        K = K or _evaluation_field(self.Fq)
        rng = random.Random(seed)
        q = self.q
        p_i, p_prev = self.p_exact(i), self.p_exact(i - 1) if i >= 1 else None
        name = f"theorem15-random q={q} i={i}"
        tried = 0
        done = 0
        codes = K.codes()
        while done < points:
            tried += 1
            if tried > 50 * points:
                return Check(name, False, f"only {done} admissible points found")
            sv, Tv = FieldElem(K, rng.choice(codes)), FieldElem(K, rng.choice(codes))
            if Tv.is_zero() or (sv + 1).is_zero():
                continue
            y = sv**q / (Tv * (sv + 1)) ** (q - 1)
            Qm = q**i - 1
            lhs = _eval(p_i, sv * (sv + 1) ** (q - 1), Tv) - (Tv * (sv + 1)) ** Qm * _eval(p_i, y, Tv)
            rhs = (Tv**Qm - 1) * (sv + 1) ** Qm * (_eval(p_prev, y, Tv) if p_prev is not None else K.zero)
            rec = self.eval_recursive(i, y, Tv)
            if lhs != rhs or rec != _eval(p_i, y, Tv):
                return Check(name, False, f"mismatch at s={sv}, T={Tv} in {K.name}", (sv, Tv))
            done += 1
        return Check(name, True, f"{points} points in {K.name}, seed {seed}")

    def eval_recursive(self, i: int, x: FieldElem, Tv: FieldElem) -> FieldElem:
        """p_i(x) at T = Tv, run through the recursion numerically."""
        K = x.ctx
        prev, cur = K.zero, K.one
        for j in range(i):
            Q = self.q**j
            t = Tv ** (Q - 1)
            prev, cur = cur, (x**Q - 1) * cur + (t - 1) / t * x**Q * prev
        return cur

    def verify_reciprocal(self, i: int) -> Check:
        """p_i(1/(T^{q-1}s)) = (-1)^{i+1} (sT^{q-1})^{-m_i} p_{i-1}(s) - p_{i-1}(1/(T^{q-1}s))."""
        s, T, q = self.s, self.T, self.q
        inv = RatFun(self.one, T ** (q - 1) * s)
        lhs = substitute(self.p_exact(i), {"s": inv})
        scale = RatFun(self.one, (s * T ** (q - 1)) ** m_d(q, i))
        first = scale * self.p_exact(i - 1)
        rhs = (first if i % 2 == 1 else -first) - substitute(self.p_exact(i - 1), {"s": inv})
        diff = lhs - rhs
        return Check(f"reciprocal q={q} i={i}", diff.is_zero(), "exact", None if diff.is_zero() else diff.num)

    # reductions -----------------------------------------------------------
    def p_mod(self, L: "MPoly | str", i: int | None = None) -> MPoly:
        L = as_prime(L, self.Fq)
        if is_T(L):
            raise FieldError("L = T is excluded: T divides the denominators of p_i")
        if i is None:
            i = L.degree()
        key = (tuple(L.univariate_coeffs("T")), i)
        with self._lock:
            if key not in self._mod:
                self._mod[key] = reduce_mod_L(self.p_exact(i), L, residue_field(L))
            return self._mod[key]

    def check_prop13(self, L: "MPoly | str") -> RootReport:
        L = as_prime(L, self.Fq)
        d = L.degree()
        pd = self.p_mod(L, d)
        K = residue_field2(L)
        roots = distinct_roots(pd, K)
        at0 = pd.evaluate({"s": 0}, K) if pd.vars else pd.constant_value()
        e = (K.size - 1) // (self.q - 1)
        q1 = all((r.value**e) == K.one for r in roots)
        return RootReport(L, d, K, roots, at0, m_d(self.q, d), q1)

    def splitting_set(self, L: "MPoly | str", tag: str, K: FieldCtx | None = None) -> SplitSet:
        """Scan K for a with p_d^(L)(f(a)) = 0, f(a) = a(a+1)^{q-1} (E), (a^q+a)^{q-1} (F), a^q+a (F_literal)."""
        L = as_prime(L, self.Fq)
        d = L.degree()
        q = self.q
        K = K or residue_field2(L)
        pd = self.p_mod(L, d)
        coeffs = [K.embed_code(c, pd.ctx) for c in pd.univariate_coeffs("s")]
        maps = {
            "E": lambda a: K.mul(a, K.pow(K.add(a, 1), q - 1)),
            "F": lambda a: K.pow(K.add(K.pow(a, q), a), q - 1),
            "F_literal": lambda a: K.add(K.pow(a, q), a),
        }
        if tag not in maps:
            raise ValueError(f"unknown splitting-set tag {tag!r}")
        f = maps[tag]
        members = []
        for a in K.codes():
            x = f(a)
            acc = 0
            for c in reversed(coeffs):
                acc = K.add(K.mul(acc, x), c)
            if acc == 0:
                members.append(FieldElem(K, a))
        factor = {"E": q, "F": q * (q - 1), "F_literal": q}[tag]
        return SplitSet(L, tag, K, members, factor * m_d(q, d))


def _eval(r: RatFun, x: FieldElem, Tv: FieldElem) -> FieldElem:
    return r.evaluate({"s": x, "T": Tv}, x.ctx)


def _evaluation_field(Fq: FieldCtx) -> FieldCtx:
    """A mid-size extension of Fq for randomized identity checks (F_256 or F_81 style)."""
    p = Fq.p
    target = {2: 8, 3: 4}.get(p, 2)
    k = max(Fq.k, target)
    while k % Fq.k:
        k += 1
    if Fq.is_prime:
        return extend_field(Fq, find_irreducible(Fq, k))
    return extend_field(Fq, find_irreducible(Fq, k // Fq.k))


_FAMILIES: dict = {}
_FAMILIES_LOCK = threading.Lock()


def family(Fq: "FieldCtx | int") -> DeuringFamily:
    """Shared DeuringFamily per base field (the exact p_i are expensive to rebuild)."""
    if isinstance(Fq, int):
        from .fields import base_field

        Fq = base_field(Fq)
    with _FAMILIES_LOCK:
        fam = _FAMILIES.get(Fq.key)
        if fam is None:
            fam = _FAMILIES[Fq.key] = DeuringFamily(Fq)
        return fam


def prime_list(Fq: FieldCtx, max_degree: int | None = None) -> list[MPoly]:
    """Monic irreducibles L != T up to the degree validated for this q."""
    from .polys import monic_irreducibles

    if max_degree is None:
        max_degree = {2: 3, 3: 2, 4: 2}.get(Fq.size, 1)
    out = []
    for d in range(1, max_degree + 1):
        out.extend(L for L in monic_irreducibles(Fq, d) if not is_T(L))
    return out


def run_all(q: int = 2, seed: int = 0) -> list[Check]:
    from .checks import timed

    fam = family(q)
    out = []
    for i in range(6):
        out.append(timed(f"depth-one recursion q={q} i={i}", lambda i=i: fam.p_exact(i) == fam.p_exact_depth1(i)))
        out.append(
            timed(
                f"p_{i}(0) = (-1)^{i} q={q}",
                lambda i=i: fam.value_at_zero(i) == RatFun(MPoly.const(fam.Fq, (-1) ** i)),
            )
        )
        out.append(timed(f"deg p_{i} = m_{i} q={q}", lambda i=i: fam.degree(i) == m_d(q, i)))
    if q in (2, 3):
        for i in range(4):
            out.append(timed(f"theorem15 q={q} i={i}", lambda i=i: fam.verify_theorem15(i)))
    out.append(timed(f"theorem15-random q={q} i=4", lambda: fam.verify_theorem15_random(4, seed=seed)))
    for i in range(1, 4):
        out.append(timed(f"reciprocal q={q} i={i}", lambda i=i: fam.verify_reciprocal(i)))
    for L in prime_list(fam.Fq):
        name = format_poly(L)
        out.append(timed(f"prop13 q={q} L={name}", lambda L=L: Check("", fam.check_prop13(L).ok)))
        for tag in ("E", "F"):
            out.append(
                timed(
                    f"splitting set {tag} q={q} L={name}",
                    lambda L=L, tag=tag: (lambda S: Check("", len(S) == S.predicted, f"{len(S)}/{S.predicted}"))(
                        fam.splitting_set(L, tag)
                    ),
                )
            )
    return out
