"""Embedded q = 2 modular polynomials, parametrizations and factorizations, with verifiers.

Variables: X = j_0 (or u_{e-1}), Y = j_1 (or u_e), Z = j_2, u = uniformizer.
Every data string is checksummed so transcription slips surface loudly.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .checks import Check
from .fields import FieldCtx, make_prime_field
from .grammar import format_poly, parse_poly, parse_ratfun
from .polys import MPoly, RatFun, factor_univariate_over_Fq, exact_divide, pseudo_reduce, reduce_mod_L, substitute
from .primes import as_prime, residue_field

PHI_T = """
X^3 + Y^3 + T(T+1)^3(X^2 + Y^2) + T^2(T+1)^6(X+Y) + T^3(T+1)^9 + X^2Y^2
+ (T+1)^3(T^2 + T + 1)XY + T(X^2Y + XY^2)
"""

PSI_T = """
Z^2 + (X + (Y^2 + TY + T(T+1)^3))Z + X^2 + (Y^2 + TY + T(T+1)^3)X + TY^2
+ (T^2 + T + 1)(T+1)^3Y + T^2(T+1)^6
"""

U0_T = """
T^3(T^2X + T^2 + T^4 + T^6 + 1 + TY + T^2Y + TX + XY)
/ (T^3 + Y^2 + T^2 + X + TY + T^3X + T^7 + T^4Y + T^6)
"""

PHI_T2T1 = """
X^5 + Y^5 + X^4 Y^4 + (T^2 + T + 1)(X^4 Y^2 + X^2 Y^4)
+ (T^2 + T + 1)(X^4 Y + X Y^4) + T^3(T + 1)^3(T^2 + T + 1)(X^4 + Y^4)
+ T^2(T + 1)^2(T^2 + T + 1)X^3 Y^3
+ T(T + 1)(T^2 + T + 1)(T^3 + T + 1)(T^3 + T^2 + 1)(X^3 Y^2 + X^2 Y^3)
+ T^3(T + 1)^3(T^2 + T + 1)(X^3 Y + X Y^3) + T^6(T + 1)^6(T^2 + T + 1)^2(X^3 + Y^3)
+ T^5(T + 1)^5(T^2 + T + 1)(T^4 + T + 1)X^2 Y^2
+ T^6(T + 1)^6(T^2 + T + 1)(T^4 + T + 1)(X^2 Y + X Y^2)
+ T^9(T + 1)^9(T^2 + T + 1)^3(X^2 + Y^2) + T^{11}(T + 1)^{11}XY
"""

EXPANDED_T2T1 = """
(Y^5 + (T^2 + T + 1)Y^3 + (T^2 + T + 1)Y^2 + (T^2 + T)Y + (T^2 + T + 1))X^4
+ Y(X^5 + (T^2 + T)X^4 + (T^2 + T + 1)^2 X^3 + (T^2 + T + 1)^3 X^2 + (T^2 + T + 1)^4)
"""

F_T2T1_AS_GIVEN = """
Y^4 X^3 + (T^2 + T + 1)(Y^3 X^2 + Y^2 X^3 + (T^2 + T + 1)Y^2 X + Y X^3)
+ (T^2 + T + 1)Y X^2 + (T^2 + T + 1)^2 Y + X^4
"""

# exact cofactor of XY + T^2 + T + 1; differs from the given form in the YX^2 and Y coefficients
F_T2T1 = """
Y^4 X^3 + (T^2 + T + 1)(Y^3 X^2 + Y^2 X^3 + (T^2 + T + 1)Y^2 X + Y X^3)
+ (T^2 + T + 1)^2 Y X^2 + (T^2 + T + 1)^3 Y + X^4
"""

U0_T2T1_MOD_T_AS_GIVEN = """
(X^4 Y^3 + X^4 Y^2 + X^4 Y + X^4 + X^3 Y^7 + X^3 Y^6 + X^3 Y^4 + X^2 Y^5 + X Y^5 + X Y^4 + X^6 + Y^4) / Y^8
"""

# the X^6 term of the given form must be Y^6 for the expression to return u
U0_T2T1_MOD_T = """
(X^4 Y^3 + X^4 Y^2 + X^4 Y + X^4 + X^3 Y^7 + X^3 Y^6 + X^3 Y^4 + X^2 Y^5 + X Y^5 + X Y^4 + Y^6 + Y^4) / Y^8
"""

REDUCED_T2T1 = "Y^4 X^3 + Y^3 X^2 + Y^2 X^3 + Y^2 X + Y X^3 + Y X^2 + Y + X^4"

PHI_T2T_AS_GIVEN = """
X^9 + Y^9 + (X^8 Y^4 + X^4 Y^8) + (T^2 + T + 1)(X^8 Y^2 + X^2 Y^8)
+ (T^2 + T)(X^8 Y + X Y^8) + (T^6 + T^5 + T^3 + T^2 + 1)(T^2 + T)(X^8 + Y^8) + (X^7 Y^4 + X^4 Y^7)
+ (T^2 + T)^3(X^7 Y^3 + X^3 Y^7) + (T^5 + T^4 + T^3 + T + 1)(T^5 + T^3 + T^2 + T + 1)(T^2 + T)^3(X^7 + Y^7)
+ (X^6 Y^5 + X^5 Y^6) + (X^6 Y^4 + X^4 Y^6) + (T^2 + T + 1)^5(X^6 Y^3 + X^3 Y^6)
+ (T^7 + T^6 + T^5 + T^4 + T^2 + T + 1)(T^7 + T^3 + T^2 + T + 1)(T^2 + T)(X^6 Y^2 + X^2 Y^6)
+ (T^{14} + T^{13} + T^{11} + T^{10} + T^7 + T^5 + T^4 + T^2 + 1)(T^2 + T)^2(X^6 Y + X Y^6)
+ (T^4 + T + 1)(T^2 + T + 1)(T^2 + T)^5(T^8 + T^6 + T^5 + T^4 + T^3 + T + 1)(X^6 + Y^6)
+ X^5 Y^5 + (T^2 + T + 1)(T^2 + T)^2(X^5 Y^4 + X^4 Y^5) + (T^2 + T)^2(X^5 Y^3 + X^3 Y^5)
+ (T^9 + T^8 + T^7 + T^5 + 1)(T^9 + T^7 + T^6 + T^3 + T^2 + T + 1)(X^5 Y^2 + X^2 Y^5)
+ (T^6 + T^5 + T^2 + T + 1)(T^6 + T^5 + 1)(T^2 + T + 1)^3(T^2 + T)^2(X^5 Y + X Y^5)
+ (T^5 + T^3 + T^2 + T + 1)(T^5 + T^4 + T^3 + T + 1)(T^2 + T + 1)(T^2 + T)^5(X^5 + Y^5)
+ (T^{18} + T^{17} + T^{16} + T^{10} + T^9 + T^4 + T^2 + T + 1)(T^2 + T + 1)^2(T^2 + T)(X^4 Y^2 + X^2 Y^4)
+ (T^2 + T + 1)^2(T^2 + T)^7(X^4 Y + X Y^4) + (T^2 + T)^8(T^6 + T^5 + T^3 + T^2 + 1)(X^4 + Y^4)
+ (T^{10} + T^9 + T^8 + T^6 + T^5 + T + 1)(T^2 + T + 1)^3 X^3 Y^3
+ (T^8 + T^7 + T^2 + T + 1)(T^8 + T^7 + T^6 + T^5 + T^4 + T^3 + 1)(T^2 + T + 1)(T^2 + T)^2(X^3 Y^2 + X^2 Y^3)
+ (T^2 + T + 1)(T^2 + T)^4(T^{10} + T^9 + T^8 + T^3 + T^2 + T + 1)(X^3 Y + X Y^3)
+ (T^4 + T + 1)(T^3 + T + 1)(T^3 + T^2 + 1)(T^2 + T + 1)^3(T^2 + T)^3 X^2 Y^2
+ (T^2 + T)^{10}(X^2 Y + X Y^2) + (T^2 + T)^{10}(X^2 + Y^2) + (T^4 + T + 1)(T^2 + T)^7(X^3 + Y^3)
+ (T^3 + T + 1)(T^3 + T^2 + 1)(T^2 + T)^6 X Y + (T^2 + T + 1)(T^2 + T)^8(X + Y) + (T^2 + T)^9
"""

# four symmetric term groups absent from the given Phi_{T^2+T}; recovered as the unique
# sparse solution making the given j_0(u), j_1(u) a zero of Phi
PHI_T2T_MISSING = """
(T^8 + T^4 + T^2 + T + 1)(X^7 Y + X Y^7) + (T^10 + T^9 + T^8 + T^4 + T^3 + T + 1)(X^7 Y^2 + X^2 Y^7)
+ (T^10 + T^9 + T^4 + T^3 + T^2 + T)(X^4 Y^3 + X^3 Y^4) + (T^6 + T^5 + T^3 + T^2 + 1)X^4 Y^4
"""

PHI_T2T = PHI_T2T_AS_GIVEN + "+" + PHI_T2T_MISSING

F_T2T = """
Y^4X^3 + Y^4X^2 + (T^2+T)Y^4X + (T^2+T)Y^3X^2 + (T^2+T)Y^3X + (T^4+T^2)Y^3 + (T^2+T+1)Y^2X^3
+ (T^4+T^2)Y^2X + (T^4+T^2)Y^2 + (T^2+T)YX^3 + (T^4+T)YX^2 + (T^6+T^5+T^4+T^3)Y + X^4
"""

REDUCED_T2T = "Y^4X^3 + Y^4X^2 + Y^4X + Y^3X^2 + Y^3X + Y^3 + Y^2X + Y^2 + YX^3 + Y + X^4"


@dataclass(frozen=True)
class ModularData:
    level: str
    phi: str
    j0: str
    j1: str
    factors: tuple[str, ...]
    f_index: int
    expanded: str | None = None
    psi: str | None = None
    extra: dict = field(default_factory=dict)


DATA = {
    "T": ModularData(
        level="T",
        phi=PHI_T,
        j0="(u + T)^3/u",
        j1="(u + T^2)^3/u^2",
        factors=("XY + T^3", "X^2 + XY^2 + XYT + YT^3"),
        f_index=1,
        expanded="(X + T^2)^3 Y + (Y + T)^3 X^2",
        psi=PSI_T,
        extra={"u0": U0_T},
    ),
    "T^2+T+1": ModularData(
        level="T^2+T+1",
        phi=PHI_T2T1,
        j0="(u + 1)^3(u^2 + u + T^2 + T + 1)/u",
        j1="(u + T^2 + T + 1)^3(u^2 + u + T^2 + T + 1)/u^4",
        factors=("XY + T^2 + T + 1", F_T2T1),
        f_index=1,
        expanded=EXPANDED_T2T1,
        extra={"u0_mod_T": U0_T2T1_MOD_T, "reduced": REDUCED_T2T1},
    ),
    "T^2+T": ModularData(
        level="T^2+T",
        phi=PHI_T2T,
        j0="(u^3 + (T^2 + T)u + (T^2 + T))^3/(u(u + T)^2(u + T + 1)^2)",
        j1="(u^3 + (T^2 + T)u^2 + (T^2 + T)^2)^3/(u^4(u + T)^2(u + T + 1)^2)",
        factors=(
            "XY + T^2 + T",
            "Y^2 X^2 + T Y^2 X + (T^2 + T) Y X + (T^3 + T^2) Y + T^2 X^2 + T^4 + T^2",
            "Y^2X^2 + (T+1)Y^2X + (T^2+T)YX + (T^3+T)Y + (T^2+1)X^2 + T^4 + T^2",
            F_T2T,
        ),
        f_index=3,
        extra={"reduced": REDUCED_T2T},
    ),
}

LEVELS = tuple(DATA)

# (level, data key, given text, text used for verification)
CORRECTIONS = (
    ("T^2+T+1", "factor1", F_T2T1_AS_GIVEN, F_T2T1),
    ("T^2+T+1", "u0_mod_T", U0_T2T1_MOD_T_AS_GIVEN, U0_T2T1_MOD_T),
    ("T^2+T", "phi", PHI_T2T_AS_GIVEN, PHI_T2T),
)


def _digest(text: str) -> str:
    return hashlib.sha256("".join(text.split()).encode()).hexdigest()[:16]


def _strings(d: ModularData) -> dict[str, str]:
    out = {"phi": d.phi, "j0": d.j0, "j1": d.j1}
    out.update({f"factor{i}": f for i, f in enumerate(d.factors)})
    if d.expanded:
        out["expanded"] = d.expanded
    if d.psi:
        out["psi"] = d.psi
    out.update(d.extra)
    return out


SEALED = {'T': {'expanded': 'f01462fda98b766f',
       'factor0': '47fcaee6635ecef3',
       'factor1': '49dd49b545343fc6',
       'j0': '132539d2d2d8baad',
       'j1': '4abd395bd4dd8132',
       'phi': 'adbaf87681474b16',
       'psi': 'ae0e4845b885e5ce',
       'u0': 'ae9ed875dce2c452'},
 'T^2+T': {'factor0': '24aabc776063f186',
           'factor1': '448899bfff7a48d9',
           'factor2': 'bfa0addcf079b573',
           'factor3': 'b8990f4e15db18be',
           'j0': '21265fb3845f4621',
           'j1': 'fb138d757e5f3edd',
           'phi': 'e598396f705f9b75',
           'reduced': '9ddd307592e889c3'},
 'T^2+T+1': {'expanded': '28b666020b25db22',
             'factor0': '4d51e93e6b706c0c',
             'factor1': '0ea219c6e77b780f',
             'j0': '19b1d1e28e388692',
             'j1': '8c0966cc85b39ea3',
             'phi': '76f53ee82ca1328b',
             'reduced': '143e9870eb2ae5a4',
             'u0_mod_T': 'c18332b9b580f78d'}}


def data_checksums() -> dict[str, dict[str, str]]:
    return {lvl: {k: _digest(v) for k, v in _strings(d).items()} for lvl, d in DATA.items()}


# ---------------------------------------------------------------------------
# parsed objects


@lru_cache(maxsize=None)
def F2() -> FieldCtx:
    return make_prime_field(2)


@lru_cache(maxsize=None)
def parsed(level: str) -> dict:
    d = DATA[level]
    ctx = F2()
    out = {
        "P": parse_poly(level, ctx),
        "phi": parse_poly(d.phi, ctx),
        "j0": parse_ratfun(d.j0, ctx),
        "j1": parse_ratfun(d.j1, ctx),
        "factors": [parse_poly(f, ctx) for f in d.factors],
    }
    out["f"] = out["factors"][d.f_index]
    if d.psi:
        out["psi"] = parse_poly(d.psi, ctx)
    if d.expanded:
        out["expanded"] = parse_poly(d.expanded, ctx)
    return out


def is_prime_level(level: str) -> bool:
    P = parsed(level)["P"]
    return len(factor_univariate_over_Fq(P)) == 1 and factor_univariate_over_Fq(P)[0][1] == 1


def degree_formula(N: "MPoly | str", q: int = 2) -> int:
    """q^{deg N} * prod over prime A | N of (1 + q^{-deg A})."""
    if isinstance(N, str):
        from .fields import base_field

        N = parse_poly(N, base_field(q))
    if N.is_zero():
        raise ValueError("N must be nonzero")
    q = N.ctx.size
    val = Fraction(q ** N.degree("T"))
    for A, _ in factor_univariate_over_Fq(N):
        val *= 1 + Fraction(1, q ** A.degree("T"))
    if val.denominator != 1:  # pragma: no cover - the formula is integral
        raise ArithmeticError("non-integral degree")
    return int(val)


def clearing_polynomial(level: str) -> MPoly:
    """j0num(Y) j1den(X) - j0den(Y) j1num(X): the relation between consecutive uniformizers."""
    d = parsed(level)
    j0, j1 = d["j0"], d["j1"]
    j0Y = RatFun(j0.num.rename({"u": "Y"}), j0.den.rename({"u": "Y"}))
    j1X = RatFun(j1.num.rename({"u": "X"}), j1.den.rename({"u": "X"}))
    return j0Y.num * j1X.den - j0Y.den * j1X.num


# ---------------------------------------------------------------------------
# verifiers


def verify_checksums() -> Check:
    now = data_checksums()
    bad = [f"{lvl}.{k}" for lvl, table in SEALED.items() for k, v in table.items() if now.get(lvl, {}).get(k) != v]
    return Check("modular data checksums", not bad, "all strings match" if not bad else f"changed: {bad}")


def verify_roundtrip() -> Check:
    bad = []
    for lvl in DATA:
        d = parsed(lvl)
        polys = [d["phi"], d["f"], *d["factors"]] + ([d["psi"]] if "psi" in d else [])
        for f in polys:
            if parse_poly(format_poly(f), f.ctx) != f:
                bad.append(lvl)
    return Check("modular data round-trip", not bad, "", bad or None)


def verify_symmetry(level: str) -> Check:
    name = f"symmetry Phi_{level}"
    if not is_prime_level(level):
        return Check(name, True, "skipped: P composite")
    phi = parsed(level)["phi"]
    swapped = phi.rename({"X": "Y", "Y": "X"})
    diff = phi - swapped
    return Check(name, diff.is_zero(), "", None if diff.is_zero() else diff)


def verify_degree(level: str) -> Check:
    d = parsed(level)
    expect = degree_formula(d["P"])
    got = d["phi"].degree("Y")
    fdeg = d["f"].degree("Y")
    q = 2
    ok = got == expect and fdeg == q ** d["P"].degree("T")
    return Check(f"degree Phi_{level}", ok, f"deg_Y Phi = {got}, formula = {expect}, deg_Y f = {fdeg}")


def verify_parametrization(level: str) -> Check:
    d = parsed(level)
    r = substitute(d["phi"], {"X": d["j0"], "Y": d["j1"]})
    return Check(f"parametrization Phi_{level}", r.is_zero(), "", None if r.is_zero() else r.num)


def verify_factorization(level: str) -> Check:
    d = parsed(level)
    prod = MPoly.const(F2(), 1)
    for f in d["factors"]:
        prod = prod * f
    target = clearing_polynomial(level)
    notes = []
    ok = prod == target
    if "expanded" in d:
        ok = ok and d["expanded"] == target
        notes.append("matches given expansion" if d["expanded"] == target else "given expansion differs")
    qdeg = 2 ** d["P"].degree("T")
    full = [i for i, f in enumerate(d["factors"]) if f.degree("Y") == qdeg]
    ok = ok and full == [DATA[level].f_index]
    notes.append(f"Y-degrees {[f.degree('Y') for f in d['factors']]}")
    return Check(f"factorization {level}", ok, "; ".join(notes), None if prod == target else prod - target)


def verify_psi(level: str = "T", psi: MPoly | None = None) -> Check:
    """Phi(Y,Z) - (Z-X) Psi(X,Y,Z) reduces to 0 modulo Phi(X,Y) (monic in X)."""
    d = parsed(level)
    phi = d["phi"]
    psi = psi if psi is not None else d["psi"]
    phiYZ = phi.rename({"X": "Y", "Y": "Z"})
    Z, X = MPoly.var(F2(), "Z"), MPoly.var(F2(), "X")
    rem = pseudo_reduce(phiYZ - (Z - X) * psi, phi, "X")
    zdeg = psi.degree("Z")
    ok = rem.is_zero() and zdeg == 2 ** d["P"].degree("T")
    return Check(f"psi {level}", ok, f"deg_Z Psi = {zdeg}", None if rem.is_zero() else rem)


def verify_uniformizer_T() -> Check:
    """The given u_0(j_0, j_1) returns u under j_0 = j0(u), j_1 = j1(u)."""
    d = parsed("T")
    u0 = parse_ratfun(DATA["T"].extra["u0"], F2())
    r = substitute(u0, {"X": d["j0"], "Y": d["j1"]})
    return Check("uniformizer u_0 level T", r == MPoly.var(F2(), "u"), "")


def verify_uniformizer_T2T1_mod_T() -> Check:
    d = parsed("T^2+T+1")
    L = as_prime("T", F2())
    K = residue_field(L)
    j0 = reduce_mod_L(d["j0"], L, K)
    j1 = reduce_mod_L(d["j1"], L, K)
    u0 = parse_ratfun(DATA["T^2+T+1"].extra["u0_mod_T"], K)
    r = substitute(u0, {"X": j0, "Y": j1})
    return Check("uniformizer u_0 level T^2+T+1 mod T", r == MPoly.var(K, "u"), "")


REDUCTIONS = (("T^2+T+1", "T"), ("T^2+T+1", "T+1"), ("T^2+T", "T^2+T+1"), ("T", "T+1"))
REFERENCE_FORMS = {
    ("T^2+T+1", "T"): REDUCED_T2T1,
    ("T^2+T+1", "T+1"): REDUCED_T2T1,
    ("T^2+T", "T^2+T+1"): REDUCED_T2T,
    ("T", "T+1"): "X^2 + XY^2 + XY + Y",
}


def reduce_example(level: str, L: "str | MPoly") -> MPoly:
    Lp = as_prime(L, F2())
    return reduce_mod_L(parsed(level)["f"], Lp, residue_field(Lp))


def verify_reduction(level: str, L: str) -> Check:
    got = reduce_example(level, L)
    shown = format_poly(parse_poly(REFERENCE_FORMS[(level, L)], got.ctx))
    printed = format_poly(got)
    return Check(f"reduction f_{level} mod {L}", printed == shown, printed, None if printed == shown else shown)


def verify_degree_multiplicativity(level: str) -> Check:
    P = parsed(level)["P"]
    a, b = degree_formula(P), degree_formula(P * P)
    q = 2 ** P.degree("T")
    return Check(f"degree formula P^2/P for {level}", b == a * q, f"{b}/{a}")


def verify_general_q_T(q: int) -> Check:
    """j_0(u) = (u+T)^{q+1}/u and j_1(u) = (u+T^q)^{q+1}/u^q for any q.

    At q = 2 they must equal the level-T data. For every q the pair
    u_0 = v^{q-1}(v+T), u_1 = (v+T)^q/v^{q-1} satisfies j_1(u_0) = j_0(u_1).
    """
    from .fields import base_field

    Fq = base_field(q)
    u, T, v = RatFun(MPoly.var(Fq, "u")), RatFun(MPoly.var(Fq, "T")), RatFun(MPoly.var(Fq, "v0"))
    j0 = (u + T) ** (q + 1) / u
    j1 = (u + T**q) ** (q + 1) / u**q
    u0 = v ** (q - 1) * (v + T)
    u1 = (v + T) ** q / v ** (q - 1)
    ok = substitute(j1, {"u": u0}) == substitute(j0, {"u": u1})
    if q == 2:
        d = parsed("T")
        ok = ok and j0 == d["j0"] and j1 == d["j1"]
    return Check(f"general j-parametrization q={q}", ok, "")


def _variant_holds(level: str, key: str, text: str) -> bool:
    ctx = F2()
    d = parsed(level)
    if key == "factor1":
        return d["factors"][0] * parse_poly(text, ctx) == clearing_polynomial(level)
    if key == "u0_mod_T":
        L = as_prime("T", ctx)
        K = residue_field(L)
        j0, j1 = reduce_mod_L(d["j0"], L, K), reduce_mod_L(d["j1"], L, K)
        return substitute(parse_ratfun(text, K), {"X": j0, "Y": j1}) == MPoly.var(K, "u")
    if key == "phi":
        return substitute(parse_poly(text, ctx), {"X": d["j0"], "Y": d["j1"]}).is_zero()
    raise KeyError(key)


def verify_corrections() -> list[Check]:
    """Each given variant fails its identity and the corrected variant passes."""
    out = []
    for level, key, shown, fixed in CORRECTIONS:
        bad, good = _variant_holds(level, key, shown), _variant_holds(level, key, fixed)
        out.append(Check(f"correction {level}.{key}", (not bad) and good, f"given holds={bad}, corrected holds={good}"))
    return out


def run_all() -> list[Check]:
    from .checks import timed

    out = [timed("modular data checksums", verify_checksums), timed("modular data round-trip", verify_roundtrip)]
    for lvl in LEVELS:
        out.append(timed(f"symmetry Phi_{lvl}", lambda lvl=lvl: verify_symmetry(lvl)))
        out.append(timed(f"degree Phi_{lvl}", lambda lvl=lvl: verify_degree(lvl)))
        out.append(timed(f"parametrization Phi_{lvl}", lambda lvl=lvl: verify_parametrization(lvl)))
        out.append(timed(f"factorization {lvl}", lambda lvl=lvl: verify_factorization(lvl)))
    out.append(timed("psi T", lambda: verify_psi("T")))
    out.extend(verify_corrections())
    out.append(timed("uniformizer u_0 level T", verify_uniformizer_T))
    out.append(timed("uniformizer u_0 level T^2+T+1 mod T", verify_uniformizer_T2T1_mod_T))
    for lvl, L in REDUCTIONS:
        out.append(timed(f"reduction f_{lvl} mod {L}", lambda lvl=lvl, L=L: verify_reduction(lvl, L)))
    for lvl in ("T", "T^2+T+1"):
        out.append(timed(f"degree formula P^2/P for {lvl}", lambda lvl=lvl: verify_degree_multiplicativity(lvl)))
    out.append(timed("general j-parametrization q=2", lambda: verify_general_q_T(2)))
    return out


