"""Shared hypothesis strategies for field elements and sparse polynomials."""

from hypothesis import strategies as st

from towerforge.fields import base_field, extend_field, find_irreducible, make_prime_field
from towerforge.polys import MPoly

F2 = make_prime_field(2)
F3 = make_prime_field(3)
F4 = base_field(4)
F9 = base_field(9)
F16 = extend_field(F4, find_irreducible(F4, 2))
F27 = base_field(27)
FIELDS = [F2, F3, F4, F9, F16, F27]


def elements(ctx):
    return st.integers(0, ctx.size - 1).map(ctx.elem)


def nonzero(ctx):
    return st.integers(1, ctx.size - 1).map(ctx.elem)


def polys(ctx, vars=("T", "s"), max_terms=6, max_exp=4):
    term = st.tuples(st.tuples(*[st.integers(0, max_exp) for _ in vars]), st.integers(1, ctx.size - 1))
    return st.lists(term, max_size=max_terms).map(lambda ts: MPoly(ctx, vars, dict(ts)))


def nonzero_polys(ctx, vars=("T", "s"), max_terms=5, max_exp=3):
    return polys(ctx, vars, max_terms, max_exp).filter(lambda f: not f.is_zero())
