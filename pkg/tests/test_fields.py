import pytest
from hypothesis import given, strategies as st

from towerforge.fields import (
    FieldError,
    base_field,
    enumerate_field,
    extend_field,
    find_irreducible,
    frobenius,
    is_irreducible,
    make_prime_field,
    prime_power,
    quadratic_extension,
)
from strategies import F2, F3, F4, F9, F16, F27, FIELDS, elements, nonzero


def test_prime_field_basics():
    F5 = make_prime_field(5)
    a, b = F5(3), F5(4)
    assert a + b == F5(2)
    assert a * b == F5(2)
    assert a.inverse() == F5(2)
    assert (a / b) * b == a


def test_make_prime_field_rejects_composite():
    with pytest.raises(FieldError):
        make_prime_field(6)


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    with pytest.raises(FieldError):
        prime_power(12)
    with pytest.raises(FieldError):
        prime_power(1)


def test_lex_smallest_irreducibles():
    # coefficient vectors compared with c_0 first
    assert find_irreducible(F2, 2) == (1, 1, 1)
    assert find_irreducible(F3, 2) == (1, 0, 1)
    assert find_irreducible(F2, 4) == (1, 0, 0, 1, 1)
    assert F9.modulus == (1, 0, 1)


def test_f4_tables():
    g = F4.gen
    assert g * g == g + 1
    assert g ** 3 == F4.one
    assert repr(g * g) == "g+1"
    assert sorted(F4.codes(), key=F4.sort_key) == F4.codes()
    assert [repr(x) for x in enumerate_field(F4)] == ["0", "g", "1", "g+1"]


def test_f9_inverse_table():
    for x in enumerate_field(F9):
        if x:
            assert x * x.inverse() == F9.one
    with pytest.raises(ZeroDivisionError):
        F9.zero.inverse()


def test_is_irreducible():
    assert is_irreducible(F2, [1, 1, 1])
    assert not is_irreducible(F2, [1, 0, 1])
    assert is_irreducible(F4, [F4.gen_code, 1, 1])


def test_extend_field_carries_alpha():
    K = extend_field(F2, [1, 1, 1])
    a = K.alpha_elem
    assert a * a + a + 1 == K.zero
    K2 = quadratic_extension(K)
    assert K2.size == 16
    assert K2.alpha_elem == K2(a)


def test_extension_of_nonprime_base_embeds():
    assert F16.size == 16 and F16.contains(F4)
    for x in enumerate_field(F4):
        for y in enumerate_field(F4):
            assert F16(x * y) == F16(x) * F16(y)
            assert F16(x + y) == F16(x) + F16(y)


def test_field_equality_ignores_alpha():
    K = extend_field(F2, [1, 1, 1])
    assert K == F4 or K.modulus != F4.modulus


def test_extend_field_errors():
    with pytest.raises(FieldError):
        extend_field(F2, [1, 0, 1])
    with pytest.raises(FieldError):
        extend_field(F3, [1, 0, 2])


def test_mixed_field_arithmetic_rejected():
    with pytest.raises(FieldError):
        F3(1) + F2(1)


def test_frobenius_fixes_subfield():
    for x in enumerate_field(F16):
        fx = frobenius(x, F4)
        assert (fx == x) == (x ** 4 == x)
    with pytest.raises(FieldError):
        frobenius(F9.gen, F4)


@pytest.mark.parametrize("ctx", FIELDS, ids=lambda c: c.name)
def test_multiplicative_group_cyclic(ctx):
    n = ctx.size - 1
    units = [x for x in enumerate_field(ctx) if x]
    assert all(x ** n == ctx.one for x in units)
    generators = [x for x in units if len({(x ** i).v for i in range(n)}) == n]
    assert generators


@pytest.mark.parametrize("ctx", FIELDS, ids=lambda c: c.name)
def test_format_parse_roundtrip(ctx):
    from towerforge.grammar import parse_element

    for x in enumerate_field(ctx):
        assert parse_element(repr(x), ctx) == x


@given(st.sampled_from(FIELDS).flatmap(lambda K: st.tuples(elements(K), elements(K), elements(K))))
def test_field_axioms(t):
    a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == a.ctx.zero
    assert a + (-a) == a.ctx.zero


@given(st.sampled_from(FIELDS).flatmap(lambda K: st.tuples(nonzero(K), st.integers(-20, 20), st.integers(-20, 20))))
def test_power_laws(t):
    a, m, n = t
    assert a ** (m + n) == a ** m * a ** n
    assert a * a.inverse() == a.ctx.one


@given(st.sampled_from(FIELDS).flatmap(lambda K: st.tuples(elements(K), elements(K))))
def test_frobenius_is_additive(t):
    a, b = t
    p = a.ctx.p
    assert (a + b) ** p == a ** p + b ** p


def test_base_field_cache_equal():
    assert base_field(4) == base_field(4)
    assert base_field(27).size == 27
