import pytest
from hypothesis import given, settings, strategies as st

from towerforge.deuring import family, m_d, prime_list
from towerforge.fields import FieldError, base_field
from towerforge.grammar import format_poly, parse_poly
from towerforge.polys import MPoly, RatFun
from towerforge.primes import as_prime


def R(num, den, q):
    F = base_field(q)
    return RatFun(parse_poly(num, F), parse_poly(den, F))


def test_m_d():
    assert [m_d(2, d) for d in (1, 2, 3)] == [1, 3, 7]
    assert m_d(3, 2) == 4
    assert m_d(4, 2) == 5


def test_first_terms_by_hand():
    # p_1 = s - 1; p_2 = (s^q - 1)(s - 1) + (1 - T^{1-q}) s^q
    fam2, fam3 = family(2), family(3)
    assert fam2.p_exact(1) == R("s + 1", "1", 2)
    assert fam2.p_exact(2) == R("T s^3 + s^2 + T s + T", "T", 2)
    assert fam3.p_exact(2) == R("T^2 s^4 - s^3 - T^2 s + T^2", "T^2", 3)


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("i", range(6))
def test_depth_one_recursion_agrees(q, i):
    fam = family(q)
    assert fam.p_exact(i) == fam.p_exact_depth1(i)


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("i", range(6))
def test_value_at_zero_and_degree(q, i):
    fam = family(q)
    assert fam.value_at_zero(i) == RatFun(MPoly.const(fam.Fq, (-1) ** i))
    assert fam.degree(i) == m_d(q, i)


@pytest.mark.parametrize("q,i", [(q, i) for q in (2, 3) for i in range(4)])
def test_theorem15_exact(q, i):
    assert family(q).verify_theorem15(i).ok


@pytest.mark.parametrize("q,i", [(2, 1), (2, 2), (3, 1)])
def test_reciprocal_identity(q, i):
    assert family(q).verify_reciprocal(i).ok


@settings(max_examples=10)
@given(st.sampled_from([2, 3, 4]), st.integers(1, 4), st.integers(0, 2**31))
def test_theorem15_random_seeds(q, i, seed):
    assert family(q).verify_theorem15_random(i, points=5, seed=seed).ok


def test_reductions_printed():
    assert format_poly(family(2).p_mod("T+1", 2)) == "s^3 + s^2 + s + 1"
    assert format_poly(family(2).p_mod("T^2+T+1")) == "s^3 + (g+1)*s^2 + s + 1"


def test_p_mod_rejects_T():
    with pytest.raises(FieldError):
        family(2).p_mod("T")
    with pytest.raises(FieldError):
        family(2).p_mod("T^2+1")


@pytest.mark.parametrize(
    "q,L",
    [(2, format_poly(L)) for L in prime_list(base_field(2), 3)] + [(3, format_poly(L)) for L in prime_list(base_field(3), 2)],
)
def test_prop13(q, L):
    rep = family(q).check_prop13(L)
    assert rep.ok
    assert len(rep.roots) == m_d(q, rep.d)
    assert rep.q1_powers


def test_prime_list_excludes_T():
    ps = [format_poly(L) for L in prime_list(base_field(2), 2)]
    assert ps == ["T + 1", "T^2 + T + 1"]


def test_splitting_set_examples():
    fam = family(2)
    S = fam.splitting_set("T+1", "E")
    assert [repr(a) for a in S.members] == ["g", "g+1"]
    assert len(fam.splitting_set("T^2+T+1", "E")) == 6
    assert len(family(3).splitting_set("T-1", "F")) == 6
    with pytest.raises(ValueError):
        fam.splitting_set("T+1", "Z")


@pytest.mark.parametrize("q,L", [(2, "T+1"), (2, "T^2+T+1"), (2, "T^3+T+1"), (3, "T-1"), (3, "T^2+1"), (4, "T+1")])
def test_splitting_set_sizes(q, L):
    fam = family(q)
    for tag in ("E", "F"):
        S = fam.splitting_set(L, tag)
        assert len(S) == S.predicted


def test_literal_F_reading_fails_for_q3():
    S = family(3).splitting_set("T^2+1", "F_literal")
    assert len(S) == 0 and S.predicted > 0


def test_guard():
    with pytest.raises(ValueError):
        family(2).p_exact(40)
