import pytest
from hypothesis import given, strategies as st

from towerforge.deuring import family, m_d, prime_list
from towerforge.drinfeld import SkewPoly, module_for, supersingular_u_set
from towerforge.fields import FieldError, base_field
from towerforge.grammar import format_poly
from towerforge.polys import distinct_roots
from towerforge.primes import as_prime, residue_field2
from strategies import F2, F4, F16, elements, polys


def skew(K, Fq):
    return st.lists(elements(K), max_size=4).map(lambda cs: SkewPoly(K, Fq, cs))


def test_twisted_commutation():
    tau = SkewPoly(F16, F4, [0, 1])
    for a in (F16.gen, F16.gen + 1):
        assert tau * SkewPoly(F16, F4, [a]) == SkewPoly(F16, F4, [0, a ** 4])


def test_repr():
    assert repr(SkewPoly(F4, F2, [F4.gen, 0, 1])) == "tau^2 + g"
    assert repr(SkewPoly(F4, F2, [])) == "0"


@given(st.sampled_from([F2, F4]).flatmap(lambda Fq: st.tuples(skew(F16, Fq), skew(F16, Fq), skew(F16, Fq))))
def test_skew_ring_axioms(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@given(polys(F2, vars=("T",), max_terms=4, max_exp=4), polys(F2, vars=("T",), max_terms=4, max_exp=4))
def test_phi_is_ring_homomorphism(f, g):
    phi = module_for("T^2+T+1", 1, F2)
    assert phi.phi_image(f * g) == phi.phi_image(f) * phi.phi_image(g)
    assert phi.phi_image(f + g) == phi.phi_image(f) + phi.phi_image(g)


def test_phi_T_shape():
    phi = module_for("T+1", 1, F2)
    assert phi.phi_T().coeffs == (1, 0, 1)  # alpha = 1, u + alpha = 0
    assert phi.phi_L().coeffs == (0, 0, 1)
    assert phi.is_supersingular()


def test_u_zero_rejected():
    with pytest.raises(ValueError):
        module_for("T+1", 0, F2)


def test_j_invariant():
    phi = module_for("T^2+T+1", 1, F2)
    a = phi.alpha
    assert phi.j_invariant() == (1 + a) ** 3


def test_supersingular_examples():
    rep = supersingular_u_set(as_prime("T+1", F2))
    assert [repr(u) for u in rep.u_values] == ["1"]
    assert rep.ok and rep.m_d == 1
    rep = supersingular_u_set(as_prime("T^2+T+1", F2))
    assert len(rep.u_values) == 3 and rep.agree
    with pytest.raises(FieldError):
        supersingular_u_set(as_prime("T", F2))


@pytest.mark.parametrize(
    "q,L",
    [(2, format_poly(L)) for L in prime_list(base_field(2), 3)] + [(3, format_poly(L)) for L in prime_list(base_field(3), 2)],
)
def test_oracle_matches_deuring_roots(q, L):
    rep = supersingular_u_set(as_prime(L, base_field(q)))
    assert rep.agree
    assert len(rep.u_values) == m_d(q, rep.L.degree())


def test_supersingular_values_outside_base_residue_field():
    # the three u for T^2+T+1 live in F_16, only one of them in F_4
    rep = supersingular_u_set(as_prime("T^2+T+1", F2))
    K = rep.u_values[0].ctx
    in_F4 = [u for u in rep.u_values if u ** 4 == u]
    assert K.size == 16 and len(in_F4) == 1
