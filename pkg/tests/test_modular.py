import dataclasses

import pytest

from towerforge import modular
from towerforge.grammar import format_poly, parse_poly
from towerforge.polys import MPoly, substitute

F2 = modular.F2()


@pytest.fixture(scope="module")
def checks():
    return {c.name: c for c in modular.run_all()}


def test_every_check_passes(checks):
    failed = [c.line() for c in checks.values() if not c.ok]
    assert not failed


@pytest.mark.parametrize("level", ["T", "T^2+T+1"])
def test_symmetry(level):
    phi = modular.parsed(level)["phi"]
    assert phi == phi.rename({"X": "Y", "Y": "X"})


def test_composite_level_symmetry_skipped():
    c = modular.verify_symmetry("T^2+T")
    assert c.ok and "skipped" in c.detail


@pytest.mark.parametrize("level,deg", [("T", 3), ("T^2+T+1", 5), ("T^2+T", 9)])
def test_degree_formula(level, deg):
    assert modular.degree_formula(level) == deg
    assert modular.parsed(level)["phi"].degree("Y") == deg


def test_degree_formula_other_q():
    assert modular.degree_formula("T", 3) == 4
    assert modular.degree_formula("T^2+T", 3) == 16


@pytest.mark.parametrize("level", modular.LEVELS)
def test_parametrization_vanishes(level):
    d = modular.parsed(level)
    assert substitute(d["phi"], {"X": d["j0"], "Y": d["j1"]}).is_zero()


@pytest.mark.parametrize("level", modular.LEVELS)
def test_factors_multiply_back(level):
    d = modular.parsed(level)
    prod = MPoly.const(F2, 1)
    for f in d["factors"]:
        prod = prod * f
    assert prod == modular.clearing_polynomial(level)


def test_expanded_matches_clearing_polynomial():
    for level in ("T", "T^2+T+1"):
        d = modular.parsed(level)
        assert d["expanded"] == modular.clearing_polynomial(level)


def test_psi_passes_and_perturbation_fails():
    assert modular.verify_psi("T").ok
    psi = modular.parsed("T")["psi"]
    bumped = psi + MPoly.var(F2, "X") * MPoly.var(F2, "Z")
    assert not modular.verify_psi("T", bumped).ok


def test_perturbed_phi_fails_parametrization():
    d = modular.parsed("T")
    bad = d["phi"] + MPoly.var(F2, "X")
    assert not substitute(bad, {"X": d["j0"], "Y": d["j1"]}).is_zero()


@pytest.mark.parametrize("level,L", modular.REDUCTIONS)
def test_reductions_byte_for_byte(level, L):
    got = format_poly(modular.reduce_example(level, L))
    assert got == format_poly(parse_poly(modular.REFERENCE_FORMS[(level, L)], F2))


def test_reduced_T2T1_printed():
    assert format_poly(modular.reduce_example("T^2+T+1", "T")) == (
        "X^3*Y^4 + X^3*Y^2 + X^2*Y^3 + X^4 + X^3*Y + X^2*Y + X*Y^2 + Y"
    )


def test_uniformizers():
    assert modular.verify_uniformizer_T().ok
    assert modular.verify_uniformizer_T2T1_mod_T().ok


@pytest.mark.parametrize("level,key,shown,fixed", modular.CORRECTIONS)
def test_given_variants_fail_and_corrections_hold(level, key, shown, fixed):
    assert not modular._variant_holds(level, key, shown)
    assert modular._variant_holds(level, key, fixed)


def test_corrections_agree_with_given_form_mod_T():
    # the factor correction is invisible after reducing modulo T or T+1
    from towerforge.polys import reduce_mod_L
    from towerforge.primes import as_prime, residue_field

    shown = parse_poly(modular.F_T2T1_AS_GIVEN, F2)
    fixed = parse_poly(modular.F_T2T1, F2)
    for L in ("T", "T+1"):
        Lp = as_prime(L, F2)
        K = residue_field(Lp)
        assert reduce_mod_L(shown, Lp, K) == reduce_mod_L(fixed, Lp, K)


def test_checksums_detect_tampering(monkeypatch):
    assert modular.verify_checksums().ok
    d = modular.DATA["T"]
    monkeypatch.setitem(modular.DATA, "T", dataclasses.replace(d, phi=d.phi + "+X"))
    c = modular.verify_checksums()
    assert not c.ok and "T.phi" in c.detail


def test_checksums_ignore_whitespace():
    assert modular._digest("X + Y") == modular._digest("X+\n  Y")


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_general_q_parametrization(q):
    assert modular.verify_general_q_T(q).ok


def test_degree_multiplicativity():
    assert modular.verify_degree_multiplicativity("T").ok
    assert modular.verify_degree_multiplicativity("T^2+T+1").ok
