import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from towerforge import towers as tw
from towerforge.fields import FieldError, base_field
from towerforge.polys import MPoly, RatFun
from strategies import F4


@pytest.fixture(scope="module")
def E1():
    return tw.make_tower("E", 2, L="T+1")


def test_step_roots_E_T_plus_1(E1):
    w = E1.K.gen
    step = tw.step_roots(E1, w)
    assert set(step.roots) == {w, w * w}
    assert step.complete


def test_step_roots_F_at_zero():
    F = tw.make_tower("F", 2, L="T-1")
    step = tw.step_roots(F, F.K.zero)
    assert [repr(r) for r in step.roots] == ["0", "1"]


def test_fiber_E_T_plus_1(E1):
    fib = tw.fiber_enumerate(E1, E1.K.gen, 3)
    assert len(fib.chains) == 8 and fib.complete
    assert fib.chains == sorted(fib.chains, key=lambda c: c.sort_key())


def test_fiber_from_non_splitting_point(E1):
    # 0 is not in S; its fiber is enumerated as computed
    fib = tw.fiber_enumerate(E1, E1.K.zero, 1)
    assert [c.elements[-1].v for c in fib.chains] == [0, 1]


@pytest.mark.parametrize(
    "kind,q,L,n,N",
    [("E", 2, "T+1", 6, 128), ("E", 2, "T^2+T+1", 4, 96), ("F", 3, "T-1", 3, 162)],
)
def test_certify_examples(kind, q, L, n, N):
    t = tw.make_tower(kind, q, L=L)
    cert = tw.certify_splitting(t, None, n)
    assert cert.N_lb == N and cert.ok and cert.closed


@pytest.mark.parametrize("kind", ["E", "F"])
@pytest.mark.parametrize("q,L,nmax", [(2, "T+1", 6), (2, "T^2+T+1", 6), (3, "T-1", 4)])
def test_count_matches_enumeration(kind, q, L, nmax):
    t = tw.make_tower(kind, q, L=L)
    S = tw.splitting_points(t)
    for n in (1, nmax):
        cert = tw.certify_splitting(t, S, n)
        for a in S:
            fib = tw.fiber_enumerate(t, a, n)
            assert len(fib.chains) == q**n == cert.counts[a.v]
            assert fib.complete


def test_splitting_points_match_deuring_scan():
    from towerforge.deuring import family

    for q, L in [(2, "T+1"), (2, "T^2+T+1"), (3, "T-1"), (3, "T^2+1")]:
        for kind in ("E", "F"):
            t = tw.make_tower(kind, q, L=L)
            assert tw.splitting_points(t) == family(q).splitting_set(L, kind).members


def test_genus_E_values():
    assert tw.genus_E(3, 2).value == 2
    assert tw.genus_E(5, 2).value == 40
    g = tw.genus_E(2, 2)
    assert g.value == -5 and "non-positive" in g.flags
    assert "non-integral" in tw.genus_E(0, 2).flags
    assert tw.genus_E(10, 2).value == 1900


def test_genus_F_values():
    assert tw.genus_F(3, 2) == 9
    assert tw.genus_F(4, 2) == 21
    assert tw.genus_F(1, 3) == 4
    assert tw.genus_F(9, 2) == 961
    with pytest.raises(ValueError):
        tw.genus_F(-1, 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_genus_bound_up_to_20(q):
    assert all(tw.genus_bound_holds(n, q) for n in range(21))


@given(st.integers(0, 20), st.sampled_from([2, 3, 4, 5, 7, 8, 9]))
def test_genus_F_parity_identity(n, q):
    # g(F_n) + 1 relates to [F_n : F_0] = q^n via the closed forms
    g = tw.genus_F(n, q)
    assert g >= 0
    assert Fraction(g - 1, q**n) <= q


def test_dv_report_F_level9():
    r = tw.dv_report(tw.make_tower("F", 2, L="T-1"), 9)
    assert r.genus == 961 and r.N_lb == 1024 and r.dv_bound == 1
    assert abs(r.ratio - 1024 / 961) < 1e-12
    assert r.prop22_ok is True


def test_dv_report_E_T2T1():
    r = tw.dv_report(tw.make_tower("E", 2, L="T^2+T+1"), 6)
    assert r.N_lb == 384 and r.dv_bound == 3 and r.prop22_ok is None


def test_gamma_one_matches_F_T_minus_1():
    g = tw.make_tower("gamma", 2, gamma="1")
    f = tw.make_tower("F", 2, L="T-1")
    assert g.relation == f.relation
    a, b = tw.dv_report(g, 3), tw.dv_report(f, 3)
    assert (a.N_lb, a.genus, a.split_size) == (b.N_lb, b.genus, b.split_size)


def test_report_json_and_csv_schema():
    r = tw.dv_report(tw.make_tower("E", 2, L="T+1"), 2)
    doc = r.to_json()
    assert list(doc) == list(tw.REPORT_COLUMNS)
    assert doc["ratio"] is None  # genus -5 at n = 2
    assert doc["genus"] == "-5"
    json.dumps(doc)
    assert len(r.csv_row()) == len(tw.REPORT_COLUMNS)


def test_make_tower_errors():
    with pytest.raises(FieldError):
        tw.make_tower("E", 2, L="T")
    with pytest.raises(FieldError):
        tw.make_tower("gamma", 2, gamma="0")
    with pytest.raises(ValueError):
        tw.make_tower("H", 2, L="T+1")
    with pytest.raises(ValueError):
        tw.make_tower("F", 2)
    with pytest.raises(FieldError):
        tw.make_tower("example_fP", 3, L="T")


def test_declared_degree_checked():
    X, Y = MPoly.var(F4, "X"), MPoly.var(F4, "Y")
    with pytest.raises(ValueError):
        tw.TowerSpec("custom", 2, F4, X * Y - 1, 2)


def test_degenerate_specialization_reported():
    X, Y = MPoly.var(F4, "X"), MPoly.var(F4, "Y")
    t = tw.TowerSpec("custom", 2, F4, X * (Y**2 + Y) + X**2, 2)
    with pytest.raises(tw.DegenerateStep):
        tw.step_roots(t, F4.zero)
    fib = tw.fiber_enumerate(t, F4.zero, 2)
    assert fib.chains == [] and not fib.complete
    cert = tw.certify_splitting(t, [F4.zero], 2)
    assert not cert.ok


def test_ramified_point_is_incomplete():
    # a^{q-1} + 1 = 0 kills the leading coefficient of the F step
    t = tw.make_tower("F", 3, L="T-1")
    a = next(x for x in map(t.K.elem, t.K.codes()) if x ** 2 + 1 == t.K.zero)
    assert not tw.step_roots(t, a).complete


def test_work_guard(monkeypatch):
    t = tw.make_tower("F", 2, L="T+1")
    with pytest.raises(tw.GuardError):
        tw.fiber_enumerate(t, t.K.one, 3, limit=10)
    monkeypatch.setenv("TOWERFORGE_MAX_WORK", "5")
    with pytest.raises(tw.GuardError):
        tw.certify_splitting(t, None, 2)
    monkeypatch.delenv("TOWERFORGE_MAX_WORK")
    assert tw.certify_splitting(t, None, 2).ok


def test_example_fP_tower():
    t = tw.make_tower("example_fP", 2, L="T", level="T^2+T+1")
    assert t.step_degree == 4 and t.genus_type is None
    with pytest.raises(ValueError):
        tw.dv_report(t, 1)
    fib = tw.fiber_enumerate(t, t.K.one, 2)
    for c in fib.chains:
        for a, b in zip(c.elements, c.elements[1:]):
            assert t.relation.evaluate({"X": a, "Y": b}, t.K).is_zero()


@pytest.mark.parametrize("q", [2, 3, 4])
def test_identity_suite(q):
    assert all(c.ok for c in tw.verify_identity_suite(q))


def test_identity_suite_bounds():
    with pytest.raises(ValueError):
        tw.verify_identity_suite(5)


def test_j1_form_sensitive_to_exponent():
    # a wrong exponent in the denominator must break the identity
    q = 2
    F = base_field(q)
    x, T = RatFun(MPoly.var(F, "x")), RatFun(MPoly.var(F, "T"))
    v0 = -T * (x ** (q - 1) + 1)
    u1 = (v0 + T) ** q / v0 ** (q - 1)
    j1 = (u1 + T) ** (q + 1) / u1
    assert j1 != -(T**q) * (x ** (q * q) - x) ** (q + 1) / (x**q + x) ** (q * q)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_specializations(q):
    assert all(c.ok for c in tw.verify_specializations(q))


def test_E_equals_F_at_q2_for_every_alpha():
    for L in ("T+1", "T^2+T+1", "T^3+T+1"):
        assert tw.make_tower("E", 2, L=L).relation == tw.make_tower("F", 2, L=L).relation


def _towers():
    return [tw.make_tower(k, q, L=L) for k in ("E", "F") for q, L in [(2, "T+1"), (2, "T^2+T+1"), (3, "T-1")]]


TOWERS = _towers()


@settings(max_examples=40)
@given(st.sampled_from(TOWERS), st.data())
def test_chains_stay_in_splitting_set(t, data):
    S = tw.splitting_points(t)
    a = data.draw(st.sampled_from(S))
    n = data.draw(st.integers(1, 4 if t.q == 2 else 3))
    fib = tw.fiber_enumerate(t, a, n)
    assert len(fib.chains) == t.q**n
    members = set(S)
    assert all(e in members for c in fib.chains for e in c.elements)


@settings(max_examples=40)
@given(st.sampled_from(TOWERS), st.data())
def test_chains_satisfy_relation(t, data):
    a = t.K.elem(data.draw(st.integers(0, t.K.size - 1)))
    fib = tw.fiber_enumerate(t, a, 2)
    for c in fib.chains:
        assert c.elements[0] == a
        for x, y in zip(c.elements, c.elements[1:]):
            assert t.relation.evaluate({"X": x, "Y": y}, t.K).is_zero()
    assert len({c.elements for c in fib.chains}) == len(fib.chains)
