import itertools

import pytest

from dragonfly.algebra import STAR, ResiduatedSystem, iter_dvectors
from dragonfly.capacity import Capacity, Universe, conjugate, enumerate_capacities, make_capacity
from dragonfly.characterization import (
    ResultClass, check_integral_monotonicity, classify, completions, predict, predict_res_known,
    predict_res_star, predict_res_zero, predict_tnorm_known, predict_tnorm_star,
    predict_tnorm_star_known_input, predict_tnorm_zero, verdict, verify_lower_estimation, verify_trichotomy,
)
from dragonfly.errors import DomainError, GuardExceeded
from dragonfly.integrals import IntegralKind, integral_residuum_D, integral_tnorm_D

G2 = ResiduatedSystem.godel(2)
G3 = ResiduatedSystem.godel(3)
G5 = ResiduatedSystem.godel(5)
L5 = ResiduatedSystem.lukasiewicz(5)
ABCD = Universe.named("ABCD")

TNORM, RES = IntegralKind.TNORM_D, IntegralKind.RESIDUUM_D


def complete_rows_lower():
    return make_capacity(ABCD, G5, {"AB": 1, "CD": 2, "ABC": 3, "ABD": 1, "ACD": 2, "BCD": 2}, default=0)


def star_capacity(n):
    u = Universe(n)
    return Capacity.from_function(u, lambda m: 0 if m == 0 else (G5.top if m == u.full else STAR))


def star_at_three():
    u = Universe(3)
    return Capacity.from_function(u, lambda m: 4 if m == u.full else (STAR if m & 4 else 0))


def pair_dictator():
    return Capacity.from_function(Universe(3), lambda m: 4 if m & 3 == 3 else 0)


def test_classify():
    assert classify(0) is ResultClass.ZERO
    assert classify(STAR) is ResultClass.STAR
    assert classify(3) is ResultClass.KNOWN_POSITIVE


def test_tnorm_zero_examples():
    mu = complete_rows_lower()
    assert predict_tnorm_zero(G5, mu, (0, 0, 0, 0))
    # the unknown B entry keeps the {A,B} term at *, so the result is * rather than bottom
    f = (1, STAR, 2, 0)
    assert integral_tnorm_D(G5, mu, f) is STAR
    assert not predict_tnorm_zero(G5, mu, f) and predict_tnorm_star(G5, mu, f)
    assert integral_tnorm_D(G5, mu, (2, STAR, 3, 2)) == 2


def test_tnorm_known_examples():
    mu = complete_rows_lower()
    for f in itertools.product(G5.positive_values(), repeat=4):
        assert predict_tnorm_known(G5, mu, f)
        assert integral_tnorm_D(G5, mu, f) in G5.positive_values()
    for alpha in G5.positive_values():
        f = (STAR, STAR, alpha)
        assert not predict_tnorm_known(G5, star_at_three(), f)
        assert integral_tnorm_D(G5, star_at_three(), f) is STAR


def test_tnorm_star_examples():
    mu = star_capacity(3)
    f = (0, 2, 3)
    assert predict_tnorm_star(G5, mu, f) and predict_tnorm_star_known_input(G5, mu, f)
    assert integral_tnorm_D(G5, mu, f) is STAR
    assert not predict_tnorm_star(G5, mu, (0, 0, 0))


def test_star_known_input_form_matches_general_form():
    for n in (1, 2, 3):
        u = Universe(n)
        for mu in enumerate_capacities(u, G3):
            for f in itertools.product(G3.values(), repeat=n):
                assert predict_tnorm_star_known_input(G3, mu, f) == predict_tnorm_star(G3, mu, f)
    with pytest.raises(DomainError):
        predict_tnorm_star_known_input(G3, star_capacity(2), (STAR, 1))


def test_res_zero_examples():
    assert not predict_res_zero(G5, complete_rows_lower(), (4, 4, 4, 4))
    mu = make_capacity(Universe(2), G5, {(0,): STAR, (1,): STAR})
    assert predict_res_zero(G5, mu, (0, 0)) and integral_residuum_D(G5, mu, (0, 0)) == 0


@pytest.mark.parametrize("alpha", G5.positive_values())
def test_res_examples_on_three_criteria(alpha):
    f = (STAR, STAR, alpha)
    assert not predict_res_known(G5, pair_dictator(), f)
    assert predict_res_star(G5, pair_dictator(), f)
    assert integral_residuum_D(G5, pair_dictator(), f) is STAR
    assert predict_res_known(G5, star_at_three(), f)
    assert integral_residuum_D(G5, star_at_three(), f) == alpha


def test_res_star_absolutely_unknown():
    mu = star_capacity(3)
    for f in itertools.product(G5.positive_values(), repeat=3):
        assert not predict_res_star(G5, mu, f)
        assert integral_residuum_D(G5, mu, f) == min(f)


def test_res_star_condition_guards():
    # unguarded c would fire here: the conjugate is top on the star set, but an input is zero
    u = Universe(2)
    mu = Capacity(u, (0, 0, 0, 2))
    f = (0, STAR)
    assert conjugate(G3, mu)[u.mask_of([1])] == G3.top
    assert integral_residuum_D(G3, mu, f) == 0
    assert not predict_res_star(G3, mu, f) and predict_res_zero(G3, mu, f)
    # with no zero inputs, b without its guard would coincide with c
    for mu in enumerate_capacities(u, G3):
        conj = conjugate(G3, mu)
        for f in iter_dvectors(G3, 2):
            if any(v is STAR for v in f) and 0 not in f:
                low = u.mask_of([i for i, v in enumerate(f) if v is STAR])
                assert predict_res_star(G3, mu, f) == (conj[low] == G3.top)


def test_predicates_refuse_zero_divisors():
    mu = make_capacity(Universe(2), L5, {}, default=0)
    for pred in (predict_tnorm_zero, predict_tnorm_known, predict_tnorm_star,
                 predict_res_zero, predict_res_known, predict_res_star):
        with pytest.raises(DomainError):
            pred(L5, mu, (1, 2))


def test_verdict_reports():
    v = verdict(G5, complete_rows_lower(), (1, STAR, 2, 0), TNORM)
    assert v.agrees and v.theorem_id == "tnorm-star" and v.predicted is ResultClass.STAR
    v = verdict(G5, complete_rows_lower(), (1, 0, 2, 0), TNORM)
    assert v.agrees and v.theorem_id == "tnorm-zero" and v.predicted is ResultClass.ZERO
    v = verdict(G5, star_at_three(), (STAR, STAR, 2), RES)
    assert v.agrees and v.theorem_id == "residuum-known" and v.computed == 2


@pytest.mark.parametrize("size", [2, 3, 4, 5])
@pytest.mark.parametrize("kind", [TNORM, RES], ids=lambda k: k.value)
def test_trichotomy_exhaustive(size, kind):
    sys = ResiduatedSystem.godel(size)
    for n in (1, 2):
        report = verify_trichotomy(sys, Universe(n), kind)
        assert report.passed, report.line()
        assert report.checked == sum(1 for _ in enumerate_capacities(Universe(n), sys)) * (size + 1) ** n


@pytest.mark.parametrize("kind", [TNORM, RES], ids=lambda k: k.value)
def test_trichotomy_three_criteria(kind):
    report = verify_trichotomy(G3, Universe(3), kind)
    assert report.passed, report.line()
    assert all(report.data["tally"].values())


def test_completions():
    assert list(completions(G3, (1, 2))) == [(1, 2)]
    assert list(completions(G3, (STAR, 1))) == [(1, 1), (2, 1)]
    assert list(completions(G2, (STAR, STAR))) == [(1, 1)]
    with pytest.raises(GuardExceeded):
        list(completions(G5, (STAR,) * 10))


def test_lower_estimation():
    mu = make_capacity(Universe(2), G5, {(0,): STAR, (1,): STAR})
    report = verify_lower_estimation(G5, mu, (STAR, 4), RES)
    assert report.failed and "integral(f)=4" in report.witness
    for sys in (G3, ResiduatedSystem.godel(4)):
        for mu in enumerate_capacities(Universe(2), sys):
            for f in iter_dvectors(sys, 2):
                assert verify_lower_estimation(sys, mu, f, TNORM).passed
                if mu.is_known():
                    assert verify_lower_estimation(sys, mu, f, RES).passed


def test_monotonicity_suites():
    for sys in (G2, G3, ResiduatedSystem.godel(4)):
        u = Universe(2)
        assert check_integral_monotonicity(sys, u, TNORM).passed
        known = enumerate_capacities(u, sys, allow_star=False)
        assert check_integral_monotonicity(sys, u, RES, known).passed
    assert check_integral_monotonicity(G2, Universe(2), RES).passed
    assert check_integral_monotonicity(G2, Universe(3), RES).passed
    report = check_integral_monotonicity(G3, Universe(2), RES)
    assert report.failed and report.data["mu"].values == (0, 0, STAR, 2)
