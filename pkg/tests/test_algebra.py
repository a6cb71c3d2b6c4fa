import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dragonfly.algebra import (
    STAR, ChainScale, Comparison, Kind, ResiduatedSystem, check_adjointness, check_adjointness_failure,
    check_embedding, check_monoid, check_operation_tables, check_residuum_monotone, check_tnorm_monotone,
    format_scale_spec, kd_implication, le_linear, lt_linear, operation_tables, parse_scale_spec, table_entry,
)
from dragonfly.errors import DomainError, ParseError, UnsupportedOperation

G5 = ResiduatedSystem.godel(5)
L5 = ResiduatedSystem.lukasiewicz(5)
PROD = ResiduatedSystem.product()

FINITE = [ResiduatedSystem.godel(n) for n in range(2, 9)] + [ResiduatedSystem.lukasiewicz(n) for n in range(2, 9)]


def ids(systems):
    return [s.describe() for s in systems]


# lattice operations


def test_tnorm_examples():
    assert G5.tnorm(2, 3) == 2
    assert L5.tnorm(2, 3) == 1
    for sys in (G5, L5):
        for a in sys.values():
            assert sys.tnorm(a, sys.bottom) == sys.bottom
    assert PROD.tnorm(Fraction(1, 2), Fraction(2, 3)) == Fraction(1, 3)


def test_residuum_examples():
    assert G5.residuum(3, 2) == 2
    assert G5.residuum(2, 3) == G5.top
    assert L5.residuum(3, 1) == 2
    assert PROD.residuum(Fraction(1, 2), Fraction(1, 4)) == Fraction(1, 2)


def test_negation_examples():
    assert G5.negation(0) == 4
    assert G5.negation(2) == 0
    assert L5.negation(1) == 3


def test_kd_implication():
    scale = ChainScale(5)
    assert kd_implication(scale, 4, 2) == 2
    assert kd_implication(scale, 0, 2) == 4
    assert kd_implication(scale, 3, 3) == 3
    with pytest.raises(DomainError):
        kd_implication(scale, 5, 0)


def test_zero_divisors():
    assert not any(ResiduatedSystem.godel(n).has_zero_divisors for n in range(2, 9))
    assert L5.has_zero_divisors
    assert not ResiduatedSystem.lukasiewicz(2).has_zero_divisors
    assert not PROD.has_zero_divisors


def test_scale_mismatch_is_domain_error():
    with pytest.raises(DomainError):
        G5.tnorm(5, 1)
    with pytest.raises(DomainError):
        G5.d_tnorm(-1, STAR)
    with pytest.raises(DomainError):
        PROD.tnorm(Fraction(3, 2), 0)
    with pytest.raises(DomainError):
        G5.tnorm(True, 1)


def test_product_refuses_enumeration():
    with pytest.raises(UnsupportedOperation):
        PROD.values()


@pytest.mark.parametrize("sys", FINITE, ids=ids(FINITE))
def test_lattice_invariants(sys):
    assert check_adjointness(sys).passed
    for a, b in itertools.product(sys.values(), repeat=2):
        assert (sys.residuum(a, b) == sys.top) == (a <= b)
    if not sys.has_zero_divisors:
        for a in sys.values():
            assert sys.negation(a) == (sys.top if a == 0 else sys.bottom)


# Dragonfly operations


def test_d_tnorm_examples():
    assert G5.d_tnorm(STAR, 0) == 0
    assert G5.d_tnorm(STAR, 4) is STAR
    assert G5.d_tnorm(2, 3) == G5.tnorm(2, 3)
    assert L5.d_tnorm(0, STAR) == 0


def test_d_meet_join_examples():
    for a in G5.interior_values():
        assert G5.d_meet(a, STAR) is STAR
        assert G5.d_join(a, STAR) == a
    assert G5.d_join(0, STAR) is STAR
    assert G5.d_join(STAR, 4) == 4


def test_d_residuum_examples():
    assert G5.d_residuum(STAR, STAR) == 4
    assert G5.d_residuum(4, STAR) is STAR
    for b in G5.interior_values():
        assert G5.d_residuum(STAR, b) == b
        assert G5.d_residuum(b, STAR) is STAR
    # the asymmetry between these two cells is intended
    assert G5.d_residuum(STAR, 0) is STAR
    assert G5.d_residuum(0, STAR) == 4


def test_d_negation_examples():
    assert G5.d_negation(STAR) is STAR
    assert G5.d_negation(0) == 4
    assert G5.d_negation(2) == 0
    for sys in FINITE:
        if not sys.has_zero_divisors:
            assert {sys.d_negation(v) for v in sys.dvalues()} <= {sys.bottom, STAR, sys.top}


def test_le_partial_examples():
    assert G5.le_partial(STAR, 2) is Comparison.INCOMPARABLE
    assert G5.le_partial(0, STAR) is Comparison.TRUE
    assert G5.le_partial(1, 1) is Comparison.TRUE
    assert G5.le_partial(STAR, 4) is Comparison.TRUE
    assert G5.le_partial(4, STAR) is Comparison.FALSE
    assert G5.le_partial(3, 2) is Comparison.FALSE


def test_le_linear_examples():
    assert le_linear(STAR, 1)
    assert le_linear(0, STAR)
    assert not le_linear(3, STAR)
    assert lt_linear(STAR, 1) and not lt_linear(STAR, STAR)


@pytest.mark.parametrize("sys", FINITE, ids=ids(FINITE))
def test_orders(sys):
    vals = sys.dvalues()
    assert list(vals) == sorted(vals, key=lambda v: (v is not STAR and v > 0, v is not STAR and v))
    for a, b, c in itertools.product(vals, repeat=3):
        if le_linear(a, b) and le_linear(b, c):
            assert le_linear(a, c)
    for a, b in itertools.product(vals, repeat=2):
        assert le_linear(a, b) or le_linear(b, a)
        assert le_linear(a, b) == (sys.d_meet(a, b) == a)
        if sys.le_partial(a, b) is Comparison.TRUE:
            assert le_linear(a, b)
        if a is not STAR and b is not STAR:
            assert bool(sys.le_partial(a, b)) == (a <= b) == le_linear(a, b)


# operation tables against the literal cell transcription


@pytest.mark.parametrize("sys", FINITE, ids=ids(FINITE))
def test_operation_tables_match_transcription(sys):
    report = check_operation_tables(sys)
    assert report.passed, report.line()
    assert report.checked == 4 * len(sys.dvalues()) ** 2


def test_operation_table_cells_godel5():
    tables = operation_tables(G5)
    tnorm = [[tables["tnorm"][(a, b)] for b in G5.dvalues()] for a in G5.dvalues()]
    S = STAR
    assert tnorm == [
        [0, 0, 0, 0, 0, 0],
        [0, S, S, S, S, S],
        [0, S, 1, 1, 1, 1],
        [0, S, 1, 2, 2, 2],
        [0, S, 1, 2, 3, 3],
        [0, S, 1, 2, 3, 4],
    ]
    res = [[tables["residuum"][(a, b)] for b in G5.dvalues()] for a in G5.dvalues()]
    assert res == [
        [4, 4, 4, 4, 4, 4],
        [S, 4, 1, 2, 3, 4],
        [0, S, 4, 4, 4, 4],
        [0, S, 1, 4, 4, 4],
        [0, S, 1, 2, 4, 4],
        [0, S, 1, 2, 3, 4],
    ]
    for (a, b), v in tables["residuum"].items():
        assert v == table_entry(G5, "residuum", a, b)


# structural checks


@pytest.mark.parametrize("size", range(2, 9))
def test_monoid_godel(size):
    assert check_monoid(ResiduatedSystem.godel(size)).passed


@pytest.mark.parametrize("size", range(3, 9))
def test_monoid_lukasiewicz_counterexample(size):
    sys = ResiduatedSystem.lukasiewicz(size)
    report = check_monoid(sys)
    assert report.failed
    a, b, c = report.data["triple"]
    assert c is STAR and a in sys.positive_values() and b in sys.positive_values()
    assert report.data["left"] == 0 and report.data["right"] is STAR
    assert sys.d_tnorm(sys.d_tnorm(a, b), c) != sys.d_tnorm(a, sys.d_tnorm(b, c))


def test_monoid_boolean():
    assert check_monoid(ResiduatedSystem.lukasiewicz(2)).passed
    assert check_monoid(ResiduatedSystem.godel(2)).passed


@pytest.mark.parametrize("sys", FINITE, ids=ids(FINITE))
def test_adjointness_failure(sys):
    report = check_adjointness_failure(sys)
    if sys.interior_values():
        assert report.passed
        assert le_linear(STAR, sys.d_residuum(STAR, 0)) and not le_linear(sys.d_tnorm(STAR, STAR), 0)
    else:
        assert report.status == "n/a"


@pytest.mark.parametrize("sys", FINITE, ids=ids(FINITE))
def test_monotonicity_laws(sys):
    assert check_embedding(sys).passed
    expected = not sys.has_zero_divisors
    assert check_tnorm_monotone(sys).passed == expected
    assert check_residuum_monotone(sys, known_first=True).passed == expected
    free = check_residuum_monotone(sys)
    assert free.passed == (not sys.interior_values())


def test_residuum_nonmonotone_witness():
    report = check_residuum_monotone(G5)
    assert report.failed and report.witness.startswith("(*,*,")


# scale specs


@pytest.mark.parametrize("text,kind,size", [
    ("scale godel 5", Kind.GODEL, 5),
    ("scale gödel 3", Kind.GODEL, 3),
    ("scale lukasiewicz 5", Kind.LUKASIEWICZ, 5),
    ("scale łukasiewicz 4", Kind.LUKASIEWICZ, 4),
])
def test_parse_scale_spec(text, kind, size):
    sys = parse_scale_spec(text)
    assert sys.kind is kind and sys.scale.size == size
    assert parse_scale_spec(format_scale_spec(sys)) == sys


def test_scale_labels_roundtrip():
    sys = parse_scale_spec("scale godel 5 1,2,3,4,5")
    assert sys.parse_value("1") == 0 and sys.format_value(4) == "5"
    assert parse_scale_spec(format_scale_spec(sys)) == sys
    assert parse_scale_spec("scale product").kind is Kind.PRODUCT


@pytest.mark.parametrize("bad", ["scale", "scale fuzzy 5", "scale godel 1", "scale godel 3 a,b", "godel 5",
                                 "scale godel 3 3,2,1", "scale godel 3 a,a,b"])
def test_parse_scale_spec_rejects(bad):
    with pytest.raises(ParseError):
        parse_scale_spec(bad)


def test_value_text():
    assert G5.parse_value("*") is STAR and G5.format_value(STAR) == "*"
    with pytest.raises(DomainError):
        G5.parse_value("7")
    assert PROD.parse_value("1/3") == Fraction(1, 3)


# property tests


systems = st.sampled_from(FINITE)


@st.composite
def sys_and_values(draw, count=3):
    sys = draw(systems)
    vals = [draw(st.sampled_from(sys.dvalues())) for _ in range(count)]
    return sys, vals


@given(sys_and_values())
def test_d_tnorm_commutative_with_unit(args):
    sys, (a, b, _) = args
    assert sys.d_tnorm(a, b) == sys.d_tnorm(b, a)
    assert sys.d_tnorm(a, sys.top) == a


@given(sys_and_values())
def test_d_tnorm_associative_without_zero_divisors(args):
    sys, (a, b, c) = args
    if not sys.has_zero_divisors:
        assert sys.d_tnorm(sys.d_tnorm(a, b), c) == sys.d_tnorm(a, sys.d_tnorm(b, c))


@given(sys_and_values())
def test_d_meet_join_lattice(args):
    sys, (a, b, c) = args
    assert sys.d_meet(a, sys.d_join(a, b)) == a
    assert sys.d_join(a, sys.d_meet(a, b)) == a
    assert sys.d_meet(sys.d_meet(a, b), c) == sys.d_meet(a, sys.d_meet(b, c))


@given(st.fractions(0, 1), st.fractions(0, 1), st.fractions(0, 1))
def test_product_adjointness(a, b, c):
    assert (PROD.tnorm(a, b) <= c) == (a <= PROD.residuum(b, c))
