"""When do the Dragonfly integrals return 0, ``*`` or a positive known value?

Each predicate decides the class of an integral from a few threshold sets
of the input and one or two capacity lookups, without scanning subsets.
The oracles at the bottom compare these predicates, and the monotonicity
and lower-estimation properties, against brute-force evaluation.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .algebra import STAR, DValue, ResiduatedSystem, ell_key, le_linear, lt_linear
from .capacity import Capacity, Universe, conjugate, enumerate_capacities
from .errors import DomainError, GuardExceeded
from .integrals import IntegralKind, integral_residuum_D, integral_tnorm_D
from .report import Report, failing, passing

COMPLETION_LIMIT = 100_000


class ResultClass(enum.Enum):
    ZERO = "zero"
    STAR = "star"
    KNOWN_POSITIVE = "known"


def classify(value: DValue) -> ResultClass:
    if value is STAR:
        return ResultClass.STAR
    return ResultClass.ZERO if value == 0 else ResultClass.KNOWN_POSITIVE


def _mask(f: Sequence[DValue], pred: Callable[[DValue], bool]) -> int:
    return sum(1 << i for i, v in enumerate(f) if pred(v))


def _is_zero(v: DValue) -> bool:
    return v is not STAR and v == 0


def _require(system: ResiduatedSystem) -> None:
    if system.has_zero_divisors:
        raise DomainError(f"the characterization needs a chain without zero divisors ({system.describe()})")


# multiplication-based integral


def predict_tnorm_zero(system: ResiduatedSystem, mu: Capacity, f: Sequence[DValue]) -> bool:
    """``μ({i | f_i >_ℓ 0}) = 0``."""
    _require(system)
    support = _mask(f, lambda v: lt_linear(system.bottom, v))
    return _is_zero(mu[support])


def predict_tnorm_known(system: ResiduatedSystem, mu: Capacity, f: Sequence[DValue]) -> bool:
    """``μ({i | f_i >_ℓ *}) >_ℓ *``."""
    _require(system)
    known = _mask(f, lambda v: lt_linear(STAR, v))
    return lt_linear(STAR, mu[known])


def predict_tnorm_star(system: ResiduatedSystem, mu: Capacity, f: Sequence[DValue]) -> bool:
    """``μ({f >_ℓ *}) ≤_ℓ *``, ``μ({f ≥_ℓ *}) ≥_ℓ *`` and some ``f_i >_ℓ 0``."""
    _require(system)
    above = _mask(f, lambda v: lt_linear(STAR, v))
    at_least = _mask(f, lambda v: le_linear(STAR, v))
    return (le_linear(mu[above], STAR)
            and le_linear(STAR, mu[at_least])
            and any(lt_linear(system.bottom, v) for v in f))


def predict_tnorm_star_known_input(system: ResiduatedSystem, mu: Capacity, f: Sequence[DValue]) -> bool:
    """Specialization for inputs without ``*``: ``μ({f >_ℓ *}) = *`` and some ``f_i > 0``."""
    _require(system)
    if any(v is STAR for v in f):
        raise DomainError("this form applies to inputs without unknown values")
    above = _mask(f, lambda v: lt_linear(STAR, v))
    return mu[above] is STAR and any(not _is_zero(v) for v in f)


# residuum-based integral


def predict_res_zero(system: ResiduatedSystem, mu: Capacity, f: Sequence[DValue],
                     conj: Capacity | None = None) -> bool:
    """``μ^c({i | f_i = 0}) = 1``."""
    _require(system)
    conj = conj or conjugate(system, mu)
    v = conj[_mask(f, _is_zero)]
    return v is not STAR and v == system.top


def predict_res_known(system: ResiduatedSystem, mu: Capacity, f: Sequence[DValue],
                      conj: Capacity | None = None) -> bool:
    """``μ^c({f = 0}) = 0`` and ``μ^c({f ≤_ℓ *}) <_ℓ 1``."""
    _require(system)
    conj = conj or conjugate(system, mu)
    zeros = _mask(f, _is_zero)
    low = _mask(f, lambda v: le_linear(v, STAR))
    return _is_zero(conj[zeros]) and lt_linear(conj[low], system.top)


def predict_res_star(system: ResiduatedSystem, mu: Capacity, f: Sequence[DValue],
                     conj: Capacity | None = None) -> bool:
    """Some ``f_i ∈ {0, *}`` and one of:

    a) ``μ^c({f = 0}) = *``;
    b) some ``f_i = 0``, ``μ^c({f = 0}) = 0`` and ``μ^c({f ≤_ℓ *}) = 1``;
    c) every ``f_i >_ℓ 0`` and ``μ^c({f = *}) = 1``.
    """
    _require(system)
    conj = conj or conjugate(system, mu)
    if not any(v is STAR or _is_zero(v) for v in f):
        return False
    top = system.top

    def is_top(v):
        return v is not STAR and v == top

    zeros = _mask(f, _is_zero)
    low = _mask(f, lambda v: le_linear(v, STAR))
    stars = _mask(f, lambda v: v is STAR)
    a = conj[zeros] is STAR
    b = zeros != 0 and _is_zero(conj[zeros]) and is_top(conj[low])
    c = zeros == 0 and is_top(conj[stars])
    return a or b or c


TNORM_PREDICATES = {
    ResultClass.ZERO: predict_tnorm_zero,
    ResultClass.STAR: predict_tnorm_star,
    ResultClass.KNOWN_POSITIVE: predict_tnorm_known,
}

RESIDUUM_PREDICATES = {
    ResultClass.ZERO: predict_res_zero,
    ResultClass.STAR: predict_res_star,
    ResultClass.KNOWN_POSITIVE: predict_res_known,
}

THEOREM_IDS = {
    (IntegralKind.TNORM_D, ResultClass.ZERO): "tnorm-zero",
    (IntegralKind.TNORM_D, ResultClass.STAR): "tnorm-star",
    (IntegralKind.TNORM_D, ResultClass.KNOWN_POSITIVE): "tnorm-known",
    (IntegralKind.RESIDUUM_D, ResultClass.ZERO): "residuum-zero",
    (IntegralKind.RESIDUUM_D, ResultClass.STAR): "residuum-star",
    (IntegralKind.RESIDUUM_D, ResultClass.KNOWN_POSITIVE): "residuum-known",
}


@dataclass(frozen=True)
class TheoremVerdict:
    theorem_id: str
    predicted: ResultClass | None
    computed: DValue
    agrees: bool
    witness: str | None = None


def _integral_for(kind: IntegralKind):
    kind = IntegralKind(kind)
    if kind is IntegralKind.TNORM_D:
        return integral_tnorm_D, TNORM_PREDICATES
    if kind is IntegralKind.RESIDUUM_D:
        return integral_residuum_D, RESIDUUM_PREDICATES
    raise DomainError(f"no characterization for {kind.value}")


def predict(system: ResiduatedSystem, mu: Capacity, f: Sequence[DValue],
            kind: IntegralKind | str = IntegralKind.TNORM_D) -> list[ResultClass]:
    """Classes whose predicate holds; a single entry when the theorems are consistent."""
    _, preds = _integral_for(kind)
    return [cls for cls, pred in preds.items() if pred(system, mu, f)]


def verdict(system: ResiduatedSystem, mu: Capacity, f: Sequence[DValue],
            kind: IntegralKind | str = IntegralKind.TNORM_D) -> TheoremVerdict:
    kind = IntegralKind(kind)
    integral, _ = _integral_for(kind)
    computed = integral(system, mu, f)
    classes = predict(system, mu, f, kind)
    predicted = classes[0] if len(classes) == 1 else None
    agrees = predicted is classify(computed)
    theorem = THEOREM_IDS[kind, classify(computed)]
    witness = None
    if not agrees:
        witness = _describe(system, mu, f) + f" predicted={[c.value for c in classes]}"
    return TheoremVerdict(theorem, predicted, computed, agrees, witness)


def _describe(system: ResiduatedSystem, mu: Capacity, f: Sequence[DValue]) -> str:
    fv = "(" + ",".join(system.format_value(v) for v in f) + ")"
    mv = "[" + ",".join(system.format_value(v) for v in mu.values) + "]"
    return f"f={fv} mu={mv}"


def verify_trichotomy(system: ResiduatedSystem, universe: Universe,
                      kind: IntegralKind | str = IntegralKind.TNORM_D,
                      allow_star: bool = True) -> Report:
    """Exhaustive agreement of the three predicates with the computed integral.

    For every capacity and every input over ``L*`` exactly one predicate
    must hold and it must match the class of the integral. Stops at the
    first mismatch (enumeration order is deterministic).
    """
    kind = IntegralKind(kind)
    _require(system)
    integral, preds = _integral_for(kind)
    name = f"trichotomy-{kind.value}"
    vectors = list(itertools.product(system.dvalues() if allow_star else system.values(),
                                     repeat=universe.n))
    count = 0
    tally = {cls: 0 for cls in ResultClass}
    for mu in enumerate_capacities(universe, system, allow_star):
        conj = conjugate(system, mu) if kind is IntegralKind.RESIDUUM_D else None
        for f in vectors:
            count += 1
            value = integral(system, mu, f)
            if conj is None:
                holds = [cls for cls, p in preds.items() if p(system, mu, f)]
            else:
                holds = [cls for cls, p in preds.items() if p(system, mu, f, conj)]
            tally[classify(value)] += 1
            if holds != [classify(value)]:
                witness = (_describe(system, mu, f) + f" integral={system.format_value(value)}"
                           f" predicted={[c.value for c in holds]}")
                return failing(name, witness, count)
    return passing(name, count, detail=", ".join(f"{c.value}={n}" for c, n in tally.items()),
                   tally=tally)


def completions(system: ResiduatedSystem, f: Sequence[DValue],
                limit: int = COMPLETION_LIMIT) -> Iterator[tuple[DValue, ...]]:
    """Every vector obtained by replacing each ``*`` with a positive known value."""
    positions = [i for i, v in enumerate(f) if v is STAR]
    positive = system.positive_values()
    estimate = len(positive) ** len(positions)
    if estimate > limit:
        raise GuardExceeded(f"completions of a vector with {len(positions)} unknowns", estimate, limit)
    base = list(f)
    for choice in itertools.product(positive, repeat=len(positions)):
        for i, v in zip(positions, choice):
            base[i] = v
        yield tuple(base)


def verify_lower_estimation(system: ResiduatedSystem, mu: Capacity, f: Sequence[DValue],
                            kind: IntegralKind | str = IntegralKind.TNORM_D) -> Report:
    """``∫ f ≤_ℓ ∫ g`` for every completion ``g`` of ``f``.

    Guaranteed for the ``⊗_D`` integral and, with an all-known capacity,
    for the ``→_D`` integral; the first violating completion is reported.
    """
    kind = IntegralKind(kind)
    integral, _ = _integral_for(kind)
    name = f"lower-estimation-{kind.value}"
    base = integral(system, mu, f)
    count = 0
    for g in completions(system, f):
        count += 1
        value = integral(system, mu, g)
        if not le_linear(base, value):
            gv = "(" + ",".join(system.format_value(v) for v in g) + ")"
            return failing(name, f"g={gv} integral(f)={system.format_value(base)} "
                                 f"integral(g)={system.format_value(value)}", count)
    return passing(name, count)


def pointwise_le(f: Sequence[DValue], g: Sequence[DValue]) -> bool:
    return all(le_linear(a, b) for a, b in zip(f, g))


def check_integral_monotonicity(
    system: ResiduatedSystem,
    universe: Universe,
    kind: IntegralKind | str,
    capacities: Iterable[Capacity] | None = None,
    allow_star_input: bool = True,
    name: str | None = None,
) -> Report:
    """``f ≤_ℓ g`` pointwise implies ``∫ f ≤_ℓ ∫ g`` for every given capacity.

    Capacities default to all capacities with ``*`` allowed.
    """
    kind = IntegralKind(kind)
    integral, _ = _integral_for(kind)
    name = name or f"monotone-{kind.value}"
    if capacities is None:
        capacities = enumerate_capacities(universe, system, allow_star=True)
    vals = system.dvalues() if allow_star_input else system.values()
    vectors = sorted(itertools.product(vals, repeat=universe.n),
                     key=lambda v: [ell_key(x) for x in v])
    pairs = [(f, g) for f in vectors for g in vectors if pointwise_le(f, g)]
    count = 0
    for mu in capacities:
        values = {f: integral(system, mu, f) for f in vectors}
        for f, g in pairs:
            count += 1
            if not le_linear(values[f], values[g]):
                fv = ",".join(system.format_value(v) for v in f)
                gv = ",".join(system.format_value(v) for v in g)
                mv = ",".join(system.format_value(v) for v in mu.values)
                return failing(name, f"mu=[{mv}] f=({fv}) g=({gv}) "
                                     f"{system.format_value(values[f])}>{system.format_value(values[g])}",
                               count, mu=mu, f=f, g=g)
    return passing(name, count)
