"""Admissible capacities for (input vector, global evaluation) data.

For one datum ``(f, α)`` the capacities whose ``⊗_D`` integral of ``f`` is
``α`` are bounded by

    lower(A) = α       if {i | f_i ≥_ℓ α} ⊆ A, else bottom
    upper(A) = α       if A ⊆ {i | f_i >_ℓ α}, else top

with the boundary values forced on ∅ and on the whole universe. These
bounds describe the admissible capacities only when ``α`` is attainable at
all, i.e. ``inf_D f ≤_ℓ α ≤_ℓ sup_D f``; otherwise no capacity works and
the datum is reported as inconsistent. A dataset is handled by
intersecting the per-datum intervals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import STAR, DValue, ResiduatedSystem, ell_key, le_linear, lt_linear
from .capacity import Capacity, Universe, enumerate_capacities, monotone_majorant, monotone_minorant
from .errors import DragonflyError, StructureError
from .integrals import integral_tnorm_D
from .report import Report, failing, passing


@dataclass(frozen=True)
class Datum:
    f: tuple[DValue, ...]
    alpha: DValue

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))

    @property
    def complete(self) -> bool:
        return all(v is not STAR for v in self.f)


@dataclass(frozen=True)
class CapacityInterval:
    lower: Capacity
    upper: Capacity

    @property
    def universe(self) -> Universe:
        return self.lower.universe

    @property
    def consistent(self) -> bool:
        return all(le_linear(a, b) for a, b in zip(self.lower.values, self.upper.values))

    def contains(self, mu: Capacity) -> bool:
        return all(le_linear(lo, v) and le_linear(v, hi)
                   for lo, v, hi in zip(self.lower.values, mu.values, self.upper.values))


@dataclass
class Inconsistency:
    """Where the lower bound overtakes the upper bound.

    ``subset`` is ``None`` when a single datum is unattainable; both datum
    indices then point at it.
    """

    subset: int | None
    lower: DValue
    upper: DValue
    lower_datum: int | None
    upper_datum: int | None

    def describe(self, system: ResiduatedSystem, universe: Universe) -> str:
        def row(i):
            return "boundary" if i is None else f"row {i + 1}"
        if self.subset is None:
            return (f"inconsistent data at {row(self.lower_datum)}: no capacity reaches the evaluation; "
                    f"it must lie between {system.format_value(self.lower)} and "
                    f"{system.format_value(self.upper)}")
        return (f"inconsistent data at {universe.format_subset(self.subset)}: lower bound "
                f"{system.format_value(self.lower)} ({row(self.lower_datum)}) exceeds upper bound "
                f"{system.format_value(self.upper)} ({row(self.upper_datum)})")


class InconsistentData(DragonflyError):
    def __init__(self, inconsistency: Inconsistency, message: str):
        super().__init__(message)
        self.inconsistency = inconsistency


def _check_datum(universe: Universe, datum: Datum) -> None:
    if len(datum.f) != universe.n:
        raise StructureError(f"datum has {len(datum.f)} criteria, universe has {universe.n}")


def _threshold(f: Sequence[DValue], alpha: DValue, strict: bool) -> int:
    cmp = lt_linear if strict else le_linear
    return sum(1 << i for i, v in enumerate(f) if cmp(alpha, v))


def _with_boundaries(system: ResiduatedSystem, universe: Universe, values: list) -> Capacity:
    values[0] = system.bottom
    values[universe.full] = system.top
    return Capacity(universe, tuple(values))


def lower_bound_capacity(system: ResiduatedSystem, universe: Universe, datum: Datum) -> Capacity:
    _check_datum(universe, datum)
    required = _threshold(datum.f, datum.alpha, strict=False)
    values = [datum.alpha if required & ~mask == 0 else system.bottom for mask in universe.masks()]
    return _with_boundaries(system, universe, values)


def upper_bound_capacity(system: ResiduatedSystem, universe: Universe, datum: Datum) -> Capacity:
    _check_datum(universe, datum)
    allowed = _threshold(datum.f, datum.alpha, strict=True)
    values = [datum.alpha if mask & ~allowed == 0 else system.top for mask in universe.masks()]
    return _with_boundaries(system, universe, values)


def attainable(system: ResiduatedSystem, datum: Datum) -> bool:
    """Whether some capacity can integrate ``f`` to ``α``: ``inf_D f ≤_ℓ α ≤_ℓ sup_D f``."""
    return le_linear(system.meet_all(datum.f), datum.alpha) and le_linear(datum.alpha, system.join_all(datum.f))


def datum_interval(system: ResiduatedSystem, universe: Universe, datum: Datum) -> CapacityInterval:
    return CapacityInterval(lower_bound_capacity(system, universe, datum),
                            upper_bound_capacity(system, universe, datum))


def admissible_interval(system: ResiduatedSystem, universe: Universe,
                        datum: Datum) -> CapacityInterval | None:
    """The interval of admissible capacities, or ``None`` when there are none."""
    return datum_interval(system, universe, datum) if attainable(system, datum) else None


def vacuous_interval(system: ResiduatedSystem, universe: Universe) -> CapacityInterval:
    lower = [system.bottom] * universe.size
    upper = [system.top] * universe.size
    return CapacityInterval(_with_boundaries(system, universe, lower),
                            _with_boundaries(system, universe, upper))


@dataclass
class IdentificationResult:
    interval: CapacityInterval
    raw: CapacityInterval
    lower_source: list[int | None] = field(default_factory=list)
    upper_source: list[int | None] = field(default_factory=list)

    @property
    def repaired(self) -> bool:
        """Whether the monotone repair changed either bound."""
        return self.raw != self.interval


def identify(system: ResiduatedSystem, universe: Universe, data: Sequence[Datum]) -> IdentificationResult:
    """Intersect the per-datum intervals and repair monotonicity.

    ``lower_source[A]`` / ``upper_source[A]`` is the index of the first
    datum that set the bound at ``A`` (``None`` when the boundary value or
    the vacuous bound is in force). Raises :class:`InconsistentData` when
    the lower bound exceeds the upper bound somewhere.
    """
    start = vacuous_interval(system, universe)
    lower = list(start.lower.values)
    upper = list(start.upper.values)
    lower_src: list[int | None] = [None] * universe.size
    upper_src: list[int | None] = [None] * universe.size
    inner = [m for m in universe.masks() if m not in (0, universe.full)]
    for j, datum in enumerate(data):
        if not attainable(system, datum):
            bad = Inconsistency(None, system.meet_all(datum.f), system.join_all(datum.f), j, j)
            raise InconsistentData(bad, bad.describe(system, universe))
        lo = lower_bound_capacity(system, universe, datum)
        hi = upper_bound_capacity(system, universe, datum)
        for m in inner:
            if ell_key(lo[m]) > ell_key(lower[m]):
                lower[m], lower_src[m] = lo[m], j
            if ell_key(hi[m]) < ell_key(upper[m]):
                upper[m], upper_src[m] = hi[m], j
    raw = CapacityInterval(Capacity(universe, tuple(lower)), Capacity(universe, tuple(upper)))
    _raise_if_inconsistent(system, universe, raw, lower_src, upper_src)
    repaired = CapacityInterval(monotone_majorant(raw.lower), monotone_minorant(raw.upper))
    _raise_if_inconsistent(system, universe, repaired, lower_src, upper_src)
    return IdentificationResult(repaired, raw, lower_src, upper_src)


def _raise_if_inconsistent(system, universe, interval, lower_src, upper_src) -> None:
    for m in universe.masks():
        lo, hi = interval.lower[m], interval.upper[m]
        if lt_linear(hi, lo):
            bad = Inconsistency(m, lo, hi, lower_src[m], upper_src[m])
            raise InconsistentData(bad, bad.describe(system, universe))


def intersect(system: ResiduatedSystem, universe: Universe, data: Sequence[Datum]) -> CapacityInterval:
    return identify(system, universe, data).interval


def check_admissible(system: ResiduatedSystem, mu: Capacity, data: Sequence[Datum]) -> Report:
    """Evaluate the ``⊗_D`` integral of every datum and compare with its evaluation.

    ``data["rows"]`` holds ``(index, computed, expected, ok)`` for every datum.
    """
    rows = []
    for j, datum in enumerate(data):
        _check_datum(mu.universe, datum)
        computed = integral_tnorm_D(system, mu, datum.f)
        rows.append((j, computed, datum.alpha, computed == datum.alpha))
    bad = [r for r in rows if not r[3]]
    if bad:
        j, computed, expected, _ = bad[0]
        witness = (f"row={j + 1} computed={system.format_value(computed)} "
                   f"expected={system.format_value(expected)}")
        return failing("admissible", witness, len(rows), detail=f"{len(bad)} of {len(rows)} rows differ",
                       rows=rows)
    return passing("admissible", len(rows), rows=rows)


def verify_interval_characterization(system: ResiduatedSystem, universe: Universe, datum: Datum,
                                     allow_star: bool = True) -> Report:
    """Compare ``μ ∈ admissible_interval`` with ``∫ f = α`` over every capacity.

    Passes when the two agree for every capacity. The raw bound formulas
    are tracked as well: ``sound_failures`` counts capacities inside the
    formula interval whose integral differs from ``α`` and
    ``complete_failures`` counts capacities reaching ``α`` outside it. On
    unattainable data the formula interval is non-empty while nothing is
    admissible, so only the guarded comparison can pass there.
    """
    interval = datum_interval(system, universe, datum)
    reachable = attainable(system, datum)
    counts = {"capacities": 0, "admissible": 0, "in_interval": 0,
              "sound_failures": 0, "complete_failures": 0, "mismatches": 0}
    witnesses: dict[str, str] = {}
    for mu in enumerate_capacities(universe, system, allow_star):
        counts["capacities"] += 1
        value = integral_tnorm_D(system, mu, datum.f)
        hit = value == datum.alpha
        inside = interval.contains(mu)
        counts["admissible"] += hit
        counts["in_interval"] += inside
        keys = []
        if inside and not hit:
            keys.append("sound_failures")
        elif hit and not inside:
            keys.append("complete_failures")
        if (inside and reachable) != hit:
            keys.append("mismatches")
        for key in keys:
            counts[key] += 1
            if key not in witnesses:
                mv = ",".join(system.format_value(v) for v in mu.values)
                witnesses[key] = f"mu=[{mv}] integral={system.format_value(value)}"
    fv = ",".join(system.format_value(v) for v in datum.f)
    name = f"interval-characterization(f=({fv}),alpha={system.format_value(datum.alpha)})"
    detail = f"attainable={reachable} " + " ".join(f"{k}={v}" for k, v in counts.items())
    if counts["mismatches"]:
        return failing(name, witnesses["mismatches"], counts["capacities"], detail=detail,
                       attainable=reachable, witnesses=witnesses, **counts)
    return passing(name, counts["capacities"], detail=detail,
                   attainable=reachable, witnesses=witnesses, **counts)
