"""Finite residuated chains and their Dragonfly extensions.

Known truth values are plain numbers: integer levels ``0..k`` on a finite
chain, or :class:`fractions.Fraction` in ``[0, 1]`` for the product system.
The unknown value is the singleton :data:`STAR`.

Two orders live on ``L* = L ∪ {*}``:

* the linear order ``≤_ℓ`` with ``0 <_ℓ * <_ℓ α`` for every positive ``α``
  (:func:`le_linear`, :func:`ell_key`);
* the lower-estimation partial order ``≤`` in which ``*`` is comparable only
  to bottom and top (:meth:`ResiduatedSystem.le_partial`).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Union

from .errors import DomainError, ParseError, UnsupportedOperation
from .report import NOT_APPLICABLE, Report, failing, passing


class Star(enum.Enum):
    STAR = "*"

    def __repr__(self) -> str:
        return "STAR"

    def __str__(self) -> str:
        return "*"


STAR = Star.STAR

Known = Union[int, Fraction]
DValue = Union[int, Fraction, Star]


class Kind(enum.Enum):
    GODEL = "godel"
    LUKASIEWICZ = "lukasiewicz"
    PRODUCT = "product"


class Comparison(enum.Enum):
    """Outcome of a comparison under a partial order."""

    TRUE = "true"
    FALSE = "false"
    INCOMPARABLE = "incomparable"

    def __bool__(self) -> bool:
        return self is Comparison.TRUE


def is_star(v: DValue) -> bool:
    return v is STAR


def ell_key(v: DValue) -> tuple:
    """Sort key realizing ``≤_ℓ``: bottom, then ``*``, then positive values."""
    if v is STAR:
        return (1, 0)
    if v == 0:
        return (0, 0)
    return (2, v)


def le_linear(a: DValue, b: DValue) -> bool:
    return ell_key(a) <= ell_key(b)


def lt_linear(a: DValue, b: DValue) -> bool:
    return ell_key(a) < ell_key(b)


def d_meet(a: DValue, b: DValue) -> DValue:
    return a if ell_key(a) <= ell_key(b) else b


def d_join(a: DValue, b: DValue) -> DValue:
    return b if ell_key(a) <= ell_key(b) else a


@dataclass(frozen=True)
class ChainScale:
    """A finite chain with levels ``0..size-1`` and optional display labels."""

    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 2:
            raise DomainError(f"chain size must be an integer >= 2, got {self.size!r}")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != self.size:
                raise DomainError(f"expected {self.size} labels, got {len(labels)}")
            if len(set(labels)) != len(labels):
                raise DomainError(f"labels must be unique: {labels}")
            if any(s in ("*", "") or "," in s or s.isspace() for s in labels):
                raise DomainError(f"invalid label in {labels}")
            numeric = _as_numbers(labels)
            if numeric is not None and any(x >= y for x, y in zip(numeric, numeric[1:])):
                raise DomainError(f"numeric labels must ascend: {labels}")

    @property
    def top(self) -> int:
        return self.size - 1

    def label(self, level: int) -> str:
        return self.labels[level] if self.labels else str(level)

    def level(self, text: str) -> int:
        text = text.strip()
        if self.labels:
            try:
                return self.labels.index(text)
            except ValueError:
                raise DomainError(f"unknown label {text!r}; scale labels are {','.join(self.labels)}")
        try:
            level = int(text)
        except ValueError:
            raise DomainError(f"not a chain level: {text!r}")
        if not 0 <= level <= self.top:
            raise DomainError(f"level {level} outside 0..{self.top}")
        return level


def _as_numbers(labels):
    try:
        return [Fraction(s) for s in labels]
    except (ValueError, ZeroDivisionError):
        return None


@dataclass(frozen=True)
class ResiduatedSystem:
    """An adjoint pair (⊗, →) on a linearly ordered carrier.

    Gödel and Łukasiewicz systems live on a finite :class:`ChainScale`
    (Łukasiewicz on the equidistant chain ``{0, 1/k, ..., 1}`` encoded by
    levels). The product system works on exact rationals in ``[0, 1]`` and
    only supports pointwise evaluation.
    """

    kind: Kind
    scale: ChainScale | None = None

    def __post_init__(self):
        if self.kind is Kind.PRODUCT:
            if self.scale is not None:
                raise DomainError("the product system has no finite scale")
        elif self.scale is None:
            raise DomainError(f"{self.kind.value} system needs a finite scale")

    @classmethod
    def godel(cls, size: int, labels: Iterable[str] | None = None) -> ResiduatedSystem:
        return cls(Kind.GODEL, ChainScale(size, tuple(labels) if labels else None))

    @classmethod
    def lukasiewicz(cls, size: int, labels: Iterable[str] | None = None) -> ResiduatedSystem:
        return cls(Kind.LUKASIEWICZ, ChainScale(size, tuple(labels) if labels else None))

    @classmethod
    def product(cls) -> ResiduatedSystem:
        return cls(Kind.PRODUCT)

    # carrier

    @property
    def is_finite(self) -> bool:
        return self.scale is not None

    @property
    def bottom(self) -> Known:
        return 0 if self.is_finite else Fraction(0)

    @property
    def top(self) -> Known:
        return self.scale.top if self.is_finite else Fraction(1)

    def values(self) -> tuple[int, ...]:
        """All known values in ascending order."""
        self._require_finite("enumerating the carrier")
        return tuple(range(self.scale.size))

    def positive_values(self) -> tuple[int, ...]:
        return self.values()[1:]

    def interior_values(self) -> tuple[int, ...]:
        """Values strictly between bottom and top."""
        return self.values()[1:-1]

    def dvalues(self) -> tuple[DValue, ...]:
        """``L*`` listed in ``≤_ℓ`` order: bottom, ``*``, then positive levels."""
        vals = self.values()
        return (vals[0], STAR) + vals[1:]

    def contains(self, v: object) -> bool:
        if isinstance(v, bool):
            return False
        if self.is_finite:
            return isinstance(v, int) and 0 <= v <= self.scale.top
        return isinstance(v, (int, Fraction)) and 0 <= v <= 1

    def check(self, v: object) -> Known:
        if not self.contains(v):
            raise DomainError(f"{v!r} is not a value of the {self.describe()} scale")
        return v if self.is_finite else Fraction(v)

    def dcheck(self, v: object) -> DValue:
        return v if v is STAR else self.check(v)

    def _require_finite(self, what: str) -> None:
        if not self.is_finite:
            raise UnsupportedOperation(f"{what} needs a finite chain; the product system is infinite")

    def describe(self) -> str:
        if self.is_finite:
            return f"{self.kind.value} {self.scale.size}"
        return self.kind.value

    # operations on L

    def tnorm(self, a: Known, b: Known) -> Known:
        a, b = self.check(a), self.check(b)
        if self.kind is Kind.GODEL:
            return min(a, b)
        if self.kind is Kind.LUKASIEWICZ:
            return max(0, a + b - self.scale.top)
        return a * b

    def residuum(self, a: Known, b: Known) -> Known:
        a, b = self.check(a), self.check(b)
        if a <= b:
            return self.top
        if self.kind is Kind.GODEL:
            return b
        if self.kind is Kind.LUKASIEWICZ:
            return self.scale.top - a + b
        return b / a

    def negation(self, a: Known) -> Known:
        return self.residuum(a, self.bottom)

    @cached_property
    def has_zero_divisors(self) -> bool:
        """Whether two positive values multiply to bottom.

        Finite chains are scanned exhaustively; the product system is
        zero-divisor-free by the integral-domain property of rationals.
        """
        if not self.is_finite:
            return False
        pos = self.positive_values()
        return any(self.tnorm(a, b) == 0 for a in pos for b in pos)

    def le(self, a: Known, b: Known) -> bool:
        return self.check(a) <= self.check(b)

    # Dragonfly operations on L*

    def d_tnorm(self, a: DValue, b: DValue) -> DValue:
        a, b = self.dcheck(a), self.dcheck(b)
        if (a is not STAR and a == 0) or (b is not STAR and b == 0):
            return self.bottom
        if a is STAR or b is STAR:
            return STAR
        return self.tnorm(a, b)

    def d_residuum(self, a: DValue, b: DValue) -> DValue:
        a, b = self.dcheck(a), self.dcheck(b)
        if a is STAR:
            if b is STAR:
                return self.top
            if b == 0:
                return STAR
            return b
        if b is STAR:
            return self.top if a == 0 else STAR
        return self.residuum(a, b)

    def d_negation(self, a: DValue) -> DValue:
        return self.d_residuum(a, self.bottom)

    def d_meet(self, a: DValue, b: DValue) -> DValue:
        return d_meet(self.dcheck(a), self.dcheck(b))

    def d_join(self, a: DValue, b: DValue) -> DValue:
        return d_join(self.dcheck(a), self.dcheck(b))

    def meet_all(self, values: Iterable[DValue]) -> DValue:
        """``≤_ℓ``-infimum; top for an empty family."""
        out = self.top
        for v in values:
            out = d_meet(out, v)
        return out

    def join_all(self, values: Iterable[DValue]) -> DValue:
        """``≤_ℓ``-supremum; bottom for an empty family."""
        out = self.bottom
        for v in values:
            out = d_join(out, v)
        return out

    def le_partial(self, a: DValue, b: DValue) -> Comparison:
        a, b = self.dcheck(a), self.dcheck(b)
        if a is STAR and b is STAR:
            return Comparison.TRUE
        if a is STAR:
            if b == self.top:
                return Comparison.TRUE
            return Comparison.FALSE if b == 0 else Comparison.INCOMPARABLE
        if b is STAR:
            if a == 0:
                return Comparison.TRUE
            return Comparison.FALSE if a == self.top else Comparison.INCOMPARABLE
        return Comparison.TRUE if a <= b else Comparison.FALSE

    # text form

    def format_value(self, v: DValue) -> str:
        if v is STAR:
            return "*"
        if self.is_finite:
            return self.scale.label(v)
        return str(Fraction(v))

    def parse_value(self, text: str) -> DValue:
        text = text.strip()
        if text == "*":
            return STAR
        if self.is_finite:
            return self.scale.level(text)
        try:
            v = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"not a rational value: {text!r}")
        return self.check(v)


def kd_implication(scale: ChainScale, a: int, b: int) -> int:
    """Kleene-Dienes implication ``max(1 - a, b)`` on an equidistant chain."""
    for v in (a, b):
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v <= scale.top:
            raise DomainError(f"{v!r} is not a level of a {scale.size}-level chain")
    return max(scale.top - a, b)


# scale spec text

_KIND_NAMES = {
    "godel": Kind.GODEL,
    "gödel": Kind.GODEL,
    "goedel": Kind.GODEL,
    "lukasiewicz": Kind.LUKASIEWICZ,
    "łukasiewicz": Kind.LUKASIEWICZ,
    "product": Kind.PRODUCT,
}


def parse_scale_spec(text: str) -> ResiduatedSystem:
    """Parse ``scale <kind> [<size> [<label>,<label>,...]]``."""
    words = text.split()
    if not words or words[0].lower() != "scale":
        raise ParseError(f"scale spec must start with 'scale': {text.strip()!r}")
    if len(words) < 2:
        raise ParseError("scale spec is missing the system kind")
    kind = _KIND_NAMES.get(words[1].lower())
    if kind is None:
        raise ParseError(f"unknown system kind {words[1]!r} (godel, lukasiewicz, product)")
    if kind is Kind.PRODUCT:
        if len(words) != 2:
            raise ParseError("'scale product' takes no size or labels")
        return ResiduatedSystem.product()
    if len(words) not in (3, 4):
        raise ParseError(f"expected 'scale {kind.value} <size> [labels]'")
    try:
        size = int(words[2])
    except ValueError:
        raise ParseError(f"scale size must be an integer, got {words[2]!r}")
    labels = tuple(s.strip() for s in words[3].split(",")) if len(words) == 4 else None
    try:
        return ResiduatedSystem(kind, ChainScale(size, labels))
    except DomainError as exc:
        raise ParseError(str(exc)) from exc


def format_scale_spec(system: ResiduatedSystem) -> str:
    if not system.is_finite:
        return "scale product"
    line = f"scale {system.kind.value} {system.scale.size}"
    if system.scale.labels:
        line += " " + ",".join(system.scale.labels)
    return line


# structural checkers


def _fmt(system: ResiduatedSystem, *vals: DValue) -> str:
    return "(" + ",".join(system.format_value(v) for v in vals) + ")"


def check_adjointness(system: ResiduatedSystem) -> Report:
    """Exhaustively test ``a⊗b ≤ c  iff  a ≤ b→c`` on the known values."""
    vals = system.values()
    count = 0
    for a, b, c in itertools.product(vals, repeat=3):
        count += 1
        if (system.tnorm(a, b) <= c) != (a <= system.residuum(b, c)):
            return failing("adjointness", _fmt(system, a, b, c), count)
    return passing("adjointness", count)


def check_monoid(system: ResiduatedSystem) -> Report:
    """Exhaustive commutativity, unit and associativity of ``⊗_D`` on ``L*``.

    Known values are scanned before ``*`` so that on chains with zero
    divisors the first associativity failure has the shape
    ``(α ⊗_D β) ⊗_D * = 0 ≠ * = α ⊗_D (β ⊗_D *)``.
    """
    vals = system.values()[1:] + (system.bottom, STAR)
    count = 0
    for a in vals:
        count += 1
        if system.d_tnorm(a, system.top) != a or system.d_tnorm(system.top, a) != a:
            return failing("monoid", _fmt(system, a), count, detail="unit")
    for a, b in itertools.product(vals, repeat=2):
        count += 1
        if system.d_tnorm(a, b) != system.d_tnorm(b, a):
            return failing("monoid", _fmt(system, a, b), count, detail="commutativity")
    for a, b, c in itertools.product(vals, repeat=3):
        count += 1
        left = system.d_tnorm(system.d_tnorm(a, b), c)
        right = system.d_tnorm(a, system.d_tnorm(b, c))
        if left != right:
            detail = (f"associativity: ({system.format_value(a)}⊗{system.format_value(b)})"
                      f"⊗{system.format_value(c)} = {system.format_value(left)} but "
                      f"{system.format_value(a)}⊗({system.format_value(b)}⊗"
                      f"{system.format_value(c)}) = {system.format_value(right)}")
            return failing("monoid", _fmt(system, a, b, c), count, detail=detail,
                           triple=(a, b, c), left=left, right=right)
    return passing("monoid", count)


def check_adjointness_failure(system: ResiduatedSystem) -> Report:
    """Locate the two witnesses showing ``L*`` is not residuated under ``≤_ℓ``.

    1. ``*⊗_D* ≰_ℓ 0`` while ``* ≤_ℓ *→_D 0``;
    2. ``*⊗_D 1 ≤_ℓ β`` while ``1 ≰_ℓ *→_D β`` for some interior ``β``.

    Passes when both are found; not applicable on a two-element chain.
    """
    interior = system.interior_values()
    if not interior:
        return Report("adjointness-failure", NOT_APPLICABLE, detail="chain has no interior values")
    s, zero, one = STAR, system.bottom, system.top
    first = (not le_linear(system.d_tnorm(s, s), zero)) and le_linear(s, system.d_residuum(s, zero))
    second = [b for b in interior
              if le_linear(system.d_tnorm(s, one), b) and not le_linear(one, system.d_residuum(s, b))]
    if first and second:
        witness = f"(*,*,{system.format_value(zero)});(*,{system.format_value(second[0])})"
        return Report("adjointness-failure", "pass", witness, checked=1 + len(interior),
                      data={"beta": second[0]})
    missing = "star-star-zero" if not first else "star-one-beta"
    return failing("adjointness-failure", f"missing:{missing}", 1 + len(interior))


def check_tnorm_monotone(system: ResiduatedSystem) -> Report:
    """``b ≤_ℓ c  ⟹  a⊗_D b ≤_ℓ a⊗_D c`` for all ``a, b, c`` in ``L*``."""
    vals = system.dvalues()
    count = 0
    for a, b, c in itertools.product(vals, repeat=3):
        if not le_linear(b, c):
            continue
        count += 1
        if not le_linear(system.d_tnorm(a, b), system.d_tnorm(a, c)):
            return failing("tnorm-monotone", _fmt(system, a, b, c), count)
    return passing("tnorm-monotone", count)


def check_residuum_monotone(system: ResiduatedSystem, known_first: bool = False) -> Report:
    """``b ≤_ℓ c  ⟹  a→_D b ≤_ℓ a→_D c``; optionally only for known ``a``.

    With ``known_first=False`` this fails on any chain with interior values
    (``* ≤_ℓ γ`` but ``*→_D* = 1 ≰_ℓ γ = *→_D γ``).
    """
    firsts = system.values() if known_first else system.dvalues()
    vals = system.dvalues()
    name = "residuum-monotone-known-first" if known_first else "residuum-monotone"
    count = 0
    for a in firsts:
        for b, c in itertools.product(vals, repeat=2):
            if not le_linear(b, c):
                continue
            count += 1
            if not le_linear(system.d_residuum(a, b), system.d_residuum(a, c)):
                return failing(name, _fmt(system, a, b, c), count)
    return passing(name, count)


def check_embedding(system: ResiduatedSystem) -> Report:
    """Dragonfly operations restricted to known values match the lattice ones."""
    vals = system.values()
    count = 0
    for a, b in itertools.product(vals, repeat=2):
        count += 1
        if (system.d_tnorm(a, b) != system.tnorm(a, b)
                or system.d_residuum(a, b) != system.residuum(a, b)
                or system.d_meet(a, b) != min(a, b)
                or system.d_join(a, b) != max(a, b)):
            return failing("embedding", _fmt(system, a, b), count)
    return passing("embedding", count)


def operation_tables(system: ResiduatedSystem) -> dict[str, dict[tuple[DValue, DValue], DValue]]:
    """Full tables of the four Dragonfly binary operations."""
    vals = system.dvalues()
    ops = {
        "tnorm": system.d_tnorm,
        "join": system.d_join,
        "meet": system.d_meet,
        "residuum": system.d_residuum,
    }
    return {name: {(a, b): op(a, b) for a in vals for b in vals} for name, op in ops.items()}


def iter_dvectors(system: ResiduatedSystem, n: int, allow_star: bool = True) -> Iterator[tuple[DValue, ...]]:
    vals = system.dvalues() if allow_star else system.values()
    return itertools.product(vals, repeat=n)


# Cell-by-cell transcription of the Dragonfly operation tables. Rows and
# columns are classes of L*: "x" an interior value, "*", "0" and "1".
# Entries: "op" apply the lattice operation, "row"/"col" copy an operand,
# "neg" negate the row operand, or a literal class.
DRAGONFLY_TABLES = {
    "tnorm": {
        "x": {"x": "op", "*": "*", "0": "0", "1": "row"},
        "*": {"x": "*", "*": "*", "0": "0", "1": "*"},
        "0": {"x": "0", "*": "0", "0": "0", "1": "0"},
        "1": {"x": "col", "*": "*", "0": "0", "1": "1"},
    },
    "join": {
        "x": {"x": "op", "*": "row", "0": "row", "1": "1"},
        "*": {"x": "col", "*": "*", "0": "*", "1": "1"},
        "0": {"x": "col", "*": "*", "0": "0", "1": "1"},
        "1": {"x": "1", "*": "1", "0": "1", "1": "1"},
    },
    "meet": {
        "x": {"x": "op", "*": "*", "0": "0", "1": "row"},
        "*": {"x": "*", "*": "*", "0": "0", "1": "*"},
        "0": {"x": "0", "*": "0", "0": "0", "1": "0"},
        "1": {"x": "col", "*": "*", "0": "0", "1": "1"},
    },
    "residuum": {
        "x": {"x": "op", "*": "*", "0": "neg", "1": "1"},
        "*": {"x": "col", "*": "1", "0": "*", "1": "1"},
        "0": {"x": "1", "*": "1", "0": "1", "1": "1"},
        "1": {"x": "col", "*": "*", "0": "0", "1": "1"},
    },
}


def value_class(system: ResiduatedSystem, v: DValue) -> str:
    if v is STAR:
        return "*"
    if v == system.bottom:
        return "0"
    return "1" if v == system.top else "x"


def table_entry(system: ResiduatedSystem, op: str, a: DValue, b: DValue) -> DValue:
    """Look up ``a op b`` in the transcribed tables."""
    rule = DRAGONFLY_TABLES[op][value_class(system, a)][value_class(system, b)]
    lattice = {"tnorm": system.tnorm, "join": max, "meet": min, "residuum": system.residuum}
    if rule == "op":
        return lattice[op](a, b)
    if rule == "row":
        return a
    if rule == "col":
        return b
    if rule == "neg":
        return system.negation(a)
    return {"*": STAR, "0": system.bottom, "1": system.top}[rule]


def check_operation_tables(system: ResiduatedSystem) -> Report:
    """Every cell of the four Dragonfly operations against the transcribed tables."""
    count = 0
    for op, table in operation_tables(system).items():
        for (a, b), value in table.items():
            count += 1
            if value != table_entry(system, op, a, b):
                return failing("operation-tables", f"{op}{_fmt(system, a, b)}", count)
    return passing("operation-tables", count)
