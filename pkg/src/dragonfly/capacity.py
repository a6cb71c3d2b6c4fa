"""Capacities (fuzzy measures) on a finite criteria universe.

Subsets are integer bitmasks: bit ``i`` stands for criterion ``i``. A
capacity stores one value of ``L*`` per mask, so ``values[0]`` is the value
of the empty set and ``values[-1]`` the value of the whole universe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .algebra import STAR, DValue, ResiduatedSystem, ell_key, le_linear
from .errors import DomainError, GuardExceeded, StructureError
from .report import Report, failing, passing

MAX_CRITERIA = 20
ENUMERATION_LIMIT = 1_000_000


@dataclass(frozen=True)
class Universe:
    n: int
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_CRITERIA:
            raise DomainError(f"universe size must be in 1..{MAX_CRITERIA}, got {self.n!r}")
        names = tuple(str(i + 1) for i in range(self.n)) if self.names is None else tuple(self.names)
        if len(names) != self.n:
            raise DomainError(f"expected {self.n} criterion names, got {len(names)}")
        if len(set(names)) != self.n:
            raise DomainError(f"criterion names must be unique: {names}")
        for name in names:
            if not name or any(ch in name for ch in "{},*") or any(ch.isspace() for ch in name):
                raise DomainError(f"invalid criterion name {name!r}")
        object.__setattr__(self, "names", names)

    @classmethod
    def named(cls, names: Iterable[str]) -> Universe:
        names = tuple(names)
        return cls(len(names), names)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def size(self) -> int:
        """Number of subsets."""
        return 1 << self.n

    def masks(self) -> range:
        return range(self.size)

    def members(self, mask: int) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if mask >> i & 1)

    def mask_of(self, items: Iterable[int | str]) -> int:
        mask = 0
        for item in items:
            i = self.names.index(item) if isinstance(item, str) else item
            if not 0 <= i < self.n:
                raise DomainError(f"criterion index {i} outside 0..{self.n - 1}")
            mask |= 1 << i
        return mask

    def complement(self, mask: int) -> int:
        return self.full & ~mask

    def display_order(self) -> list[int]:
        """Masks sorted by (cardinality, mask)."""
        return sorted(self.masks(), key=lambda m: (bin(m).count("1"), m))

    def format_subset(self, mask: int) -> str:
        return "{" + ",".join(self.names[i] for i in self.members(mask)) + "}"

    def parse_subset(self, text: str) -> int:
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise DomainError(f"subset must be written in braces: {text!r}")
        inner = text[1:-1].strip()
        if not inner:
            return 0
        mask = 0
        for part in inner.split(","):
            name = part.strip()
            if name not in self.names:
                raise DomainError(f"unknown criterion {name!r} in {text!r}")
            bit = 1 << self.names.index(name)
            if mask & bit:
                raise DomainError(f"criterion {name!r} repeated in {text!r}")
            mask |= bit
        return mask


@dataclass(frozen=True)
class Capacity:
    universe: Universe
    values: tuple[DValue, ...]

    def __post_init__(self):
        values = tuple(self.values)
        if len(values) != self.universe.size:
            raise StructureError(
                f"capacity table needs {self.universe.size} entries for n={self.universe.n}, "
                f"got {len(values)}")
        object.__setattr__(self, "values", values)

    def __getitem__(self, mask: int) -> DValue:
        return self.values[mask]

    def __call__(self, items: Iterable[int | str]) -> DValue:
        return self.values[self.universe.mask_of(items)]

    @classmethod
    def from_function(cls, universe: Universe, fn: Callable[[int], DValue]) -> Capacity:
        return cls(universe, tuple(fn(m) for m in universe.masks()))

    @classmethod
    def from_mapping(cls, universe: Universe, table: Mapping[int, DValue]) -> Capacity:
        missing = [m for m in universe.masks() if m not in table]
        if missing:
            raise StructureError(f"capacity table is missing {universe.format_subset(missing[0])}")
        return cls(universe, tuple(table[m] for m in universe.masks()))

    def is_known(self) -> bool:
        return all(v is not STAR for v in self.values)

    def replace(self, mask: int, value: DValue) -> Capacity:
        vals = list(self.values)
        vals[mask] = value
        return Capacity(self.universe, tuple(vals))


def validate_capacity(system: ResiduatedSystem, mu: Capacity) -> Report:
    """Boundary conditions and ``≤_ℓ``-monotonicity under inclusion.

    Monotonicity is checked on covering pairs ``A ⊂ A ∪ {i}``, which is
    enough since ``≤_ℓ`` is transitive.
    """
    for mask, v in enumerate(mu.values):
        if not (v is STAR or system.contains(v)):
            return failing("capacity", f"value {v!r} at {mu.universe.format_subset(mask)}",
                           detail="value outside the scale")
    u = mu.universe
    if mu[0] is STAR or mu[0] != system.bottom:
        return failing("capacity", f"{{}}={system.format_value(mu[0])}", detail="boundary: empty set")
    if mu[u.full] is STAR or mu[u.full] != system.top:
        return failing("capacity", f"{u.format_subset(u.full)}={system.format_value(mu[u.full])}",
                       detail="boundary: universe")
    count = 0
    for mask in u.masks():
        for i in range(u.n):
            if mask >> i & 1:
                continue
            count += 1
            sup = mask | 1 << i
            if not le_linear(mu[mask], mu[sup]):
                return failing(
                    "capacity",
                    f"{u.format_subset(mask)}={system.format_value(mu[mask])} > "
                    f"{u.format_subset(sup)}={system.format_value(mu[sup])}",
                    count, detail="monotonicity", pair=(mask, sup))
    return passing("capacity", count)


def conjugate(system: ResiduatedSystem, mu: Capacity) -> Capacity:
    """``μ^c(A) = μ(C∖A) →_D 0`` for every subset ``A``."""
    u = mu.universe
    return Capacity(u, tuple(system.d_negation(mu[u.complement(m)]) for m in u.masks()))


def classical_conjugate(system: ResiduatedSystem, mu: Capacity) -> Capacity:
    """``μ^c(A) = ¬μ(C∖A)`` with the lattice negation; ``μ`` must be all known."""
    if not mu.is_known():
        raise DomainError("classical conjugate needs a capacity without unknown values")
    u = mu.universe
    return Capacity(u, tuple(system.negation(mu[u.complement(m)]) for m in u.masks()))


def estimate_capacity_count(universe: Universe, system: ResiduatedSystem, allow_star: bool) -> int:
    """Upper bound on the number of capacities: values^(free subsets)."""
    system._require_finite("capacity enumeration")
    options = system.scale.size + (1 if allow_star else 0)
    return options ** max(universe.size - 2, 0)


def enumerate_capacities(
    universe: Universe,
    system: ResiduatedSystem,
    allow_star: bool = True,
    limit: int = ENUMERATION_LIMIT,
) -> Iterator[Capacity]:
    """Yield every valid capacity exactly once.

    Free subsets are filled in ascending mask order; each value ranges over
    ``L*`` (or ``L``) in ``≤_ℓ`` order, bounded below by the values of its
    immediate subsets, so every yielded table is monotone.
    """
    estimate = estimate_capacity_count(universe, system, allow_star)
    if estimate > limit:
        raise GuardExceeded(f"capacities for n={universe.n} on {system.describe()}", estimate, limit)
    options = system.dvalues() if allow_star else system.values()
    keys = [ell_key(v) for v in options]
    full = universe.full
    table: list[DValue] = [system.bottom] * universe.size
    table[full] = system.top
    free = [m for m in universe.masks() if m not in (0, full)]
    subsets_of = {m: [m & ~(1 << i) for i in universe.members(m)] for m in free}

    def fill(pos: int) -> Iterator[Capacity]:
        if pos == len(free):
            yield Capacity(universe, tuple(table))
            return
        mask = free[pos]
        floor = max(ell_key(table[s]) for s in subsets_of[mask])
        for value, key in zip(options, keys):
            if key < floor:
                continue
            table[mask] = value
            yield from fill(pos + 1)

    yield from fill(0)


def count_capacities(universe: Universe, system: ResiduatedSystem, allow_star: bool = True) -> int:
    return sum(1 for _ in enumerate_capacities(universe, system, allow_star))


def monotone_majorant(mu: Capacity) -> Capacity:
    """Smallest ``≤_ℓ``-monotone table above ``μ`` (upward sweep)."""
    vals = list(mu.values)
    u = mu.universe
    for mask in u.masks():
        for i in u.members(mask):
            sub = vals[mask & ~(1 << i)]
            if ell_key(sub) > ell_key(vals[mask]):
                vals[mask] = sub
    return Capacity(u, tuple(vals))


def monotone_minorant(mu: Capacity) -> Capacity:
    """Largest ``≤_ℓ``-monotone table below ``μ`` (downward sweep)."""
    vals = list(mu.values)
    u = mu.universe
    for mask in reversed(u.masks()):
        for i in range(u.n):
            if mask >> i & 1:
                continue
            sup = vals[mask | 1 << i]
            if ell_key(sup) < ell_key(vals[mask]):
                vals[mask] = sup
    return Capacity(u, tuple(vals))


def format_capacity(system: ResiduatedSystem, mu: Capacity) -> str:
    """Render in the line-oriented capacity format, subsets by (cardinality, mask)."""
    u = mu.universe
    lines = ["capacity " + " ".join(u.names)]
    for mask in u.display_order():
        lines.append(f"{u.format_subset(mask)} -> {system.format_value(mu[mask])}")
    return "\n".join(lines) + "\n"


def make_capacity(universe: Universe, system: ResiduatedSystem,
                  entries: Mapping[Sequence[int | str] | frozenset, DValue],
                  default: DValue | None = None) -> Capacity:
    """Build a capacity from ``{criteria: value}`` pairs, boundaries filled in.

    Unlisted subsets take ``default``; without one they are an error.
    """
    table = {0: system.bottom, universe.full: system.top}
    for items, value in entries.items():
        table[universe.mask_of(items)] = value
    if default is not None:
        for m in universe.masks():
            table.setdefault(m, default)
    return Capacity.from_mapping(universe, table)

