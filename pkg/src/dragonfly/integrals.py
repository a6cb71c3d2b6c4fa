"""Qualitative integrals over a residuated chain and over its Dragonfly extension.

All four integrals scan the ``2^n`` subsets in ascending mask order:

* ``tnorm``    sup_A  μ(A) ⊗ inf_{i∈A} f_i
* ``residuum`` inf_A  μ^c(A) → sup_{i∈A} f_i

The ``*_L`` variants work on known values with the lattice operations; the
``*_D`` variants accept ``*`` and use ``⊗_D``, ``→_D`` and the ``≤_ℓ``
lattice. An empty infimum is top and an empty supremum is bottom.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .algebra import STAR, DValue, Kind, Known, ResiduatedSystem, ell_key, kd_implication
from .capacity import Capacity, classical_conjugate, conjugate
from .errors import DomainError, StructureError


class IntegralKind(enum.Enum):
    TNORM_L = "tnorm-l"
    RESIDUUM_L = "residuum-l"
    TNORM_D = "tnorm-d"
    RESIDUUM_D = "residuum-d"


@dataclass(frozen=True)
class IntegralResult:
    """Integral value plus the subset that attains it.

    ``witness`` is the first mask (ascending) whose term equals the result;
    ``terms`` lists ``(mask, term)`` for every subset.
    """

    kind: IntegralKind
    value: DValue
    witness: int
    terms: tuple[tuple[int, DValue], ...]


def _check_inputs(system: ResiduatedSystem, mu: Capacity, f: Sequence[DValue], known: bool) -> tuple:
    f = tuple(f)
    if len(f) != mu.universe.n:
        raise StructureError(f"input vector has {len(f)} entries, universe has {mu.universe.n}")
    for v in f + mu.values:
        if v is STAR:
            if known:
                raise DomainError("unknown value in a classical integral; use the Dragonfly variant")
        else:
            system.check(v)
    if mu[0] is STAR or mu[0] != system.bottom or mu[mu.universe.full] is STAR \
            or mu[mu.universe.full] != system.top:
        raise DomainError("capacity must map the empty set to bottom and the universe to top")
    return f


def _require_no_zero_divisors(system: ResiduatedSystem) -> None:
    if system.has_zero_divisors:
        raise DomainError(
            f"Dragonfly integrals need a chain without zero divisors; {system.describe()} has them")


def _scan(kind, mu, f, combine, inner, pick) -> IntegralResult:
    u = mu.universe
    terms = tuple((mask, combine(mu[mask], inner(f[i] for i in u.members(mask))))
                  for mask in u.masks())
    witness, value = pick(terms, key=lambda t: ell_key(t[1]))
    return IntegralResult(kind, value, witness, terms)


def _lattice_meet(system: ResiduatedSystem):
    def meet(values):
        out = system.top
        for v in values:
            out = min(out, v)
        return out
    return meet


def _lattice_join(system: ResiduatedSystem):
    def join(values):
        out = system.bottom
        for v in values:
            out = max(out, v)
        return out
    return join


def evaluate(kind: IntegralKind | str, system: ResiduatedSystem, mu: Capacity,
             f: Sequence[DValue]) -> IntegralResult:
    """Compute an integral with its provenance trace."""
    kind = IntegralKind(kind)
    if kind is IntegralKind.TNORM_L:
        f = _check_inputs(system, mu, f, known=True)
        return _scan(kind, mu, f, system.tnorm, _lattice_meet(system), max)
    if kind is IntegralKind.RESIDUUM_L:
        f = _check_inputs(system, mu, f, known=True)
        nu = classical_conjugate(system, mu)
        return _scan(kind, nu, f, system.residuum, _lattice_join(system), min)
    _require_no_zero_divisors(system)
    f = _check_inputs(system, mu, f, known=False)
    if kind is IntegralKind.TNORM_D:
        return _scan(kind, mu, f, system.d_tnorm, system.meet_all, max)
    nu = conjugate(system, mu)
    return _scan(kind, nu, f, system.d_residuum, system.join_all, min)


def integral_tnorm_L(system: ResiduatedSystem, mu: Capacity, f: Sequence[Known]) -> Known:
    return evaluate(IntegralKind.TNORM_L, system, mu, f).value


def integral_residuum_L(system: ResiduatedSystem, mu: Capacity, f: Sequence[Known]) -> Known:
    return evaluate(IntegralKind.RESIDUUM_L, system, mu, f).value


def integral_tnorm_D(system: ResiduatedSystem, mu: Capacity, f: Sequence[DValue]) -> DValue:
    return evaluate(IntegralKind.TNORM_D, system, mu, f).value


def integral_residuum_D(system: ResiduatedSystem, mu: Capacity, f: Sequence[DValue]) -> DValue:
    return evaluate(IntegralKind.RESIDUUM_D, system, mu, f).value


def integral_kd(system: ResiduatedSystem, mu: Capacity, f: Sequence[int]) -> int:
    """Residuum-style integral with the Kleene-Dienes implication.

    The conjugate uses the involutive complement ``k - v`` (``v →_KD 0``).
    On known data this equals the Sugeno integral.
    """
    if system.kind is Kind.PRODUCT:
        raise DomainError("the Kleene-Dienes implication needs an equidistant finite chain")
    f = _check_inputs(system, mu, f, known=True)
    u, k, scale = mu.universe, system.top, system.scale
    out = k
    for mask in u.masks():
        conj = kd_implication(scale, mu[u.complement(mask)], 0)
        sup = max((f[i] for i in u.members(mask)), default=0)
        out = min(out, kd_implication(scale, conj, sup))
    return out


def sugeno(mu: Capacity, f: Sequence[int]) -> int:
    """Textbook Sugeno integral ``max_i min(f_(i), μ(A_(i)))`` over the sorted input.

    ``A_(i)`` holds the criteria whose values are at least the ``i``-th
    smallest. Independent of the subset scan used by :func:`evaluate`.
    """
    u = mu.universe
    if len(f) != u.n:
        raise StructureError(f"input vector has {len(f)} entries, universe has {u.n}")
    if any(v is STAR for v in f) or not mu.is_known():
        raise DomainError("the Sugeno integral is defined on known values only")
    order = sorted(range(u.n), key=lambda i: f[i])
    best = 0
    for pos, i in enumerate(order):
        upper = u.mask_of(order[pos:])
        best = max(best, min(f[i], mu[upper]))
    return best

