"""Circuits of the kernel lattice L_A and conformal decompositions.

A circuit is a nonzero kernel vector of minimal support. It is unique up to
scaling, so it is stored primitive with its first nonzero entry positive; -c
is the same generator for every purpose downstream.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import List, NamedTuple, Sequence, Tuple

from .errors import DimensionError, DomainError, InvariantViolation
from .exactmat import Echelon, IntMatrix, RatVector, Vector, det, primitive_part, rank
from .lattice import Configuration, check_basis

logger = logging.getLogger(__name__)


def support(v: Sequence) -> Tuple[int, ...]:
    return tuple(i for i, x in enumerate(v) if x)


def canonical(v: Sequence[int]) -> Vector:
    p = primitive_part(v)
    lead = next(x for x in p if x)
    return p if lead > 0 else tuple(-x for x in p)


@dataclass(frozen=True)
class Circuit:
    vector: Vector
    # False when the support is smaller than m+1 (A_S not of full rank m)
    full_dimensional: bool = True

    @cached_property
    def support(self) -> Tuple[int, ...]:
        return support(self.vector)

    @cached_property
    def positive_support(self) -> Tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.vector) if x > 0)

    @cached_property
    def negative_support(self) -> Tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.vector) if x < 0)

    @cached_property
    def masks(self) -> Tuple[int, int]:
        pos = sum(1 << i for i in self.positive_support)
        neg = sum(1 << i for i in self.negative_support)
        return pos, neg

    def negated(self) -> Vector:
        return tuple(-x for x in self.vector)

    def sort_key(self):
        return len(self.support), self.support, self.vector


class ConformalTerm(NamedTuple):
    q: Fraction
    vector: Vector


def circuit_from_support(cfg: Configuration, S: Sequence[int]) -> Circuit | None:
    """The circuit supported exactly on S, or None when S is not a circuit support.

    Uses the alternating-minor formula on k-1 independent rows of A_S, which
    covers supports of any size, not only m+1.
    """
    S = tuple(sorted(set(S)))
    k = len(S)
    if k == 0 or S[-1] >= cfg.n or S[0] < 0:
        return None
    sub = cfg.A.select_columns(S)
    if rank(sub) != k - 1:
        return None
    chosen, echelon = [], Echelon(k)
    for i in range(sub.rows):
        nxt = echelon.extend(sub.row(i))
        if nxt is not None:
            chosen.append(sub.row(i))
            echelon = nxt
    M = IntMatrix.from_rows(chosen, cols=k)
    coeffs = []
    for j in range(k):
        minor = det(M.select_columns([c for c in range(k) if c != j]))
        if minor == 0:
            return None
        coeffs.append(minor if j % 2 == 0 else -minor)
    v = [0] * cfg.n
    for i, x in zip(S, coeffs):
        v[i] = x
    return Circuit(canonical(v), full_dimensional=(k == cfg.m + 1))


def enumerate_circuits(cfg: Configuration) -> Tuple[Circuit, ...]:
    """All circuits up to sign, ordered by support size, support, then vector.

    Walks the tree of independent column sets in increasing index order; a
    circuit S is met exactly once, as the independent set S minus max(S)
    extended by max(S). Dependent sets are never extended.
    """
    columns = cfg.A.columns()
    found: List[Circuit] = []

    def walk(start: int, chosen: Tuple[int, ...], echelon: Echelon) -> None:
        for e in range(start, cfg.n):
            nxt = echelon.extend(columns[e])
            if nxt is None:
                c = circuit_from_support(cfg, chosen + (e,))
                if c is not None:
                    found.append(c)
            else:
                walk(e + 1, chosen + (e,), nxt)

    walk(0, (), Echelon(cfg.m))
    found.sort(key=Circuit.sort_key)
    lower = sum(1 for c in found if not c.full_dimensional)
    if lower:
        logger.warning(f"{lower} of {len(found)} circuits have support smaller than m+1={cfg.m + 1}")
    logger.debug(f"enumerated {len(found)} circuits for a {cfg.m}x{cfg.n} configuration")
    return tuple(found)


def is_conformal(u: Sequence, v: Sequence) -> bool:
    if len(u) != len(v):
        raise DimensionError(f"vectors of length {len(u)} and {len(v)}")
    return all((a > 0 and b > 0) or (a < 0 and b < 0) or a == 0 for a, b in zip(u, v))


def conformal_decomposition(cfg: Configuration, v: Sequence[int],
                            circuits: Sequence[Circuit] | None = None) -> List[ConformalTerm]:
    """Write v as a positive rational combination of circuits conformal to v.

    Greedy: take the first conformal (signed) circuit in circuit order, subtract
    the largest multiple that keeps the remainder conformal to v, repeat. Each
    step zeroes at least one coordinate.
    """
    v = tuple(int(x) for x in v)
    if len(v) != cfg.n:
        raise DimensionError(f"vector of length {len(v)} for {cfg.n} columns")
    if not any(v):
        raise DomainError("cannot decompose the zero vector")
    if any(cfg.A.matvec(v)):
        raise DomainError(f"{v} is not in the kernel of A")
    if circuits is None:
        circuits = enumerate_circuits(cfg)

    rest = RatVector.from_ints(v)
    terms: List[ConformalTerm] = []
    while not rest.is_zero():
        pick = None
        for c in circuits:
            for cand in (c.vector, c.negated()):
                if is_conformal(cand, rest.entries):
                    pick = cand
                    break
            if pick is not None:
                break
        if pick is None:
            raise InvariantViolation(f"no circuit conformal to remainder {rest.entries}")
        q = min(rest.entries[i] / pick[i] for i in support(pick))
        rest = rest - RatVector.from_ints(pick).scale(q)
        terms.append(ConformalTerm(q, pick))
        if len(terms) > len(support(v)):
            raise InvariantViolation(f"decomposition of {v} did not terminate")

    total = RatVector.from_ints([0] * cfg.n)
    for t in terms:
        total = total + RatVector.from_ints(t.vector).scale(t.q)
    if total != RatVector.from_ints(v):
        raise InvariantViolation(f"decomposition of {v} does not add up")
    if len(terms) > cfg.r:
        logger.debug(f"greedy decomposition of {v} used {len(terms)} > n-m={cfg.r} circuits")
    return terms


def circuitize_basis(cfg: Configuration, B: IntMatrix,
                     circuits: Sequence[Circuit] | None = None) -> IntMatrix:
    """Replace each column by a conformal circuit, keeping the columns independent."""
    check_basis(cfg, B)
    cols = [tuple(c) for c in B.columns()]
    for i, v in enumerate(cols):
        if circuit_from_support(cfg, support(v)) is not None:
            cols[i] = primitive_part(v)
            continue
        if circuits is None:
            circuits = enumerate_circuits(cfg)
        terms = conformal_decomposition(cfg, v, circuits)
        for t in sorted(terms, key=lambda t: (support(t.vector), t.vector)):
            trial = cols[:i] + [t.vector] + cols[i + 1:]
            if rank(IntMatrix.from_columns(trial, rows=cfg.n)) == cfg.r:
                cols[i] = t.vector
                break
        else:
            raise InvariantViolation(f"no decomposition circuit of column {i + 1} keeps rank {cfg.r}")
    return IntMatrix.from_columns(cols, rows=cfg.n)
