"""Search for a complete intersection basis ideal generated by circuits.

I_A contains a complete intersection basis ideal iff it contains one whose
generators are circuits, so it is enough to walk r-subsets of the circuit set.
The walk is a prefix tree over circuit indices in increasing order. A prefix
is pruned when its sign matrix already has a mixed submatrix with more columns
than rows (every superset keeps it) or when its circuits are dependent.
"""
from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from math import comb
from multiprocessing import Manager
from typing import Iterable, List, Sequence, Tuple

import pandas as pd
from tqdm import tqdm

from . import config
from .circuits import Circuit, circuit_from_support, enumerate_circuits
from .citest import (SignMatrix, associated_prime, brute_force_violation, find_two_full_rows,
                     find_violation, first_extension_violation, sign_pattern)
from .errors import DomainError, InvalidBasis, InvariantViolation, ToricCIError, UsageError
from .exactmat import Echelon, IntMatrix
from .export_schema import PROBE_COLUMNS, SearchCounters, SearchReport, Verdict, WitnessModel
from .generators import convex_polygon, cyclic_by_codimension, decagon_quadruples
from .lattice import Configuration, check_basis, lattice_index, make_basis
from .utils.text import binomial, one_based

logger = logging.getLogger(__name__)


class _BudgetHit(Exception):
    pass


class _Stop(Exception):
    pass


@dataclass
class _Tally:
    tested: int = 0
    pruned_sign: int = 0
    pruned_rank: int = 0
    pruned_covered: int = 0
    ci_bases: int = 0
    found: Tuple[int, ...] | None = None
    budget_hit: bool = False
    cancelled: bool = False

    def merge(self, other: "_Tally") -> None:
        self.tested += other.tested
        self.pruned_sign += other.pruned_sign
        self.pruned_rank += other.pruned_rank
        self.pruned_covered += other.pruned_covered
        self.ci_bases += other.ci_bases
        self.budget_hit |= other.budget_hit
        self.cancelled |= other.cancelled
        if other.found is not None and (self.found is None or other.found < self.found):
            self.found = other.found


@dataclass
class _TreeWalk:
    vectors: List[Tuple[int, ...]]
    masks: List[Tuple[int, int]]
    n: int
    r: int
    budget: int
    stop_at_first: bool
    prune: bool = True
    stop_event: object = None
    tally: _Tally = field(default_factory=_Tally)
    _nodes: int = 0

    def run(self, start: int, stop: int) -> _Tally:
        try:
            self._walk(start, stop, (), (), Echelon(self.n))
        except _BudgetHit:
            self.tally.budget_hit = True
        except _Stop:
            pass
        return self.tally

    def _tick(self) -> None:
        self._nodes += 1
        if self.stop_event is not None and self._nodes % config.CANCEL_CHECK_EVERY == 0:
            if self.stop_event.is_set():
                self.tally.cancelled = True
                raise _Stop

    def _walk(self, start: int, stop: int, chosen: Tuple[int, ...],
              prefix: Tuple[Tuple[int, int], ...], echelon: Echelon | None) -> None:
        N = len(self.vectors)
        still_needed = self.r - len(chosen) - 1
        stop = min(stop, N - still_needed)
        leaf = still_needed == 0
        for j in range(start, stop):
            self._tick()
            if leaf:
                if self.tally.tested >= self.budget:
                    raise _BudgetHit
                self.tally.tested += 1
            picked = chosen + (j,)
            if self.prune:
                covered = 0 if leaf else comb(N - 1 - j, still_needed)
                if first_extension_violation(prefix, self.masks[j]) is not None:
                    if not leaf:
                        self.tally.pruned_sign += 1
                        self.tally.pruned_covered += covered
                    continue
                nxt = echelon.extend(self.vectors[j])
                if nxt is None:
                    if not leaf:
                        self.tally.pruned_rank += 1
                        self.tally.pruned_covered += covered
                    continue
            else:
                nxt = None
                if leaf and not _subset_is_ci_basis(self.vectors, self.n, picked):
                    continue
            if leaf:
                self.tally.ci_bases += 1
                if self.tally.found is None:
                    self.tally.found = picked
                if self.stop_at_first:
                    raise _Stop
            else:
                self._walk(j + 1, N, picked, prefix + (self.masks[j],), nxt)


def _subset_is_ci_basis(vectors: Sequence[Tuple[int, ...]], n: int, picked: Sequence[int]) -> bool:
    echelon = Echelon(n)
    for j in picked:
        echelon = echelon.extend(vectors[j])
        if echelon is None:
            return False
    S = SignMatrix.from_columns([vectors[j] for j in picked], n)
    return find_violation(S) is None


def _branch_task(vectors, masks, n, r, budget, stop_at_first, prune, first, stop_event) -> _Tally:
    walk = _TreeWalk(vectors, masks, n, r, budget, stop_at_first, prune, stop_event)
    tally = walk.run(first, first + 1)
    if tally.found is not None and stop_at_first:
        stop_event.set()
    return tally


def order_circuits(circuits: Sequence[Circuit], seed_supports: Iterable[Sequence[int]] | None = None) -> List[Circuit]:
    circuits = list(circuits)
    if not seed_supports:
        return circuits
    by_support = {c.support: c for c in circuits}
    head = []
    for s in seed_supports:
        s = tuple(sorted(s))
        if s not in by_support:
            raise DomainError(f"{one_based(s)} is not a circuit support")
        if by_support[s] not in head:
            head.append(by_support[s])
    return head + [c for c in circuits if c not in head]


def certify_basis(cfg: Configuration, columns: Sequence[Sequence[int]]) -> None:
    B = IntMatrix.from_columns(columns, rows=cfg.n)
    try:
        check_basis(cfg, B)
    except InvalidBasis as e:
        raise InvariantViolation(f"search produced an invalid basis: {e}") from e
    for c in columns:
        if circuit_from_support(cfg, [i for i, x in enumerate(c) if x]) is None:
            raise InvariantViolation(f"search produced a non-circuit column {tuple(c)}")
    S = sign_pattern(B)
    if find_violation(S) is not None:
        raise InvariantViolation("search produced a basis failing the criterion")
    if S.n <= config.BRUTE_FORCE_MAX_ROWS and brute_force_violation(S) is not None:
        raise InvariantViolation("brute force disagrees with the search result")


def _run_tree(circuits: List[Circuit], cfg: Configuration, budget: int, stop_at_first: bool,
              prune: bool, jobs: int, progress: bool) -> _Tally:
    vectors = [c.vector for c in circuits]
    masks = [c.masks for c in circuits]
    N, r = len(circuits), cfg.r
    firsts = range(0, max(0, N - r + 1))
    total = _Tally()
    if jobs <= 1:
        walk = _TreeWalk(vectors, masks, cfg.n, r, budget, stop_at_first, prune)
        for first in tqdm(firsts, desc="first circuit", disable=not progress, leave=False):
            walk.run(first, first + 1)
            if walk.tally.budget_hit or (stop_at_first and walk.tally.found is not None):
                break
        total.merge(walk.tally)
        return total

    with Manager() as manager:
        stop_event = manager.Event()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_branch_task, vectors, masks, cfg.n, r, budget,
                                   stop_at_first, prune, first, stop_event) for first in firsts]
            for fut in tqdm(as_completed(futures), total=len(futures), desc="branches",
                            disable=not progress, leave=False):
                total.merge(fut.result())
    if total.tested > budget:
        total.budget_hit = True
    return total


def _randomized(circuits: List[Circuit], cfg: Configuration, budget: int, seed: int) -> Tuple[_Tally, bool]:
    vectors = [c.vector for c in circuits]
    N, r = len(circuits), cfg.r
    total = comb(N, r)
    rng = random.Random(seed)
    seen = set()
    tally = _Tally()
    while len(seen) < total:
        if tally.tested >= budget:
            tally.budget_hit = True
            break
        picked = tuple(sorted(rng.sample(range(N), r)))
        if picked in seen:
            continue
        seen.add(picked)
        tally.tested += 1
        if _subset_is_ci_basis(vectors, cfg.n, picked):
            tally.ci_bases += 1
            tally.found = picked
            break
    return tally, len(seen) == total


def search_ci_circuit_basis(cfg: Configuration, mode: str = "exhaustive", budget: int | None = None,
                            seed: int | None = None, jobs: int = 1, prune: bool = True,
                            circuits: Sequence[Circuit] | None = None,
                            seed_supports: Iterable[Sequence[int]] | None = None,
                            progress: bool = False) -> SearchReport:
    if mode not in config.SEARCH_MODES:
        raise UsageError(f"unknown mode {mode!r}; choose from {', '.join(config.SEARCH_MODES)}")
    if cfg.r < 1:
        raise DomainError("codimension 0: there is nothing to search")
    budget = config.default_budget() if budget is None else budget
    if budget <= 0:
        raise UsageError(f"budget must be positive, got {budget}")
    started = time.perf_counter()
    if circuits is None:
        circuits = enumerate_circuits(cfg)
    circuits = order_circuits(circuits, seed_supports)
    total = comb(len(circuits), cfg.r)
    logger.info(f"searching {total} {cfg.r}-subsets of {len(circuits)} circuits ({mode})")

    if mode == "randomized":
        seed = config.DEFAULT_SEED if seed is None else seed
        tally, covered_all = _randomized(circuits, cfg, budget, seed)
    else:
        tally = _run_tree(circuits, cfg, budget, mode == "first-found", prune, jobs, progress)
        covered_all = not tally.budget_hit and not tally.cancelled
        certifies = mode == "exhaustive" or tally.found is None
        if covered_all and certifies and tally.tested + tally.pruned_covered != total:
            raise InvariantViolation(
                f"search covered {tally.tested}+{tally.pruned_covered} of {total} subsets")

    report = SearchReport(
        verdict=Verdict.EXHAUSTED_NONE,
        mode=mode,
        counters=SearchCounters(circuits=len(circuits), tested=tally.tested,
                                pruned_sign=tally.pruned_sign, pruned_rank=tally.pruned_rank,
                                pruned_covered=tally.pruned_covered, ci_bases=tally.ci_bases),
        total_combinations=total,
        seed=seed if mode == "randomized" else None,
    )
    lower = sum(1 for c in circuits if not c.full_dimensional)
    if lower:
        report.notes.append(f"{lower} circuits have support smaller than m+1")
    if tally.found is not None:
        columns = [list(circuits[j].vector) for j in tally.found]
        certify_basis(cfg, columns)
        B = IntMatrix.from_columns(columns, rows=cfg.n)
        report.verdict = Verdict.FOUND
        report.basis = columns
        report.binomials = [binomial(c) for c in columns]
        report.complete_intersection = True
        report.g = lattice_index(cfg, B)
        report.laurent_equal = report.g == 1
    elif not covered_all:
        report.verdict = Verdict.BUDGET_EXCEEDED
        if mode == "randomized":
            logger.warning("randomized search did not certify nonexistence")
    else:
        report.complete_intersection = False
        report.notes.append("no circuit basis is a complete intersection, hence no basis ideal in I_A is")
    report.elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
    logger.info(f"search verdict {report.verdict.value} after {tally.tested} tested")
    return report


def check_sign_matrix(S: SignMatrix) -> SearchReport:
    started = time.perf_counter()
    witness = find_violation(S)
    report = SearchReport(
        verdict=Verdict.FOUND if witness is None else Verdict.NONE_FOR_BASIS,
        complete_intersection=witness is None,
    )
    if witness is not None:
        report.witness = WitnessModel(rows=[i + 1 for i in witness.rows], cols=[j + 1 for j in witness.cols])
        pair = find_two_full_rows(S)
        if pair is not None:
            j, k = pair
            both = (1 << j) | (1 << k)
            if sum(1 for pos, neg in S.masks if pos & both and neg & both) >= 3:
                report.consecutive_rows = (j + 1, k + 1)
                report.associated_prime = associated_prime(j, k)
    report.elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
    return report


def check_given_basis(cfg: Configuration, B: IntMatrix) -> SearchReport:
    g = make_basis(cfg, B).index_g
    report = check_sign_matrix(sign_pattern(B))
    report.basis = [list(c) for c in B.columns()]
    report.binomials = [binomial(c) for c in B.columns()]
    report.g = g
    report.laurent_equal = g == 1
    return report


def verify_nonexistence_bound(param: int, family: str, n_range: Iterable[int], budget: int | None = None,
                              mode: str | None = None, jobs: int = 1, progress: bool = False,
                              seed_supports: Iterable[Sequence[int]] | None = None) -> pd.DataFrame:
    """One search per n. For `cyclic` param is r; for `polygon` it is d (only 2).

    `seed_supports` are tried first on every row. Without them the decagon row
    is seeded with its seven alternating quadruples.
    """
    if family not in ("cyclic", "polygon"):
        raise UsageError(f"family must be cyclic or polygon, got {family!r}")
    if family == "polygon" and param != 2:
        raise DomainError(f"the polygon family is planar, d must be 2, got {param}")
    if mode is None:
        mode = "exhaustive" if family == "cyclic" else "first-found"
    rows = []
    for n in tqdm(list(n_range), desc=f"{family} probe", disable=not progress):
        row = {"family": family, "n": n}
        try:
            cfg = cyclic_by_codimension(param, n) if family == "cyclic" else convex_polygon(n)
            seeds = seed_supports
            if seeds is None and family == "polygon" and n == 10:
                seeds = decagon_quadruples()
            rep = search_ci_circuit_basis(cfg, mode=mode, budget=budget, jobs=jobs, seed_supports=seeds)
        except ToricCIError as e:
            row.update(verdict=f"invalid: {e}")
            rows.append(row)
            continue
        row.update(m=cfg.m, d=cfg.d, r=cfg.r, circuits=rep.counters.circuits, verdict=rep.verdict.value,
                   tested=rep.counters.tested, pruned_covered=rep.counters.pruned_covered,
                   total_combinations=rep.total_combinations, elapsed_ms=rep.elapsed_ms)
        rows.append(row)
    return pd.DataFrame(rows, columns=PROBE_COLUMNS)
