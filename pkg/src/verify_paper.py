"""Reproduction harness: the acceptance checks as a table of CheckResult rows."""
from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, List, Tuple

import pandas as pd
from tqdm import tqdm

from .circuits import circuitize_basis, conformal_decomposition, enumerate_circuits, is_conformal
from .citest import (brute_force_violation, find_violation, is_complete_intersection,
                     sign_pattern)
from .errors import ToricCIError
from .exactmat import IntMatrix, rank
from .export_schema import CHECK_COLUMNS, CheckResult, Verdict
from .generators import (bound_eval, bound_threshold, codim3_bound, convex_polygon, curve_ci_basis,
                         cyclic_by_codimension, decagon_quadruples, decagon_sign_matrix, monomial_curve,
                         quadruple_circuit, random_configuration, random_curve, random_sign_matrix)
from .lattice import kernel_lattice
from .search import search_ci_circuit_basis

logger = logging.getLogger(__name__)

GROUPS = ["signs", "corollary", "curves", "cyclic", "structure", "bounds",
          "decagon", "oracle", "conformal", "exploratory"]

CYCLIC_R = 3
CYCLIC_N = 14
EXPLORATORY_N = range(6, 14)
EXPLORATORY_BUDGET = 200_000

Outcome = Tuple[bool, str]


@dataclass(frozen=True)
class Check:
    group: str
    name: str
    run: Callable[[], Outcome]
    blocking: bool = True


def _alternates(v: Iterable[int]) -> bool:
    signs = [x > 0 for x in v if x]
    return all(a != b for a, b in zip(signs, signs[1:]))


def check_decagon_signs() -> Outcome:
    S = decagon_sign_matrix()
    fast = find_violation(S)
    slow = brute_force_violation(S)
    return fast is None and slow is None, f"{S.n}x{S.r}, fast={fast}, brute={slow}"


def check_corollary(count: int = 200, seed: int = 1) -> Outcome:
    rng = random.Random(seed)
    bases = 0
    for _ in range(count):
        cfg = random_configuration(rng, n_max=8, r_choices=(1, 2), entry_max=6)
        circuits = enumerate_circuits(cfg)
        for picked in combinations(circuits, cfg.r):
            B = IntMatrix.from_columns([c.vector for c in picked], rows=cfg.n)
            if rank(B) != cfg.r:
                continue
            bases += 1
            if not is_complete_intersection(B):
                return False, f"violation for {cfg.A.to_rows()} with {[c.vector for c in picked]}"
    return True, f"{count} configurations, {bases} circuit bases"


def check_curves(count: int = 100, seed: int = 2) -> Outcome:
    rng = random.Random(seed)
    for _ in range(count):
        a = random_curve(rng, n_max=10, a_max=50)
        cfg = monomial_curve(a)
        B = curve_ci_basis(a)
        if not cfg.A.matmul(B).is_zero() or rank(B) != len(a) - 2 or not is_complete_intersection(B):
            return False, f"curve {a}"
    return True, f"{count} curves"


def check_cyclic_nonexistence() -> Outcome:
    cfg = cyclic_by_codimension(CYCLIC_R, CYCLIC_N)
    rep = search_ci_circuit_basis(cfg, mode="exhaustive")
    c = rep.counters
    ok = (c.circuits == 91 and rep.verdict == Verdict.EXHAUSTED_NONE
          and rep.total_combinations == 121485 and c.tested + c.pruned_covered == rep.total_combinations)
    return ok, (f"{c.circuits} circuits, {rep.verdict.value}, tested={c.tested}, "
                f"pruned_covered={c.pruned_covered}, {rep.elapsed_ms:.0f} ms")


def check_cyclic_structure() -> Outcome:
    cfg = cyclic_by_codimension(CYCLIC_R, CYCLIC_N)
    circuits = enumerate_circuits(cfg)
    for c in circuits:
        if c.vector.count(0) != CYCLIC_R - 1 or not _alternates(c.vector):
            return False, f"circuit {c.vector}"
    full = [pos | neg for pos, neg in (c.masks for c in circuits)]
    for a, b, c in combinations(full, 3):
        both = a & b & c
        if not both & (both >> 1):
            return False, "a triple without two consecutive full rows"
    return True, f"{len(circuits)} circuits, every triple has two consecutive full rows"


def check_bounds() -> Outcome:
    at22, at21 = bound_eval(2, 22), bound_eval(2, 21)
    ok = (bound_threshold(2) == 22 and (at22.lhs, at22.rhs) == (7315, 7220) and at22.holds
          and (at21.lhs, at21.rhs) == (5985, 6156) and not at21.holds and codim3_bound(3) == 14)
    return ok, f"threshold(2)={bound_threshold(2)}, n=22: {at22.lhs}>{at22.rhs}, n=21: {at21.lhs}<={at21.rhs}"


def check_decagon() -> Outcome:
    cfg = convex_polygon(10)
    quads = decagon_quadruples()
    columns = [quadruple_circuit(cfg, *q).vector for q in quads]
    B = IntMatrix.from_columns(columns, rows=cfg.n)
    ours = sorted(sign_pattern(B).column(j) for j in range(B.cols))
    expected = decagon_sign_matrix()
    theirs = sorted(expected.column(j) for j in range(expected.r))
    rk = rank(B)
    rep = search_ci_circuit_basis(cfg, mode="first-found", seed_supports=quads)
    ok = ours == theirs and rk == 7 and is_complete_intersection(B) and rep.verdict == Verdict.FOUND
    return ok, f"rank {rk}, patterns match: {ours == theirs}, seeded search: {rep.verdict.value}"


def check_oracle(count: int = 1000, seed: int = 3) -> Outcome:
    rng = random.Random(seed)
    for _ in range(count):
        S = random_sign_matrix(rng, rng.randint(1, 8), rng.randint(1, 5))
        if (find_violation(S) is None) != (brute_force_violation(S) is None):
            return False, f"disagreement on\n{S}"
    return True, f"{count} sign matrices agree"


def _random_kernel_vector(rng: random.Random, K: List[Tuple[int, ...]], n: int) -> Tuple[int, ...]:
    while True:
        coeffs = [rng.randint(-3, 3) for _ in K]
        v = tuple(sum(c * col[i] for c, col in zip(coeffs, K)) for i in range(n))
        if any(v):
            return v


def check_conformal(count: int = 200, seed: int = 4) -> Outcome:
    rng = random.Random(seed)
    for _ in range(count):
        cfg = random_configuration(rng, n_max=7, r_choices=(1, 2, 3), entry_max=4)
        circuits = enumerate_circuits(cfg)
        K = kernel_lattice(cfg).columns()
        v = _random_kernel_vector(rng, K, cfg.n)
        terms = conformal_decomposition(cfg, v, circuits)
        if not all(t.q > 0 and is_conformal(t.vector, v) for t in terms):
            return False, f"non-conformal term for {v}"
        c = rng.choice(circuits)
        if [(t.q, t.vector) for t in conformal_decomposition(cfg, c.vector, circuits)] != [(1, c.vector)]:
            return False, f"circuit {c.vector} does not decompose as itself"
        B = IntMatrix.from_columns(K, rows=cfg.n)
        C = circuitize_basis(cfg, B, circuits)
        if rank(C) != cfg.r or (is_complete_intersection(B) and not is_complete_intersection(C)):
            return False, f"circuitize broke rank or CI for {cfg.A.to_rows()}"
    return True, f"{count} vectors"


def _exploratory(n: int) -> Callable[[], Outcome]:
    def run() -> Outcome:
        cfg = cyclic_by_codimension(CYCLIC_R, n)
        rep = search_ci_circuit_basis(cfg, mode="first-found", budget=EXPLORATORY_BUDGET)
        return rep.verdict == Verdict.FOUND, f"{rep.verdict.value} after {rep.counters.tested} tested"
    return run


def all_checks() -> List[Check]:
    checks = [
        Check("signs", "decagon sign matrix is CI", check_decagon_signs),
        Check("corollary", "r <= 2 circuit bases are CI", check_corollary),
        Check("curves", "monomial curve bases are CI", check_curves),
        Check("cyclic", f"r={CYCLIC_R} n={CYCLIC_N} cyclic has no CI basis", check_cyclic_nonexistence),
        Check("structure", "cyclic circuits alternate with two zeros", check_cyclic_structure),
        Check("bounds", "counting bounds", check_bounds),
        Check("decagon", "decagon quadruple circuits reproduce it", check_decagon),
        Check("oracle", "fast criterion matches brute force", check_oracle),
        Check("conformal", "conformal decomposition and circuitization", check_conformal),
    ]
    checks += [Check("exploratory", f"cyclic r={CYCLIC_R} n={n}", _exploratory(n), blocking=False)
               for n in EXPLORATORY_N]
    return checks


def run_checks(only: Iterable[str] | None = None, progress: bool = False) -> List[CheckResult]:
    selected = [c for c in all_checks() if not only or c.group in set(only)]
    results = []
    for check in tqdm(selected, desc="verify-paper", disable=not progress):
        started = time.perf_counter()
        try:
            passed, detail = check.run()
        except ToricCIError as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        elapsed = round((time.perf_counter() - started) * 1000, 3)
        level = logging.INFO if passed or not check.blocking else logging.ERROR
        logger.log(level, f"[{check.group}] {check.name}: {'ok' if passed else 'FAIL'} ({detail})")
        results.append(CheckResult(group=check.group, name=check.name, passed=passed,
                                   blocking=check.blocking, detail=detail, elapsed_ms=elapsed))
    return results


def results_table(results: List[CheckResult]) -> pd.DataFrame:
    return pd.DataFrame([r.model_dump() for r in results], columns=CHECK_COLUMNS)


def all_passed(results: List[CheckResult]) -> bool:
    return all(r.passed for r in results if r.blocking)
