"""Configuration families, the planar Example data, and the counting bounds."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from itertools import combinations
from math import comb, gcd
from typing import List, Sequence, Tuple

from . import config
from .circuits import Circuit, circuit_from_support
from .citest import SignMatrix
from .errors import DomainError, InvalidConfiguration, InvariantViolation
from .exactmat import IntMatrix, rank
from .lattice import Configuration, validate
from .utils.geo import in_convex_position
from .utils.io import parse_sign_rows

logger = logging.getLogger(__name__)

# Seven quadruple relations on a convex decagon whose sign matrix passes the
# criterion. Rows are points 1..10, columns the relations.
DECAGON_SIGN_TEXT = """
+ + + 0 + 0 0
- - 0 0 0 0 0
+ 0 0 0 - + 0
- + - 0 0 0 0
0 0 0 + 0 - 0
0 0 0 - + + +
0 0 0 + 0 0 -
0 0 + 0 - 0 +
0 - - 0 0 0 0
0 0 0 - 0 - -
"""

DECAGON_QUADRUPLES = ((1, 2, 3, 4), (1, 2, 4, 9), (1, 4, 8, 9), (5, 6, 7, 10),
                    (1, 3, 6, 8), (3, 5, 6, 10), (6, 7, 8, 10))


@dataclass(frozen=True)
class BoundEvaluation:
    d: int
    n: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs > self.rhs


def _normalized_curve(a: Sequence[int]) -> List[int]:
    a = [int(x) for x in a]
    if len(a) < 3:
        raise DomainError(f"a monomial curve needs n >= 3 exponents, got {len(a)}")
    if any(x > y for x, y in zip(a, a[1:])):
        raise DomainError(f"exponents must be non-decreasing: {a}")
    shifted = [x - a[0] for x in a]
    g = gcd(*shifted)
    if g != 1:
        raise DomainError(f"exponents are not coprime after shifting to 0 (gcd {g})")
    return shifted


def monomial_curve(a: Sequence[int]) -> Configuration:
    a = _normalized_curve(a)
    A = IntMatrix.from_rows([[1] * len(a), a])
    return validate(A, allow_repeats=True)


def curve_ci_basis(a: Sequence[int]) -> IntMatrix:
    """n x (n-2) basis whose column j has a_{j+2}-a_{j+1}, -a_{j+2}, a_{j+1} in rows 1, j+1, j+2."""
    a = _normalized_curve(a)
    n = len(a)
    columns = []
    for j in range(n - 2):
        col = [0] * n
        col[0] += a[j + 2] - a[j + 1]
        col[j + 1] += -a[j + 2]
        col[j + 2] += a[j + 1]
        columns.append(col)
    B = IntMatrix.from_columns(columns, rows=n)
    A = IntMatrix.from_rows([[1] * n, a])
    if not A.matmul(B).is_zero():
        raise InvariantViolation(f"curve basis for {a} is not in the kernel")
    if rank(B) != n - 2:
        raise DomainError(f"curve basis for {a} has rank {rank(B)} < {n - 2}")
    return B


def cyclic_polytope(m: int, t: Sequence[int] | None = None, n: int | None = None) -> Configuration:
    """Rows 1, t, t^2, ..., t^(m-1); t defaults to (1, ..., n)."""
    if t is None:
        if n is None:
            raise DomainError("cyclic polytope needs t or n")
        t = range(1, n + 1)
    t = [int(x) for x in t]
    if not m >= 2 or len(t) <= m:
        raise DomainError(f"cyclic polytope needs n > m >= 2, got m={m}, n={len(t)}")
    if t[0] <= 0:
        raise DomainError(f"parameters must be positive, got t1={t[0]}")
    if any(x >= y for x, y in zip(t, t[1:])):
        raise DomainError(f"parameters must be strictly increasing: {t}")
    A = IntMatrix.from_rows([[x ** k for x in t] for k in range(m)])
    return validate(A)


def cyclic_by_codimension(r: int, n: int) -> Configuration:
    return cyclic_polytope(n - r, n=n)


def convex_polygon(n: int) -> Configuration:
    """Points (i, i^2), i = 0..n-1, homogenized; strictly convex and ordered."""
    if n < 3:
        raise DomainError(f"a polygon needs n >= 3 vertices, got {n}")
    points = [(i, i * i) for i in range(n)]
    if not in_convex_position(points):
        raise InvariantViolation("parabola points are not in convex position")
    A = IntMatrix.from_rows([[1] * n, [x for x, _ in points], [y for _, y in points]])
    return validate(A)


def quadruple_circuit(cfg: Configuration, i: int, j: int, k: int, l: int) -> Circuit:
    idx = (i, j, k, l)
    if not (0 <= i < j < k < l < cfg.n):
        raise DomainError(f"indices must satisfy 0 <= i < j < k < l < {cfg.n}, got {idx}")
    c = circuit_from_support(cfg, idx)
    if c is None:
        raise InvariantViolation(f"{idx} is not a circuit support")
    signs = tuple((c.vector[x] > 0) - (c.vector[x] < 0) for x in idx)
    if signs != (1, -1, 1, -1):
        raise InvariantViolation(f"quadruple {idx} has sign pattern {signs}, expected +,-,+,-")
    return c


def decagon_sign_matrix() -> SignMatrix:
    return SignMatrix.from_rows(parse_sign_rows(DECAGON_SIGN_TEXT))


def decagon_quadruples() -> List[Tuple[int, ...]]:
    return [tuple(x - 1 for x in q) for q in DECAGON_QUADRUPLES]


def bound_eval(d: int, n: int) -> BoundEvaluation:
    if d < 1 or n < d + 2:
        raise DomainError(f"bound needs d >= 1 and n >= d+2, got d={d}, n={n}")
    return BoundEvaluation(d, n, comb(n, d + 2), 2 * (n - d - 1) * comb(n - 2, d))


def bound_threshold(d: int) -> int:
    """Smallest n with C(n, d+2) > 2(n-d-1)C(n-2, d) for every n' >= n.

    The inequality is n(n-1) > 2(d+1)(d+2)(n-d-1), a convex quadratic in n,
    so once it holds past the vertex it holds for good. The scan runs past
    the vertex and then BOUND_SCAN_HEADROOM more values as a check.
    """
    if d < 1:
        raise DomainError(f"bound needs d >= 1, got {d}")
    k = 2 * (d + 1) * (d + 2)
    last_fail = None
    n = d + 2
    extra = 0
    while True:
        holds = bound_eval(d, n).holds
        if not holds:
            last_fail = n
            extra = 0
        past_vertex = 2 * n - 1 - k > 0
        if holds and past_vertex:
            extra += 1
            if extra > config.BOUND_SCAN_HEADROOM:
                break
        n += 1
    return d + 2 if last_fail is None else last_fail + 1


def codim3_bound(r: int) -> int:
    if r < 3:
        raise DomainError(f"the cyclic bound needs r >= 3, got {r}")
    return 2 * (r * r - r + 1)


def index_set_coverage(S: SignMatrix, m: int) -> Tuple[int, int]:
    """(covered, total) over index sets J with |J| = m+1.

    J is covered when some column has its positive or its negative support
    inside J. A complete intersection basis covers every J.
    """
    total = comb(S.n, m + 1)
    covered = 0
    for J in combinations(range(S.n), m + 1):
        jmask = sum(1 << i for i in J)
        if any((pos and not pos & ~jmask) or (neg and not neg & ~jmask) for pos, neg in S.masks):
            covered += 1
    return covered, total


def random_configuration(rng: random.Random, n_max: int = 8, r_choices: Sequence[int] = (1, 2),
                         entry_max: int = 6, max_tries: int = 1000) -> Configuration:
    """Random valid configuration with a row of ones and the rest in [0, entry_max]."""
    for _ in range(max_tries):
        r = rng.choice(list(r_choices))
        m = rng.randint(2, max(2, n_max - r))
        n = m + r
        if n > n_max:
            continue
        rows = [[1] * n] + [[rng.randint(0, entry_max) for _ in range(n)] for _ in range(m - 1)]
        try:
            return validate(IntMatrix.from_rows(rows))
        except InvalidConfiguration:
            continue
    raise DomainError(f"no valid configuration after {max_tries} tries")


def random_sign_matrix(rng: random.Random, n: int, r: int) -> SignMatrix:
    return SignMatrix.from_rows([[rng.choice((-1, 0, 1)) for _ in range(r)] for _ in range(n)], r=r)


def random_curve(rng: random.Random, n_max: int = 10, a_max: int = 50) -> List[int]:
    while True:
        n = rng.randint(3, n_max)
        a = [0] + sorted(rng.sample(range(1, a_max + 1), n - 1))
        if gcd(*a) == 1:
            return a
