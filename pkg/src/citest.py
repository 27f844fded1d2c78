"""Mixed-submatrix criterion for complete intersection basis ideals.

J_B is a complete intersection iff every mixed n' x r' submatrix of B has
n' >= r'. Only signs matter, so everything here works on a SignMatrix and on
per-column (positive rows, negative rows) bitmasks, bit i standing for row i.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import List, Sequence, Tuple

from . import config
from .errors import DimensionError, InvariantViolation, SizeCapExceeded
from .exactmat import IntMatrix
from .utils.text import sign_token

logger = logging.getLogger(__name__)

Masks = Tuple[int, int]


@dataclass(frozen=True)
class SignMatrix:
    n: int
    r: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.n or any(len(row) != self.r for row in self.entries):
            raise DimensionError(f"sign rows do not form a {self.n}x{self.r} matrix")
        if any(x not in (-1, 0, 1) for row in self.entries for x in row):
            raise DimensionError("sign matrix entries must be -1, 0 or +1")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], r: int | None = None) -> "SignMatrix":
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if r is None:
            r = len(rows[0]) if rows else 0
        return cls(len(rows), r, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], n: int) -> "SignMatrix":
        return cls.from_rows([[_sign(c[i]) for c in columns] for i in range(n)], r=len(columns))

    @cached_property
    def masks(self) -> Tuple[Masks, ...]:
        out = []
        for j in range(self.r):
            pos = sum(1 << i for i in range(self.n) if self.entries[i][j] > 0)
            neg = sum(1 << i for i in range(self.n) if self.entries[i][j] < 0)
            out.append((pos, neg))
        return tuple(out)

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SignMatrix":
        return SignMatrix.from_rows([[self.entries[i][j] for j in cols] for i in rows], r=len(cols))

    def negate_columns(self, cols: Sequence[int]) -> "SignMatrix":
        flip = set(cols)
        return SignMatrix.from_rows(
            [[-x if j in flip else x for j, x in enumerate(row)] for row in self.entries], r=self.r)

    def __str__(self) -> str:
        return "\n".join(" ".join(sign_token(x) for x in row) for row in self.entries)


@dataclass(frozen=True)
class MixedWitness:
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.cols)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _low_bit(x: int) -> int:
    return x & -x


def _bits(x: int) -> Tuple[int, ...]:
    out = []
    while x:
        low = _low_bit(x)
        out.append(low.bit_length() - 1)
        x ^= low
    return tuple(out)


def sign_pattern(B: IntMatrix) -> SignMatrix:
    return SignMatrix.from_rows([[_sign(x) for x in B.row(i)] for i in range(B.rows)], r=B.cols)


def is_mixed(S: SignMatrix) -> bool:
    return all(pos and neg for pos, neg in S.masks)


def _pair_mixing_three(a: Masks, b: Masks, c: Masks) -> int:
    """Two rows with opposite, fully nonzero signs on three columns, as a row mask (0 if none)."""
    (p1, n1), (p2, n2), (p3, n3) = a, b, c
    for flips in range(4):
        top = p1 & (n2 if flips & 1 else p2) & (n3 if flips & 2 else p3)
        if not top:
            continue
        bottom = n1 & (p2 if flips & 1 else n2) & (p3 if flips & 2 else n3)
        if bottom:
            return _low_bit(top) | _low_bit(bottom)
    return 0


def _hitting_rows(sets: List[int], limit: int, chosen: int = 0) -> int | None:
    """Row mask of at most `limit` extra rows meeting every set, by branch and bound."""
    unhit = [s for s in sets if not s & chosen]
    if not unhit:
        return chosen
    if limit == 0:
        return None
    # pairwise disjoint unhit sets each need their own row
    disjoint, used = 0, 0
    for s in sorted(unhit, key=int.bit_count):
        if not s & used:
            disjoint += 1
            used |= s
    if disjoint > limit:
        return None
    target = min(unhit, key=int.bit_count)
    for row in _bits(target):
        found = _hitting_rows(unhit, limit - 1, chosen | (1 << row))
        if found is not None:
            return found
    return None


def _violating_rows(masks: Sequence[Masks], cols: Sequence[int]) -> int | None:
    if len(cols) < 3:
        return None
    if any(not (masks[j][0] and masks[j][1]) for j in cols):
        return None
    if len(cols) == 3:
        return _pair_mixing_three(masks[cols[0]], masks[cols[1]], masks[cols[2]]) or None
    sets = [m for j in cols for m in masks[j]]
    return _hitting_rows(sets, len(cols) - 1)


def _checked_witness(S: SignMatrix, rows: Sequence[int], cols: Sequence[int]) -> MixedWitness:
    w = MixedWitness(tuple(sorted(rows)), tuple(sorted(cols)))
    if not (len(w.rows) < len(w.cols) and is_mixed(S.submatrix(w.rows, w.cols))):
        raise InvariantViolation(f"bad witness rows={w.rows} cols={w.cols}")
    return w


def find_violation(S: SignMatrix) -> MixedWitness | None:
    """A mixed submatrix with fewer rows than columns, smallest column set first."""
    masks = S.masks
    mixable = [j for j, (pos, neg) in enumerate(masks) if pos and neg]
    for k in range(3, len(mixable) + 1):
        for cols in combinations(mixable, k):
            rows = _violating_rows(masks, cols)
            if rows is not None:
                return _checked_witness(S, _bits(rows), cols)
    return None


def first_extension_violation(prefix: Sequence[Masks], new: Masks) -> Tuple[int, Tuple[int, ...]] | None:
    """Violation that uses column `new` on top of a violation-free prefix.

    Returns (row mask, prefix positions) or None. Column subsets are tried
    smallest first; the new column sits at position len(prefix).
    """
    if not (new[0] and new[1]):
        return None
    masks = list(prefix) + [new]
    last = len(prefix)
    mixable = [j for j, (pos, neg) in enumerate(prefix) if pos and neg]
    for k in range(2, len(mixable) + 1):
        for chosen in combinations(mixable, k):
            rows = _violating_rows(masks, chosen + (last,))
            if rows is not None:
                return rows, chosen
    return None


def is_complete_intersection(B: IntMatrix | SignMatrix) -> bool:
    S = sign_pattern(B) if isinstance(B, IntMatrix) else B
    return find_violation(S) is None


def brute_force_violation(S: SignMatrix, max_rows: int = config.BRUTE_FORCE_MAX_ROWS) -> MixedWitness | None:
    """Reference scan over every row subset.

    For a row set R the columns mixed inside R are the largest column set that
    could pair with it, so R gives a violation iff more than |R| columns mix.
    """
    if S.n > max_rows:
        raise SizeCapExceeded(f"brute force limited to {max_rows} rows, got {S.n}")
    masks = S.masks
    for size in range(2, S.n + 1):
        for rows in combinations(range(S.n), size):
            rmask = sum(1 << i for i in rows)
            mixed = [j for j, (pos, neg) in enumerate(masks) if pos & rmask and neg & rmask]
            if len(mixed) > size:
                return _checked_witness(S, rows, mixed)
    return None


def find_two_full_rows(S: SignMatrix) -> Tuple[int, int] | None:
    if S.r == 0 or S.n < 2:
        return None
    full = (1 << S.n) - 1
    for pos, neg in S.masks:
        full &= pos | neg
    pair = full & (full >> 1)
    if not pair:
        return None
    j = _low_bit(pair).bit_length() - 1
    return j, j + 1


def associated_prime(j: int, k: int) -> str:
    return f"<x{j + 1}, x{k + 1}>"
