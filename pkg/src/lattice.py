"""Configurations A, their kernel lattice L_A, and the index of a sublattice."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import InvalidBasis, InvalidConfiguration, NotHomogeneous
from .exactmat import IntMatrix, gcd_maximal_minors, in_row_span, kernel_basis, rank
from .utils.text import binomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Configuration:
    A: IntMatrix
    labels: Tuple[str, ...] | None = None
    spans_lattice: bool = True
    homogeneous: bool = True

    @property
    def m(self) -> int:
        return self.A.rows

    @property
    def n(self) -> int:
        return self.A.cols

    @property
    def d(self) -> int:
        return self.m - 1

    @property
    def r(self) -> int:
        return self.n - self.m

    def column(self, j: int) -> Tuple[int, ...]:
        return self.A.column(j)


@dataclass(frozen=True)
class LatticeBasis:
    B: IntMatrix
    index_g: int

    @property
    def r(self) -> int:
        return self.B.cols

    def columns(self) -> List[Tuple[int, ...]]:
        return self.B.columns()


def validate(A: IntMatrix, labels: Sequence[str] | None = None,
             check_homogeneity: bool = True, allow_repeats: bool = False) -> Configuration:
    if A.rows == 0 or A.cols == 0:
        raise InvalidConfiguration(f"configuration must be non-empty, got {A.rows}x{A.cols}")
    if labels is not None and len(labels) != A.cols:
        raise InvalidConfiguration(f"{len(labels)} labels for {A.cols} columns")
    rk = rank(A)
    if rk != A.rows:
        raise InvalidConfiguration(f"rank {rk} < {A.rows} rows")
    homogeneous = in_row_span(A, [1] * A.cols)
    if not homogeneous:
        if check_homogeneity:
            raise NotHomogeneous("(1,...,1) is not in the row span of A")
        logger.warning("(1,...,1) is not in the row span of A; homogeneity check relaxed")
    if not allow_repeats:
        seen = {}
        for j, col in enumerate(A.columns()):
            if col in seen:
                raise InvalidConfiguration(f"columns {seen[col] + 1} and {j + 1} are equal")
            seen[col] = j
    spans = gcd_maximal_minors(A.transpose()) == 1
    if not spans:
        logger.warning(f"columns of the {A.rows}x{A.cols} configuration do not span Z^{A.rows}")
    return Configuration(A, tuple(labels) if labels is not None else None, spans, homogeneous)


def check_basis(cfg: Configuration, B: IntMatrix) -> None:
    if B.rows != cfg.n:
        raise InvalidBasis(f"basis has {B.rows} rows, configuration has {cfg.n} columns")
    if B.cols != cfg.r:
        raise InvalidBasis(f"basis has {B.cols} columns, codimension is {cfg.r}")
    if not cfg.A.matmul(B).is_zero():
        bad = [j + 1 for j, c in enumerate(B.columns()) if any(cfg.A.matvec(c))]
        raise InvalidBasis(f"columns {bad} are not in the kernel of A")
    if rank(B) != cfg.r:
        raise InvalidBasis(f"basis columns are linearly dependent (rank {rank(B)} < {cfg.r})")
    for j, c in enumerate(B.columns()):
        if not (any(x > 0 for x in c) and any(x < 0 for x in c)):
            if cfg.homogeneous:
                raise InvalidBasis(f"column {j + 1} is not mixed")
            logger.warning(f"column {j + 1} is not mixed (A is not homogeneous)")


def kernel_lattice(cfg: Configuration) -> LatticeBasis:
    K = kernel_basis(cfg.A)
    check_basis(cfg, K)
    return LatticeBasis(K, 1)


def lattice_index(cfg: Configuration, B: IntMatrix) -> int:
    # The saturated kernel has minors with gcd 1, so the index is B's own gcd.
    check_basis(cfg, B)
    if B.cols == 0:
        return 1
    return gcd_maximal_minors(B)


def make_basis(cfg: Configuration, B: IntMatrix) -> LatticeBasis:
    return LatticeBasis(B, lattice_index(cfg, B))


def laurent_equal(cfg: Configuration, B: IntMatrix) -> bool:
    return lattice_index(cfg, B) == 1


def binomial_strings(B: IntMatrix | LatticeBasis) -> List[str]:
    if isinstance(B, LatticeBasis):
        B = B.B
    return [binomial(c) for c in B.columns()]
