"""
Hilbert-Samuel tables and coefficient extraction
H(n) = λ(R/I_n), its finite differences, and the exact integers e_0..e_d of the
Hilbert polynomial P(n) = Σ (-1)^i e_i binom(n+d-1-i, d-i)
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix, factorial, ff

from app.config.settings import settings
from app.schemas.report import CoefficientsModel, HilbertTableModel
from app.services.filtration import Filtration
from app.services.ideal_ops import INFINITE
from app.services.local_ring import PresentedRing, is_regular_sequence, local_colength
from app.services.polynomial import Polynomial
from app.utils.exceptions import InvalidField, NoStabilization, NotMPrimary, RangeExceeded

logger = logging.getLogger(__name__)


def binomial(x: int, k: int) -> int:
    """Generalized binomial x(x-1)...(x-k+1)/k!, valid for every integer x"""
    if k < 0:
        return 0
    return int(ff(x, k) / factorial(k))


@dataclass
class HilbertTable:
    """H(0..N) with H(n) = 0 for n <= 0"""

    filtration: Filtration
    N: int
    values: List[int]
    stab: Optional[int] = None

    @property
    def d(self) -> int:
        return self.filtration.dim

    def H(self, n: int) -> int:
        if n <= 0:
            return 0
        if n > self.N:
            raise RangeExceeded(n, self.N)
        return self.values[n]

    def difference(self, k: int, n: int) -> int:
        """Δ^k H(n), reaching into n <= 0 where H vanishes"""
        return sum((-1) ** j * binomial(k, j) * self.H(n - j) for j in range(k + 1))

    def to_model(self) -> HilbertTableModel:
        rows = hilbert_series_table(self).rows
        return HilbertTableModel(N=self.N, values=list(self.values), differences=rows, stabilization=self.stab)


@dataclass(frozen=True)
class HilbertCoefficients:
    d: int
    e: Tuple[int, ...]
    postulation: int = 1

    @property
    def e0(self) -> int:
        return self.e[0]

    @property
    def e1(self) -> int:
        return self.e[1] if len(self.e) > 1 else 0

    def to_model(self) -> CoefficientsModel:
        return CoefficientsModel(d=self.d, e=list(self.e), postulation_index=self.postulation)


def _row_length(F: Filtration, n: int) -> int:
    value = local_colength(F.term(n))
    if value == INFINITE:
        raise NotMPrimary(f"λ(R/I_{n}) is infinite for {F}")
    return int(value)


def hilbert_table(F: Filtration, N: int) -> HilbertTable:
    """
    Exact lengths λ(R/I_n) for 0 <= n <= N
    Time Complexity: N Groebner bases of I_n + Q, which dominate the row count
    Space Complexity: O(N) terms kept in the filtration memo
    """
    d = F.dim
    if N < d + 4:
        raise InvalidField("max_n", f"the table bound must be at least d + 4 = {d + 4}")
    F.require_m_primary()

    # terms are built sequentially (each adic power reuses the previous one)
    for n in range(1, N + 1):
        F.term(n)

    workers = settings.workers
    rows = range(1, N + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            lengths = list(pool.map(lambda n: _row_length(F, n), rows))
    else:
        lengths = [_row_length(F, n) for n in rows]

    logger.debug(f"[HILBERT] {F}: H(1..{N}) = {lengths}")
    return HilbertTable(F, N, [0] + lengths)


def hilbert_poly_eval(C: HilbertCoefficients, n: int) -> int:
    """P(n) at any integer n, including nonpositive ones"""
    d = C.d
    return sum((-1) ** i * e * binomial(n + d - 1 - i, d - i) for i, e in enumerate(C.e))


def fit_coefficients(T: HilbertTable) -> HilbertCoefficients:
    """
    Solve for e_0..e_d on the last d+1 rows; the preceding guard window must agree
    """
    d = T.d
    guard = settings.stabilization_window
    N = T.N
    points = list(range(N - d, N + 1))
    if points[0] - guard < 1:
        raise NoStabilization(f"table of length {N} is too short to fit a degree-{d} polynomial")

    system = Matrix([[(-1) ** i * binomial(n + d - 1 - i, d - i) for i in range(d + 1)] for n in points])
    rhs = Matrix([T.H(n) for n in points])
    solution = system.LUsolve(rhs)
    if not all(value.is_integer for value in solution):
        raise NoStabilization(
            f"fitted coefficients are not integers: {list(solution)}",
            details={"N": N, "values": T.values},
        )
    candidate = HilbertCoefficients(d, tuple(int(value) for value in solution))

    for n in range(points[0] - guard, points[0]):
        if hilbert_poly_eval(candidate, n) != T.H(n):
            raise NoStabilization(
                f"Hilbert function not polynomial on [{points[0] - guard}, {N}]",
                details={"N": N, "values": T.values},
            )
    if candidate.e0 < 1:
        raise NoStabilization(f"fitted multiplicity {candidate.e0} < 1", details={"N": N})

    n_star = points[0] - guard
    while n_star > 1 and hilbert_poly_eval(candidate, n_star - 1) == T.H(n_star - 1):
        n_star -= 1
    T.stab = n_star
    return HilbertCoefficients(d, candidate.e, n_star)


def hilbert_data(F: Filtration, N: Optional[int] = None) -> Tuple[HilbertTable, HilbertCoefficients]:
    """
    Table and coefficients, doubling N once when the first table has not stabilized
    """
    N = max(N or settings.max_n, F.dim + 4)
    table = hilbert_table(F, N)
    try:
        return table, fit_coefficients(table)
    except NoStabilization:
        larger = N * settings.max_n_retry_factor
        logger.warning(f"[HILBERT] no stabilization by n = {N}; retrying with N = {larger}")
        table = hilbert_table(F, larger)
        return table, fit_coefficients(table)


def delta_pd_minus_h(T: HilbertTable, C: HilbertCoefficients, n: int) -> int:
    """Δ^d [P - H](n) with H(j) = 0 and P untruncated for j <= 0"""
    if n < 1 or n > T.N:
        raise RangeExceeded(n, T.N)
    d = C.d
    return sum(
        (-1) ** j * binomial(d, j) * (hilbert_poly_eval(C, n - j) - T.H(n - j))
        for j in range(d + 1)
    )


@dataclass
class DifferenceRows:
    """Δ^k H(n) for k = 0..d and 1 <= n <= N"""
    rows: List[List[int]] = field(default_factory=list)


def hilbert_series_table(T: HilbertTable) -> DifferenceRows:
    return DifferenceRows([[T.difference(k, n) for n in range(1, T.N + 1)] for k in range(T.d + 1)])


def e0_via_colength(ring: PresentedRing, gens: Sequence[Polynomial]) -> Optional[int]:
    """e_0(J) = λ(R/J) when J is generated by a regular sequence; None without that evidence"""
    if not is_regular_sequence(ring, gens):
        return None
    value = local_colength(ring.ideal(gens))
    return None if value == INFINITE else int(value)


__all__ = [
    "DifferenceRows",
    "HilbertCoefficients",
    "HilbertTable",
    "binomial",
    "delta_pd_minus_h",
    "e0_via_colength",
    "fit_coefficients",
    "hilbert_data",
    "hilbert_poly_eval",
    "hilbert_series_table",
    "hilbert_table",
]
