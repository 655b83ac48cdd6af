"""
Admissible filtrations of an m-primary ideal
Adic powers I^n and the Newton-polygon integral closures of I^n (monomial, two variables)
"""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from app.services.ideal_ops import INFINITE, Ideal
from app.services.local_ring import (
    PresentedRing,
    RingIdeal,
    is_m_primary,
    is_regular_element,
    local_colength,
    locally_equal,
)
from app.services.polynomial import Polynomial
from app.utils.exceptions import ClosureUnsupported, NotAdmissibleUpTo, NotMPrimary, NotNested, RegularityFails

logger = logging.getLogger(__name__)

ADIC = "adic"
NEWTON_CLOSURE = "newton-closure"

# p*a + q*b >= c
Edge = Tuple[int, int, int]


# ---------------------------------------------------------------------------
# Newton polygon
# ---------------------------------------------------------------------------

def _cross(o: Tuple[int, int], a: Tuple[int, int], b: Tuple[int, int]) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_edges(exponents: List[Tuple[int, int]]) -> List[Edge]:
    """
    Inequalities p*a + q*b >= c cutting out the Newton polygon of a monomial
    ideal with pure powers in both variables (lower convex hull edges)
    """
    points = sorted(set(exponents))
    hull: List[Tuple[int, int]] = []
    for point in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], point) <= 0:
            hull.pop()
        hull.append(point)
    # keep the decreasing chain from (0, b) to (a, 0)
    start = min(range(len(hull)), key=lambda i: (hull[i][0], hull[i][1]))
    end = min(range(len(hull)), key=lambda i: (hull[i][1], hull[i][0]))
    chain = hull[start:end + 1]
    edges: List[Edge] = []
    for (a1, b1), (a2, b2) in zip(chain, chain[1:]):
        p, q = b1 - b2, a2 - a1
        c = p * a1 + q * b1
        g = math.gcd(math.gcd(p, q), c)
        edges.append((p // g, q // g, c // g))
    return edges


def in_newton_polygon(point: Tuple[int, int], edges: List[Edge], n: int) -> bool:
    a, b = point
    return all(p * a + q * b >= n * c for p, q, c in edges)


def _closure_exponents(I: Ideal) -> List[Tuple[int, int]]:
    if I.ring.nvars != 2:
        raise ClosureUnsupported("Newton-polygon closure needs exactly 2 variables")
    if not I.is_monomial():
        raise ClosureUnsupported(f"{I} is not a monomial ideal")
    exps = [tuple(e) for e in I.monomial_generators()]
    has_x = any(b == 0 and a > 0 for a, b in exps)
    has_y = any(a == 0 and b > 0 for a, b in exps)
    if not (has_x and has_y):
        raise ClosureUnsupported(f"{I} is not m-primary (needs pure powers of both variables)")
    return exps


def newton_closure(I: Ideal, n: int) -> Ideal:
    """
    Integral closure of I^n for a monomial m-primary ideal of k[x, y]:
    the minimal lattice points of n * NP(I)
    Time Complexity: O(n * a_max * e) for e Newton edges
    """
    exps = _closure_exponents(I)
    ring = I.ring
    if n <= 0:
        return Ideal.unit(ring)
    edges = newton_edges(exps)
    a_max = max(a for a, b in exps if b == 0)
    b_max = max(b for a, b in exps if a == 0)

    gens: List[Tuple[int, int]] = []
    previous: Optional[int] = None
    for a in range(0, n * a_max + 1):
        # least b with (a, b) inside the scaled polygon
        b = 0
        for p, q, c in edges:
            b = max(b, -((p * a - n * c) // q))
        b = min(b, n * b_max)
        if previous is None or b < previous:
            gens.append((a, b))
            previous = b
        if b == 0:
            break
    return Ideal.from_monomials(ring, gens)


# ---------------------------------------------------------------------------
# Filtration
# ---------------------------------------------------------------------------

class Filtration:
    """
    n -> I_n, memoized; I_n is the unit ideal for n <= 0
    """

    def __init__(self, ring: PresentedRing, seed: RingIdeal, kind: str = ADIC):
        if kind not in (ADIC, NEWTON_CLOSURE):
            raise ValueError(f"unknown filtration kind: {kind}")
        if kind == NEWTON_CLOSURE:
            if not ring.Q.is_zero():
                raise ClosureUnsupported("newton-closure requires an empty quotient")
            _closure_exponents(seed.lift)
        self.ring = ring
        self.seed = seed
        self.kind = kind
        self._memo: Dict[int, RingIdeal] = {}
        self._lock = threading.RLock()

    @classmethod
    def adic(cls, seed: RingIdeal) -> "Filtration":
        return cls(seed.ring, seed, ADIC)

    @classmethod
    def closure(cls, seed: RingIdeal) -> "Filtration":
        return cls(seed.ring, seed, NEWTON_CLOSURE)

    @property
    def dim(self) -> int:
        return self.ring.dim

    def require_m_primary(self) -> None:
        if is_m_primary(self.seed):
            return
        # m-primary after localizing even though other components exist
        if self.seed.is_unit() or local_colength(self.seed) == INFINITE:
            raise NotMPrimary(f"{self.seed} is not m-primary in {self.ring}")

    def term(self, n: int) -> RingIdeal:
        if n <= 0:
            return self.ring.unit()
        cached = self._memo.get(n)
        if cached is not None:
            return cached
        with self._lock:
            if n not in self._memo:
                self._memo[n] = self._compute(n)
            return self._memo[n]

    def _compute(self, n: int) -> RingIdeal:
        if self.kind == NEWTON_CLOSURE:
            return RingIdeal.from_lift(self.ring, newton_closure(self.seed.lift, n))
        if n == 1:
            return self.seed
        # I^n = I^(n-1) * I
        return self.term(n - 1) * self.seed

    def describe(self) -> str:
        if self.kind == NEWTON_CLOSURE:
            return f"integral closures of powers of {self.seed}"
        return f"{self.seed}-adic"

    def __str__(self) -> str:
        return self.describe()


def filtration_term(F: Filtration, n: int) -> RingIdeal:
    return F.term(n)


def admissibility_check(F: Filtration, N: int) -> int:
    """
    Least k with I^n ⊆ I_n ⊆ I^(n-k) for 1 <= n <= N (range evidence only)
    """
    if N < 2:
        raise ValueError("admissibility_check needs N >= 2")
    seed = F.seed
    powers = {0: F.ring.unit()}
    for m in range(1, N + 1):
        powers[m] = powers[m - 1] * seed

    k = 0
    for n in range(1, N + 1):
        term = F.term(n)
        if not term.contains_ideal(powers[n]):
            raise NotAdmissibleUpTo(n)
        m = n
        while m > 0 and not powers[m].contains_ideal(term):
            m -= 1
        k = max(k, n - m)
    logger.debug(f"[FILTRATION] {F} admissible with k = {k} for n <= {N}")
    return k


@dataclass(frozen=True)
class RegularityCheck:
    element: str
    checked_up_to: int
    element_regular: bool
    failed_at: Optional[int] = None
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.element_regular and self.failed_at is None

    def raise_for_failure(self) -> None:
        if self.failed_at is not None:
            raise RegularityFails(self.failed_at, self.witness or "")
        if not self.element_regular:
            raise RegularityFails(0, self.element)


def graded_regularity_check(F: Filtration, x: Polynomial, N: int) -> RegularityCheck:
    """
    (I_n : x) = I_(n-1) for 2 <= n <= N and x regular on R; finite-range
    evidence that the initial form of x is a nonzerodivisor on the associated graded ring
    """
    if not F.term(1).contains(x):
        raise NotNested(f"{x} is not in I_1 = {F.term(1)}")
    regular = is_regular_element(F.ring, x)
    for n in range(2, N + 1):
        colon = F.term(n).colon(x)
        previous = F.term(n - 1)
        if not locally_equal(colon, previous):
            witness = next((g for g in colon.generators() if not previous.contains(g)), None)
            logger.info(f"[FILTRATION] (I_{n} : {x}) != I_{n - 1}")
            return RegularityCheck(str(x), N, regular, n, str(witness) if witness is not None else None)
    return RegularityCheck(str(x), N, regular)


__all__ = [
    "ADIC",
    "NEWTON_CLOSURE",
    "Filtration",
    "RegularityCheck",
    "admissibility_check",
    "filtration_term",
    "graded_regularity_check",
    "in_newton_polygon",
    "newton_closure",
    "newton_edges",
]
