"""
Presented local rings R = P/Q at the origin
Lengths, m-primariness, regular elements and the finite-length subquotient calculator
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

from app.config.settings import settings
from app.services.expr_parser import parse_to_polynomial
from app.services.ideal_ops import (
    INFINITE,
    Colength,
    Ideal,
    colength,
    element_colon,
    ideal_colon,
    ideal_intersect,
    ideal_power,
    krull_dimension,
)
from app.services.polynomial import GREVLEX, Polynomial, PolynomialRing
from app.utils.exceptions import NoStabilization, NotNested, ZeroDimensionalRing

logger = logging.getLogger(__name__)


class PresentedRing:
    """
    R = k[vars]/Q localized at m = (vars); every ideal of R is carried by its
    full preimage in k[vars]
    """

    def __init__(self, ambient: PolynomialRing, Q: Ideal, dim: int):
        self.ambient = ambient
        self.Q = Q
        self.dim = dim
        self._m_powers: Dict[int, Ideal] = {}
        self._lock = threading.Lock()

    @property
    def names(self):
        return self.ambient.names

    def element(self, text: str) -> Polynomial:
        return parse_to_polynomial(text, self.ambient)

    def ideal(self, gens: Iterable[Polynomial]) -> "RingIdeal":
        return RingIdeal.from_generators(self, list(gens))

    def ideal_from_strings(self, texts: Sequence[str]) -> "RingIdeal":
        return self.ideal(self.element(t) for t in texts)

    def unit(self) -> "RingIdeal":
        return RingIdeal(self, Ideal.unit(self.ambient), (self.ambient.one(),))

    def zero(self) -> "RingIdeal":
        return RingIdeal(self, self.Q, ())

    def maximal_ideal(self) -> "RingIdeal":
        return self.ideal(self.ambient.gens())

    def m_power(self, N: int) -> Ideal:
        """Q + m^N in the ambient ring"""
        if N not in self._m_powers:
            with self._lock:
                if N not in self._m_powers:
                    m = Ideal(self.ambient, self.ambient.gens())
                    self._m_powers[N] = Ideal(self.ambient, self.Q.gens + ideal_power(m, N).basis())
        return self._m_powers[N]

    def __str__(self) -> str:
        base = f"k[{', '.join(self.names)}]"
        return base if self.Q.is_zero() else f"{base}/{self.Q}"


def make_ring(variables: Sequence[str], quotient: Sequence = (), field_char: Optional[int] = None) -> PresentedRing:
    """
    Build R = k[vars]/Q; rejects rings of dimension 0
    """
    ambient = PolynomialRing(tuple(variables), field_char or settings.field_char, GREVLEX)
    gens = [g if isinstance(g, Polynomial) else parse_to_polynomial(g, ambient) for g in quotient]
    Q = Ideal(ambient, gens)
    if Q.is_unit():
        raise ZeroDimensionalRing("the defining ideal is the unit ideal")
    dim = krull_dimension(Q)
    if dim < 1:
        raise ZeroDimensionalRing(f"{Q} defines a ring of dimension {dim}")
    logger.debug(f"[RING] k[{', '.join(variables)}]/{Q} has dimension {dim}")
    return PresentedRing(ambient, Q, dim)


@dataclass(frozen=True, eq=False)
class RingIdeal:
    """Ideal of R carried as its lift (always containing Q)"""

    ring: PresentedRing
    lift: Ideal
    gens: tuple = field(default=())

    @classmethod
    def from_generators(cls, ring: PresentedRing, gens: List[Polynomial]) -> "RingIdeal":
        gens = tuple(g for g in gens if not g.is_zero())
        return cls(ring, Ideal(ring.ambient, ring.Q.gens + gens), gens)

    @classmethod
    def from_lift(cls, ring: PresentedRing, lift: Ideal) -> "RingIdeal":
        if not ring.Q.is_zero():
            lift = Ideal(ring.ambient, ring.Q.gens + lift.gens)
        return cls(ring, lift, tuple(lift.gens))

    def is_unit(self) -> bool:
        return self.lift.is_unit()

    def is_zero(self) -> bool:
        return self.lift == self.ring.Q

    def contains(self, f: Polynomial) -> bool:
        return self.lift.contains(f)

    def contains_ideal(self, other: "RingIdeal") -> bool:
        return self.lift.contains_ideal(other.lift)

    def generators(self) -> List[Polynomial]:
        """Generators modulo Q (reduced basis elements not already in Q)"""
        if self.is_unit():
            return [self.ring.ambient.one()]
        return [g for g in self.lift.basis() if not self.ring.Q.contains(g)]

    def __add__(self, other: "RingIdeal") -> "RingIdeal":
        return RingIdeal.from_generators(self.ring, list(self.generators()) + list(other.generators()))

    def __mul__(self, other) -> "RingIdeal":
        if isinstance(other, Polynomial):
            return RingIdeal.from_generators(self.ring, [other * g for g in self.generators()])
        left, right = self.generators(), other.generators()
        return RingIdeal.from_generators(self.ring, [f * g for f in left for g in right])

    __rmul__ = __mul__

    def power(self, n: int) -> "RingIdeal":
        result = self.ring.unit()
        for _ in range(n):
            result = result * self
        return result

    def intersect(self, other: "RingIdeal") -> "RingIdeal":
        return RingIdeal.from_lift(self.ring, ideal_intersect(self.lift, other.lift))

    def colon(self, other) -> "RingIdeal":
        if isinstance(other, Polynomial):
            return RingIdeal.from_lift(self.ring, element_colon(self.lift, other))
        return RingIdeal.from_lift(self.ring, ideal_colon(self.lift, other.lift))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingIdeal):
            return NotImplemented
        return self.lift == other.lift

    def __hash__(self) -> int:
        return hash(self.lift)

    def __str__(self) -> str:
        gens = self.generators()
        if not gens:
            return "(0)"
        return "(" + ", ".join(str(g) for g in gens) + ")"


# ---------------------------------------------------------------------------
# Lengths
# ---------------------------------------------------------------------------

def length_of_quotient(ring: PresentedRing, I: RingIdeal) -> Colength:
    """λ(R/I) = colength(Q + lift); a local length when I is m-primary"""
    return colength(I.lift)


def _supported_at_origin(I: RingIdeal, ell: Colength) -> bool:
    if ell == INFINITE:
        return False
    if ell == 0:
        return True
    basis = I.lift.basis()
    if all(g.is_homogeneous() for g in basis):
        return True
    ambient = I.ring.ambient
    return all(I.lift.contains(x ** int(ell)) for x in ambient.gens())


def is_m_primary(I: RingIdeal) -> bool:
    """
    λ(R/I) finite and x_i^λ ∈ I for every variable (no support away from the origin)
    """
    ell = length_of_quotient(I.ring, I)
    if ell == 0:
        return False  # the unit ideal is not m-primary
    return _supported_at_origin(I, ell)


def is_regular_element(ring: PresentedRing, x: Polynomial) -> bool:
    """(Q : x) = Q"""
    if x.is_zero():
        return False
    return element_colon(ring.Q, x) == ring.Q


def is_regular_sequence(ring: PresentedRing, elements: Sequence[Polynomial]) -> bool:
    """Each element regular modulo the previous ones"""
    current = ring.Q
    for x in elements:
        if current.is_unit() or element_colon(current, x) != current:
            return False
        current = Ideal(ring.ambient, current.gens + (x,))
    return True


def _truncated_difference(ring: PresentedRing, A: RingIdeal, B: RingIdeal) -> int:
    """
    λ(A/B) as λ(R/(B + m^N)) - λ(R/(A + m^N)), stabilized over a window of N
    starting one past the largest generator degree
    Time Complexity: at most 2 * truncation_cap colength computations
    """
    window = settings.stabilization_window
    cap = settings.truncation_cap
    degrees = [g.total_degree() for g in A.lift.gens + B.lift.gens]
    start = max(degrees, default=0) + 1
    history: List[int] = []
    for N in range(start, start + cap):
        mN = ring.m_power(N)
        lower = colength(Ideal(ring.ambient, B.lift.gens + mN.gens))
        upper = colength(Ideal(ring.ambient, A.lift.gens + mN.gens))
        history.append(int(lower - upper))
        if len(history) >= window and len(set(history[-window:])) == 1:
            logger.debug(f"[LENGTH] truncation stabilized at N = {N} with value {history[-1]}")
            return history[-1]
    raise NoStabilization(
        f"λ(A/B) did not stabilize for N in [{start}, {start + cap - 1}]",
        details={"A": str(A), "B": str(B), "start": start, "values": history},
    )


def local_colength(I: RingIdeal) -> Colength:
    """λ(R_m / I R_m); INFINITE when I is not m-primary locally"""
    ring = I.ring
    ell = colength(I.lift)
    if _supported_at_origin(I, ell):
        return ell
    if ell == INFINITE and all(g.is_homogeneous() for g in I.lift.basis()):
        return INFINITE  # graded: global and local lengths agree
    try:
        return _truncated_difference(ring, ring.unit(), I)
    except NoStabilization:
        return INFINITE


def subquotient_length(A: RingIdeal, B: RingIdeal) -> int:
    """
    λ(A/B) for B ⊆ A with A/B of finite length
    """
    if not A.contains_ideal(B):
        raise NotNested(f"{B} is not contained in {A}", details={"A": str(A), "B": str(B)})
    if A.lift == B.lift:
        return 0
    ring = A.ring
    ell_a = colength(A.lift)
    ell_b = colength(B.lift)
    if _supported_at_origin(B, ell_b) and (ell_a == 0 or _supported_at_origin(A, ell_a)):
        return int(ell_b - ell_a)
    return _truncated_difference(ring, A, B)


def locally_equal(A: RingIdeal, B: RingIdeal) -> bool:
    """Equality after localizing at m, for nested ideals"""
    if A.lift == B.lift:
        return True
    if A.contains_ideal(B):
        return subquotient_length(A, B) == 0
    if B.contains_ideal(A):
        return subquotient_length(B, A) == 0
    return False


__all__ = [
    "PresentedRing",
    "RingIdeal",
    "is_m_primary",
    "is_regular_element",
    "is_regular_sequence",
    "length_of_quotient",
    "local_colength",
    "locally_equal",
    "make_ring",
    "subquotient_length",
]
