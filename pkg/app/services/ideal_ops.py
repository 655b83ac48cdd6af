"""
Ideal algebra in the ambient polynomial ring
Sums, products, powers, colons, intersections, colength and monomial dimension
"""

from __future__ import annotations

import itertools
import logging
import math
import threading
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from app.services.groebner import GroebnerBasis, buchberger, eliminate, exact_quotient
from app.services.polynomial import GREVLEX, Exponents, Polynomial, PolynomialRing, monomial_divides
from app.utils.exceptions import NotMonomial, ZeroDivisorGenerator

logger = logging.getLogger(__name__)

INFINITE = math.inf
Colength = Union[int, float]


class Ideal:
    """
    Ideal of k[x_1..x_m] given by generators; the reduced grevlex Groebner
    basis is computed at most once, on first use
    """

    __slots__ = ("ring", "gens", "_gb", "_lock")

    def __init__(self, ring: PolynomialRing, gens: Iterable[Polynomial] = ()):
        if ring.order != GREVLEX:
            ring = ring.with_order(GREVLEX)
        self.ring = ring
        self.gens: Tuple[Polynomial, ...] = tuple(
            g if g.ring == ring else Polynomial(ring, g.as_dict()) for g in gens if not g.is_zero()
        )
        self._gb: Optional[GroebnerBasis] = None
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: PolynomialRing) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring: PolynomialRing) -> "Ideal":
        return cls(ring, [])

    @classmethod
    def from_monomials(cls, ring: PolynomialRing, exponents: Iterable[Sequence[int]]) -> "Ideal":
        return cls(ring, [ring.monomial(e) for e in exponents])

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = buchberger(list(self.gens), ring=self.ring)
        return self._gb

    def basis(self) -> Tuple[Polynomial, ...]:
        return self.gb.elements

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def contains(self, f: Polynomial) -> bool:
        return self.gb.contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def monomial_generators(self) -> List[Exponents]:
        """Minimal exponent vectors of a monomial ideal"""
        if not self.is_monomial():
            raise NotMonomial(f"{self} is not a monomial ideal")
        return [g.leading_monomial for g in self.basis()]

    def initial_ideal(self) -> "Ideal":
        return Ideal(self.ring, [self.ring.monomial(m) for m in self.gb.leading_monomials()])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring.modulus == other.ring.modulus and set(self.basis()) == set(other.basis())

    def __hash__(self) -> int:
        return hash(frozenset(self.basis()))

    def __str__(self) -> str:
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self) -> str:
        return f"Ideal{self}"


def ideal_sum(A: Ideal, B: Ideal) -> Ideal:
    return Ideal(A.ring, A.gens + B.gens)


def ideal_product(A: Ideal, B: Ideal) -> Ideal:
    if A.is_zero() or B.is_zero():
        return Ideal.zero(A.ring)
    left, right = A.basis(), B.basis()
    return Ideal(A.ring, [f * g for f in left for g in right])


def ideal_power(A: Ideal, n: int) -> Ideal:
    """A^n by repeated product, interreduced after every step"""
    if n < 0:
        raise ValueError("ideal_power needs n >= 0")
    result = Ideal.unit(A.ring)
    for _ in range(n):
        result = Ideal(A.ring, ideal_product(result, A).basis())
    return result


def _monomial_intersection(A: Ideal, B: Ideal) -> Ideal:
    from app.services.polynomial import monomial_lcm

    ring = A.ring
    return Ideal(ring, [ring.monomial(monomial_lcm(a, b))
                        for a in A.monomial_generators() for b in B.monomial_generators()])


def ideal_intersect(A: Ideal, B: Ideal) -> Ideal:
    """
    A ∩ B via the tag-variable elimination <t*A, (1-t)*B> ∩ k[x]
    """
    ring = A.ring
    if A.is_zero() or B.is_zero():
        return Ideal.zero(ring)
    if A.is_unit():
        return B
    if B.is_unit():
        return A
    if A.is_monomial() and B.is_monomial():
        return _monomial_intersection(A, B)
    if A.contains_ideal(B):
        return B
    if B.contains_ideal(A):
        return A

    tag = "_t"
    while tag in ring.names:
        tag = "_" + tag
    tagged = ring.with_names((tag,) + ring.names)
    shift = list(range(1, tagged.nvars))
    t = tagged.gen(0)
    one_minus_t = tagged.one() - t
    gens = [t * a.to_ring(tagged, shift) for a in A.basis()]
    gens += [one_minus_t * b.to_ring(tagged, shift) for b in B.basis()]
    survivors = eliminate(gens, ring.names, ring=tagged)
    return Ideal(ring, [Polynomial(ring, g.as_dict()) for g in survivors])


def element_colon(A: Ideal, f: Polynomial) -> Ideal:
    """(A : f) = (A ∩ (f)) / f"""
    ring = A.ring
    if f.is_zero():
        raise ZeroDivisorGenerator("colon by the zero element")
    if A.is_unit() or A.contains(f):
        return Ideal.unit(ring)
    if A.is_monomial() and f.is_monomial():
        shift = f.leading_monomial
        return Ideal(ring, [ring.monomial(tuple(max(a - s, 0) for a, s in zip(m, shift)))
                            for m in A.monomial_generators()])
    meet = ideal_intersect(A, Ideal(ring, [f]))
    return Ideal(ring, [exact_quotient(g, f) for g in meet.basis()])


def ideal_colon(A: Ideal, B: Ideal) -> Ideal:
    """
    (A : B) = ∩_b (A : b) over the generators b of B
    """
    if B.is_zero():
        raise ZeroDivisorGenerator("colon by an ideal with only zero generators")
    result: Optional[Ideal] = None
    for b in B.basis():
        part = element_colon(A, b)
        result = part if result is None else ideal_intersect(result, part)
        if result.is_zero():
            break
    return result


# ---------------------------------------------------------------------------
# Colength / dimension
# ---------------------------------------------------------------------------

def _minimal(monomials: Iterable[Exponents]) -> List[Exponents]:
    out: List[Exponents] = []
    for m in sorted(set(monomials), key=sum):
        if not any(monomial_divides(g, m) for g in out):
            out.append(m)
    return out


def count_standard_monomials(generators: Sequence[Exponents], nvars: int) -> Colength:
    """
    Number of monomials outside the monomial ideal; INFINITE when some variable
    has no pure power among the generators
    Time Complexity: O(b * g^2) per level of recursion, b the pure-power bound of the
    last variable and g the number of generators; no monomial is enumerated
    Space Complexity: O(g * nvars) per level
    """
    gens = _minimal(generators)
    if any(sum(g) == 0 for g in gens):
        return 0
    for i in range(nvars):
        if not any(g[i] > 0 and sum(g) == g[i] for g in gens):
            return INFINITE
    return _count_finite(tuple(gens), nvars)


def _count_finite(gens: Tuple[Exponents, ...], nvars: int) -> int:
    if any(sum(g) == 0 for g in gens):
        return 0
    if nvars == 1:
        return min(g[0] for g in gens)
    last = nvars - 1
    bound = min(g[last] for g in gens if not any(g[:last]))
    total = 0
    for k in range(bound):
        slice_gens = _minimal(g[:last] for g in gens if g[last] <= k)
        total += _count_finite(tuple(slice_gens), last)
    return total


def colength(A: Ideal) -> Colength:
    """dim_k P/A, counted on the staircase of the initial ideal"""
    if A.is_unit():
        return 0
    leads = A.gb.leading_monomials()
    if not leads:
        return INFINITE
    return count_standard_monomials(leads, A.ring.nvars)


def monomial_dimension(M: Ideal) -> int:
    """
    Krull dimension of P/M for a monomial ideal M: the largest variable
    subset containing the support of no generator
    """
    if not M.is_monomial():
        raise NotMonomial(f"{M} is not generated by monomials")
    if M.is_zero():
        return M.ring.nvars
    supports = [frozenset(i for i, k in enumerate(m) if k) for m in M.monomial_generators()]
    if any(not s for s in supports):
        return -1  # unit ideal: empty quotient
    n = M.ring.nvars
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            chosen = set(subset)
            if not any(s <= chosen for s in supports):
                return size
    return 0


def krull_dimension(A: Ideal) -> int:
    """dim P/A through its initial ideal"""
    return monomial_dimension(A.initial_ideal())


__all__ = [
    "INFINITE",
    "Ideal",
    "colength",
    "count_standard_monomials",
    "element_colon",
    "ideal_colon",
    "ideal_intersect",
    "ideal_power",
    "ideal_product",
    "ideal_sum",
    "krull_dimension",
    "monomial_dimension",
]
