"""
Reduced Groebner bases via Buchberger's algorithm, normal forms and elimination
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from app.config.settings import settings
from app.services.polynomial import (
    GREVLEX,
    Exponents,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    elimination_order,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)
from app.utils.exceptions import ResourceCap

logger = logging.getLogger(__name__)

# (order key, exponents, coefficient), strictly descending by key
_Term = Tuple[tuple, Exponents, int]


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Groebner basis; elements sorted by descending leading monomial"""

    ring: PolynomialRing
    elements: Tuple[Polynomial, ...]

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def leading_monomials(self) -> List[Exponents]:
        return [g.leading_monomial for g in self.elements]

    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.elements)

    def is_zero(self) -> bool:
        return not self.elements

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()


# ---------------------------------------------------------------------------
# Reduction
# ---------------------------------------------------------------------------

def _terms(f: Polynomial) -> List[_Term]:
    key = f.ring.order.key
    return [(key(e), e, c) for e, c in f.terms]


def _sub_multiple(f: List[_Term], g: Sequence[Tuple[Exponents, int]], shift: Exponents, c: int,
                  key, p: int) -> List[_Term]:
    """f - c * x^shift * g, where g's leading term cancels f[0]"""
    scaled = [(monomial_mul(e, shift), (p - (v * c) % p) % p) for e, v in g[1:]]
    out: List[_Term] = []
    i, j = 1, 0
    nf, ng = len(f), len(scaled)
    keyed = [(key(e), e, v) for e, v in scaled]
    while i < nf and j < ng:
        kf, kg = f[i][0], keyed[j][0]
        if kf > kg:
            out.append(f[i])
            i += 1
        elif kg > kf:
            if keyed[j][2]:
                out.append(keyed[j])
            j += 1
        else:
            v = (f[i][2] + keyed[j][2]) % p
            if v:
                out.append((kf, f[i][1], v))
            i += 1
            j += 1
    out.extend(f[i:])
    out.extend(t for t in keyed[j:] if t[2])
    return out


def _find_divisor(m: Exponents, basis: Sequence[Polynomial]) -> Optional[int]:
    for index, g in enumerate(basis):
        if monomial_divides(g.leading_monomial, m):
            return index
    return None


def _reduce(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Remainder of f modulo `basis` (elements assumed monic and nonzero)"""
    ring = f.ring
    if not basis or f.is_zero():
        return f
    key = ring.order.key
    p = ring.modulus
    work = _terms(f)
    remainder: List[Tuple[Exponents, int]] = []
    while work:
        _, m, c = work[0]
        index = _find_divisor(m, basis)
        if index is None:
            remainder.append((m, c))
            work = work[1:]
            continue
        g = basis[index]
        work = _sub_multiple(work, g.terms, monomial_div(m, g.leading_monomial), c, key, p)
    return Polynomial._from_sorted(ring, remainder)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """
    Remainder of f with no term divisible by a leading monomial of G;
    zero exactly when f lies in the ideal
    """
    if f.ring.order != G.ring.order:
        f = Polynomial(G.ring, f.as_dict())
    return _reduce(f, G.elements)


def divide(f: Polynomial, divisors: Sequence[Polynomial]) -> Tuple[List[Polynomial], Polynomial]:
    """
    Multivariate division: f = sum(q_i * g_i) + r
    """
    ring = f.ring
    p = ring.modulus
    key = ring.order.key
    quotients = [dict() for _ in divisors]
    inverses = [pow(g.leading_coeff, -1, p) for g in divisors]
    work = _terms(f)
    remainder: List[Tuple[Exponents, int]] = []
    while work:
        _, m, c = work[0]
        index = _find_divisor(m, divisors)
        if index is None:
            remainder.append((m, c))
            work = work[1:]
            continue
        g = divisors[index]
        shift = monomial_div(m, g.leading_monomial)
        factor = (c * inverses[index]) % p
        quotients[index][shift] = (quotients[index].get(shift, 0) + factor) % p
        work = _sub_multiple(work, g.terms, shift, factor, key, p)
    return [Polynomial(ring, q) for q in quotients], Polynomial._from_sorted(ring, remainder)


def exact_quotient(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, which must divide exactly"""
    (q,), r = divide(f, [g])
    if not r.is_zero():
        raise ValueError(f"{g} does not divide {f}")
    return q


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------

def _minimal_monomials(monomials: Iterable[Exponents]) -> List[Exponents]:
    minimal: List[Exponents] = []
    for m in sorted(set(monomials), key=sum):
        if not any(monomial_divides(g, m) for g in minimal):
            minimal.append(m)
    return minimal


def _s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    lcm = monomial_lcm(f.leading_monomial, g.leading_monomial)
    left = f.mul_term(monomial_div(lcm, f.leading_monomial), 1)
    right = g.mul_term(monomial_div(lcm, g.leading_monomial), 1)
    return left - right


def _interreduce(basis: List[Polynomial]) -> List[Polynomial]:
    leads = [g.leading_monomial for g in basis]
    keep = []
    for i, g in enumerate(basis):
        dominated = any(
            j != i and monomial_divides(leads[j], leads[i]) and (leads[j] != leads[i] or j < i)
            for j in range(len(basis))
        )
        if not dominated:
            keep.append(g)
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        tail = Polynomial._from_sorted(g.ring, g.terms[1:])
        reduced.append(Polynomial._from_sorted(g.ring, (g.terms[0],)) + _reduce(tail, others))
    key = basis[0].ring.order.key if basis else None
    reduced.sort(key=lambda h: key(h.leading_monomial), reverse=True)
    return reduced


def _buchberger(ring: PolynomialRing, gens: Tuple[Polynomial, ...]) -> Tuple[Polynomial, ...]:
    polys = [g.monic() for g in gens if not g.is_zero()]
    if not polys:
        return ()
    if any(g.is_constant() for g in polys):
        return (ring.one(),)
    if all(g.is_monomial() for g in polys):
        key = ring.order.key
        minimal = _minimal_monomials(g.leading_monomial for g in polys)
        minimal.sort(key=key, reverse=True)
        return tuple(ring.monomial(m) for m in minimal)

    key = ring.order.key
    max_pairs = settings.groebner_max_pairs
    max_degree = settings.groebner_max_degree

    basis: List[Polynomial] = []
    heap: list = []
    pending = set()
    processed = 0

    def push_pairs(new_index: int) -> None:
        lm_new = basis[new_index].leading_monomial
        for i in range(new_index):
            lcm = monomial_lcm(basis[i].leading_monomial, lm_new)
            heapq.heappush(heap, (sum(lcm), key(lcm), i, new_index))
            pending.add((i, new_index))

    def chain_criterion(i: int, j: int, lcm: Exponents) -> bool:
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if not monomial_divides(basis[k].leading_monomial, lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
        return False

    for g in sorted(polys, key=lambda h: key(h.leading_monomial)):
        h = _reduce(g, basis)
        if h.is_zero():
            continue
        basis.append(h.monic())
        push_pairs(len(basis) - 1)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        processed += 1
        if processed > max_pairs:
            raise ResourceCap(
                f"Buchberger exceeded {max_pairs} pairs",
                details={"pairs": processed, "basis_size": len(basis)},
            )
        lm_i, lm_j = basis[i].leading_monomial, basis[j].leading_monomial
        lcm = monomial_lcm(lm_i, lm_j)
        if all(a == 0 or b == 0 for a, b in zip(lm_i, lm_j)):
            continue  # coprime leading monomials
        if chain_criterion(i, j, lcm):
            continue
        h = _reduce(_s_polynomial(basis[i], basis[j]), basis)
        if h.is_zero():
            continue
        if h.is_constant():
            return (ring.one(),)
        if h.total_degree() > max_degree:
            raise ResourceCap(
                f"Buchberger produced degree {h.total_degree()} > {max_degree}",
                details={"degree": h.total_degree()},
            )
        basis.append(h.monic())
        push_pairs(len(basis) - 1)

    logger.debug(f"[GROEBNER] {len(gens)} generators -> {len(basis)} elements after {processed} pairs")
    return tuple(_interreduce(basis))


@lru_cache(maxsize=4096)
def _cached_basis(ring: PolynomialRing, gens: frozenset) -> Tuple[Polynomial, ...]:
    ordered = tuple(sorted(gens, key=lambda g: (len(g.terms), str(g))))
    return _buchberger(ring, ordered)


def buchberger(gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
               ring: Optional[PolynomialRing] = None) -> GroebnerBasis:
    """
    Unique reduced Groebner basis of <gens> in `order` (the ring's order by default)
    Time Complexity: doubly exponential in the number of variables in the worst case;
    each call is bounded by groebner_max_pairs and groebner_max_degree
    Space Complexity: O(|basis| + |pairs|) polynomials
    """
    if ring is None:
        if not gens:
            raise ValueError("buchberger needs a ring when no generators are given")
        ring = gens[0].ring
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
    homed = frozenset(g if g.ring == ring else Polynomial(ring, g.as_dict()) for g in gens)
    return GroebnerBasis(ring, _cached_basis(ring, homed))


def eliminate(gens: Sequence[Polynomial], keep: Sequence[str],
              ring: Optional[PolynomialRing] = None) -> List[Polynomial]:
    """
    Generators of <gens> ∩ k[keep], returned in the grevlex ring k[keep]
    (keep's variables in their original relative order)
    """
    ring = ring or gens[0].ring
    keep_set = set(keep)
    unknown = keep_set - set(ring.names)
    if unknown:
        raise ValueError(f"cannot keep unknown variables {sorted(unknown)}")
    kept = [n for n in ring.names if n in keep_set]
    dropped = [n for n in ring.names if n not in keep_set]
    target = ring.with_names(kept, GREVLEX) if kept else None

    if not dropped:
        return list(buchberger(gens, GREVLEX, ring=ring).elements)

    block_ring = ring.with_names(dropped + kept, elimination_order(len(dropped)))
    slot = {name: i for i, name in enumerate(dropped + kept)}
    index_map = [slot[name] for name in ring.names]
    moved = [g.to_ring(block_ring, index_map) for g in gens]
    basis = buchberger(moved, ring=block_ring)

    width = len(dropped)
    survivors = [g for g in basis.elements if not any(g.uses_variable(i) for i in range(width))]
    if target is None:
        # nothing kept: the contraction is k or 0
        return [ring.one()] if basis.is_unit() else []
    return [Polynomial(target, {e[width:]: c for e, c in g.terms}) for g in survivors]


__all__ = [
    "GroebnerBasis",
    "buchberger",
    "divide",
    "eliminate",
    "exact_quotient",
    "normal_form",
]
