"""
Independent oracles: nothing here calls into the engine
"""

from __future__ import annotations

import itertools
import math
from typing import Dict, List, Sequence, Tuple


def staircase_count(generators: Sequence[Tuple[int, int]]) -> int:
    """Lattice points of N^2 outside the monomial ideal (brute-force enumeration)"""
    a_max = min(a for a, b in generators if b == 0)
    b_max = min(b for a, b in generators if a == 0)
    return sum(
        1
        for a in range(a_max)
        for b in range(b_max)
        if not any(a >= ga and b >= gb for ga, gb in generators)
    )


def newton_polygon_count(exponents: Sequence[Tuple[int, int]], n: int) -> int:
    """
    Lattice points strictly below n * NP(I), enumerated against every
    convex combination direction: a point is inside iff for every supporting
    weight (p, q) it beats n * min(p*a + q*b) over the generators
    """
    a_max = max(a for a, b in exponents if b == 0)
    b_max = max(b for a, b in exponents if a == 0)
    weights = [(p, q) for p in range(0, 4 * (a_max + b_max) + 1) for q in range(0, 4 * (a_max + b_max) + 1)
               if (p, q) != (0, 0) and math.gcd(p, q) == 1]
    count = 0
    for a in range(n * a_max):
        for b in range(n * b_max):
            inside = all(p * a + q * b >= n * min(p * ea + q * eb for ea, eb in exponents) for p, q in weights)
            if not inside:
                count += 1
    return count


def semigroup_hilbert(generators: Sequence[int], n: int) -> int:
    """
    λ(R/m^n) for R = k[[t^g : g in generators]]: semigroup elements whose
    longest factorization has fewer than n parts
    """
    gens = sorted(generators)
    bound = n * gens[-1] + 1
    longest: Dict[int, int] = {0: 0}
    for s in range(1, bound):
        best = -1
        for g in gens:
            if s - g in longest:
                best = max(best, longest[s - g] + 1)
        if best >= 0:
            longest[s] = best
    return sum(1 for s, k in longest.items() if k < n)


def _rank_mod_p(rows: List[List[int]], p: int) -> int:
    rows = [[v % p for v in row] for row in rows]
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [(v - factor * w) % p for v, w in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def brute_force_member(f: Dict[Tuple[int, ...], int], generators: Sequence[Dict[Tuple[int, ...], int]],
                       nvars: int, degree: int, p: int) -> bool:
    """
    f ∈ (generators) with cofactors of degree <= `degree`, decided by linear algebra over GF(p)
    """
    shifts = [e for e in itertools.product(range(degree + 1), repeat=nvars) if sum(e) <= degree]
    products = []
    for g in generators:
        for s in shifts:
            products.append({tuple(a + b for a, b in zip(e, s)): c for e, c in g.items()})
    monomials = sorted({e for h in products + [f] for e in h})
    index = {e: i for i, e in enumerate(monomials)}

    def row(h):
        out = [0] * len(monomials)
        for e, c in h.items():
            out[index[e]] = c
        return out

    base = [row(h) for h in products]
    return _rank_mod_p(base, p) == _rank_mod_p(base + [row(f)], p)
