"""
Exact polynomial arithmetic over a prime field
Prime-field scalars, monomials under a total order, multivariate polynomials
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy.ntheory import isprime
from sympy.polys.monomials import monomial_div, monomial_divides, monomial_lcm, monomial_mul
from sympy.polys.orderings import ProductOrder, grevlex, lex

from app.utils.exceptions import ArityMismatch, InvalidField, ResourceCap, ZeroPolynomial

Exponents = Tuple[int, ...]

# Exponents stay below 2^16; anything larger is treated as runaway growth
EXPONENT_LIMIT = 1 << 16


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p), stored as its canonical residue"""

    residue: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ArityMismatch(self.modulus, other.modulus)
            return other.residue
        return int(other)

    def __add__(self, other) -> "FieldElement":
        return FieldElement(self.residue + self._coerce(other), self.modulus)

    def __sub__(self, other) -> "FieldElement":
        return FieldElement(self.residue - self._coerce(other), self.modulus)

    def __mul__(self, other) -> "FieldElement":
        return FieldElement(self.residue * self._coerce(other), self.modulus)

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.residue, self.modulus)

    def inverse(self) -> "FieldElement":
        if self.residue == 0:
            raise ZeroDivisionError("0 has no inverse in GF(p)")
        return FieldElement(pow(self.residue, -1, self.modulus), self.modulus)

    def signed(self) -> int:
        """Symmetric representative in (-p/2, p/2]"""
        return self.residue - self.modulus if self.residue > self.modulus // 2 else self.residue

    def __int__(self) -> int:
        return self.residue

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.residue == other.residue and self.modulus == other.modulus
        if isinstance(other, int):
            return self.residue == other % self.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.residue, self.modulus))


@dataclass(frozen=True)
class Monomial:
    exponents: Exponents

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def divides(self, other: "Monomial") -> bool:
        return monomial_divides(self.exponents, other.exponents)


@dataclass(frozen=True)
class MonomialOrder:
    """
    grevlex, lex, or a two-block elimination order (grevlex on each block,
    the first `block` variables dominating)
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elimination"):
            raise ValueError(f"unknown monomial order: {self.kind}")
        if self.kind == "elimination" and self.block < 1:
            raise ValueError("elimination order needs a positive block size")

    @cached_property
    def key(self) -> Callable[[Exponents], tuple]:
        if self.kind == "grevlex":
            return grevlex
        if self.kind == "lex":
            return lex
        block = self.block
        return ProductOrder((grevlex, lambda m: m[:block]), (grevlex, lambda m: m[block:]))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(block: int) -> MonomialOrder:
    return MonomialOrder("elimination", block)


@dataclass(frozen=True)
class PolynomialRing:
    """k[names] with k = GF(modulus), terms kept sorted in `order`"""

    names: Tuple[str, ...]
    modulus: int
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        if not self.names:
            raise InvalidField("vars", "at least one variable is required")
        if len(set(self.names)) != len(self.names):
            raise InvalidField("vars", "variable names must be distinct")
        if not isprime(self.modulus):
            raise InvalidField("field.char", f"{self.modulus} is not prime")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def with_order(self, order: MonomialOrder) -> "PolynomialRing":
        return PolynomialRing(self.names, self.modulus, order)

    def with_names(self, names: Sequence[str], order: Optional[MonomialOrder] = None) -> "PolynomialRing":
        return PolynomialRing(tuple(names), self.modulus, order or self.order)

    def scalar(self, value: int) -> FieldElement:
        return FieldElement(value, self.modulus)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, value: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: value})

    def monomial(self, exponents: Sequence[int], coeff: int = 1) -> "Polynomial":
        exps = tuple(exponents)
        if len(exps) != self.nvars:
            raise ArityMismatch(len(exps), self.nvars)
        return Polynomial(self, {exps: coeff})

    def gen(self, index: int) -> "Polynomial":
        exps = [0] * self.nvars
        exps[index] = 1
        return self.monomial(exps)

    def var(self, name: str) -> "Polynomial":
        return self.gen(self.names.index(name))

    def gens(self) -> List["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]


class Polynomial:
    """
    Immutable polynomial: terms strictly descending in the ring's order,
    coefficients in [1, p)
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, coeffs: Dict[Exponents, int]):
        p = ring.modulus
        items = []
        for exps, c in coeffs.items():
            c %= p
            if c:
                items.append((exps, c))
        items.sort(key=lambda t: ring.order.key(t[0]), reverse=True)
        self.ring = ring
        self.terms: Tuple[Tuple[Exponents, int], ...] = tuple(items)
        self._hash = None

    @classmethod
    def _from_sorted(cls, ring: PolynomialRing, terms: Iterable[Tuple[Exponents, int]]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly.ring = ring
        poly.terms = tuple(terms)
        poly._hash = None
        return poly

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return self.is_zero() or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    @property
    def leading_monomial(self) -> Exponents:
        if not self.terms:
            raise ZeroPolynomial("leading_monomial")
        return self.terms[0][0]

    @property
    def leading_coeff(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("leading_coeff")
        return self.terms[0][1]

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def support(self) -> Iterator[Exponents]:
        return (e for e, _ in self.terms)

    def as_dict(self) -> Dict[Exponents, int]:
        return dict(self.terms)

    def uses_variable(self, index: int) -> bool:
        return any(e[index] for e, _ in self.terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.ring.nvars != other.ring.nvars or self.ring.modulus != other.ring.modulus:
            raise ArityMismatch(self.ring.nvars, other.ring.nvars)

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, FieldElement):
            return self.ring.constant(other.residue)
        return self.ring.constant(int(other))

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return Polynomial(self.ring, acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        p = self.ring.modulus
        return Polynomial._from_sorted(self.ring, ((e, p - c) for e, c in self.terms))

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(int(other) if not isinstance(other, FieldElement) else other.residue)
        self._check(other)
        acc: Dict[Exponents, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = monomial_mul(e1, e2)
                acc[e] = acc.get(e, 0) + c1 * c2
        product = Polynomial(self.ring, acc)
        _check_exponents(product)
        return product

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.modulus
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial._from_sorted(self.ring, ((e, (v * c) % p) for e, v in self.terms))

    def mul_term(self, exps: Exponents, c: int) -> "Polynomial":
        """Multiply by the single term c·x^exps (order is preserved)"""
        p = self.ring.modulus
        c %= p
        if c == 0:
            return self.ring.zero()
        product = Polynomial._from_sorted(
            self.ring, ((monomial_mul(e, exps), (v * c) % p) for e, v in self.terms)
        )
        _check_exponents(product)
        return product

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(pow(self.leading_coeff, -1, self.ring.modulus))

    def to_ring(self, ring: PolynomialRing, index_map: Optional[Sequence[int]] = None) -> "Polynomial":
        """
        Re-home into `ring`; index_map[i] is the target slot of variable i
        (unmapped target slots get exponent 0)
        """
        if index_map is None:
            index_map = list(range(self.ring.nvars))
        acc = {}
        for e, c in self.terms:
            target = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    target[index_map[i]] = k
            acc[tuple(target)] = c
        return Polynomial(ring, acc)

    # -- identity / printing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return (
                self.ring.modulus == other.ring.modulus
                and self.ring.nvars == other.ring.nvars
                and sorted(self.terms) == sorted(other.terms)
            )
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.modulus, tuple(sorted(self.terms))))
        return self._hash

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        p = self.ring.modulus
        pieces: List[str] = []
        for index, (e, c) in enumerate(self.terms):
            signed = c - p if c > p // 2 else c
            sign = "-" if signed < 0 else "+"
            magnitude = abs(signed)
            factors = []
            for name, k in zip(self.ring.names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            if index == 0:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def _check_exponents(poly: Polynomial) -> None:
    for e, _ in poly.terms:
        if e and max(e) >= EXPONENT_LIMIT:
            raise ResourceCap(
                f"exponent overflow: {max(e)} >= {EXPONENT_LIMIT}",
                details={"limit": EXPONENT_LIMIT},
            )


def poly_arith(op: str, f: Polynomial, g) -> Polynomial:
    """add / sub / mul / scalar-mul with normal-form output"""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scalar-mul":
        if isinstance(g, Polynomial):
            if not g.is_constant():
                raise ValueError("scalar-mul expects a constant")
            return f.scale(g.terms[0][1] if g.terms else 0)
        return f.scale(int(g))
    raise ValueError(f"unknown operation: {op}")


def leading_term(f: Polynomial, order: Optional[MonomialOrder] = None) -> Tuple[Monomial, FieldElement]:
    """Maximal term of f under `order` (the ring's order by default)"""
    if f.is_zero():
        raise ZeroPolynomial()
    if order is None or order == f.ring.order:
        e, c = f.terms[0]
    else:
        e, c = max(f.terms, key=lambda t: order.key(t[0]))
    return Monomial(e), FieldElement(c, f.ring.modulus)


__all__ = [
    "EXPONENT_LIMIT",
    "Exponents",
    "FieldElement",
    "GREVLEX",
    "LEX",
    "Monomial",
    "MonomialOrder",
    "Polynomial",
    "PolynomialRing",
    "elimination_order",
    "leading_term",
    "monomial_div",
    "monomial_divides",
    "monomial_lcm",
    "monomial_mul",
    "poly_arith",
]
