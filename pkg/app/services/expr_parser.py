"""
Polynomial expression and job-document parsing
Recursive-descent parser for the expression grammar

    expr   := term (('+'|'-') term)*
    term   := factor ('*'? factor)*
    factor := INT | VAR ('^' NAT)? | '(' expr ')' | '-' factor
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from app.services.polynomial import Polynomial, PolynomialRing
from app.utils.exceptions import ExpressionSyntaxError, MalformedDocument, UnknownVariable

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntNode:
    value: int

    def evaluate(self, ring: PolynomialRing) -> Polynomial:
        return ring.constant(self.value)


@dataclass(frozen=True)
class VarNode:
    name: str
    exponent: int = 1

    def evaluate(self, ring: PolynomialRing) -> Polynomial:
        exps = [0] * ring.nvars
        exps[ring.names.index(self.name)] = self.exponent
        return ring.monomial(exps)


@dataclass(frozen=True)
class NegNode:
    operand: "Node"

    def evaluate(self, ring: PolynomialRing) -> Polynomial:
        return -self.operand.evaluate(ring)


@dataclass(frozen=True)
class ProductNode:
    factors: Tuple["Node", ...]

    def evaluate(self, ring: PolynomialRing) -> Polynomial:
        result = ring.one()
        for factor in self.factors:
            result = result * factor.evaluate(ring)
        return result


@dataclass(frozen=True)
class SumNode:
    # (sign, term) with sign in {+1, -1}
    terms: Tuple[Tuple[int, "Node"], ...]

    def evaluate(self, ring: PolynomialRing) -> Polynomial:
        result = ring.zero()
        for sign, term in self.terms:
            value = term.evaluate(ring)
            result = result + value if sign > 0 else result - value
        return result


Node = Union[IntNode, VarNode, NegNode, ProductNode, SumNode]


@dataclass(frozen=True)
class PolyExpr:
    source: str
    ast: Node
    vars: Tuple[str, ...]

    def to_polynomial(self, ring: PolynomialRing) -> Polynomial:
        return self.ast.evaluate(ring)


# ---------------------------------------------------------------------------
# Tokenizer / parser
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str  # int | var | op | end
    text: str
    position: int


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.tokens = self._tokenize()
        self.index = 0

    def _split_identifier(self, ident: str, position: int) -> List[_Token]:
        if ident in self.variables:
            return [_Token("var", ident, position)]
        # juxtaposed variables such as "xy"; longest declared name first
        names = sorted(self.variables, key=len, reverse=True)
        out: List[_Token] = []
        offset = 0
        while offset < len(ident):
            match = next((n for n in names if ident.startswith(n, offset)), None)
            if match is None:
                raise UnknownVariable(ident, position)
            out.append(_Token("var", match, position + offset))
            offset += len(match)
        return out

    def _tokenize(self) -> List[_Token]:
        tokens: List[_Token] = []
        pos = 0
        text = self.text
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                start = len(text) - len(text[pos:].lstrip())
                raise ExpressionSyntaxError(start, "integer, variable, operator or parenthesis", text)
            start = m.start(m.lastgroup)
            if m.lastgroup == "int":
                tokens.append(_Token("int", m.group("int"), start))
            elif m.lastgroup == "ident":
                tokens.extend(self._split_identifier(m.group("ident"), start))
            else:
                tokens.append(_Token("op", m.group("op"), start))
            pos = m.end()
        tokens.append(_Token("end", "", len(text)))
        return tokens

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def _advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _is_op(self, symbol: str) -> bool:
        return self.current.kind == "op" and self.current.text == symbol

    def _starts_factor(self) -> bool:
        return self.current.kind in ("int", "var") or self._is_op("(")

    def parse(self) -> Node:
        node = self._expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(self.current.position, "end of input or operator", self.text)
        return node

    def _expr(self) -> Node:
        terms = [(1, self._term())]
        while self._is_op("+") or self._is_op("-"):
            sign = 1 if self._advance().text == "+" else -1
            terms.append((sign, self._term()))
        return terms[0][1] if len(terms) == 1 and terms[0][0] == 1 else SumNode(tuple(terms))

    def _term(self) -> Node:
        factors = [self._factor()]
        while True:
            if self._is_op("*"):
                self._advance()
                factors.append(self._factor())
            elif self._starts_factor():
                factors.append(self._factor())
            else:
                break
        return factors[0] if len(factors) == 1 else ProductNode(tuple(factors))

    def _factor(self) -> Node:
        token = self.current
        if token.kind == "int":
            self._advance()
            return IntNode(int(token.text))
        if token.kind == "var":
            self._advance()
            if self._is_op("^"):
                self._advance()
                exponent = self.current
                if exponent.kind != "int":
                    raise ExpressionSyntaxError(exponent.position, "natural-number exponent", self.text)
                self._advance()
                return VarNode(token.text, int(exponent.text))
            return VarNode(token.text)
        if self._is_op("("):
            self._advance()
            inner = self._expr()
            if not self._is_op(")"):
                raise ExpressionSyntaxError(self.current.position, "')'", self.text)
            self._advance()
            return inner
        if self._is_op("-"):
            self._advance()
            return NegNode(self._factor())
        raise ExpressionSyntaxError(token.position, "integer, variable, '(' or '-'", self.text)


def parse_polynomial(text: str, variables: Sequence[str]) -> PolyExpr:
    """
    Parse `text` into a PolyExpr over the declared variables
    """
    if not text or not text.strip():
        raise ExpressionSyntaxError(0, "non-empty expression", text or "")
    ast = _Parser(text, variables).parse()
    return PolyExpr(source=text, ast=ast, vars=tuple(variables))


def parse_to_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    return parse_polynomial(text, ring.names).to_polynomial(ring)


def parse_job(document: Union[bytes, str, dict]):
    """
    Parse and validate a job document (JSON) into a JobSpec with defaults applied
    """
    from pydantic import ValidationError
    from app.schemas.job import JobSpec

    if isinstance(document, dict):
        payload = document
    else:
        try:
            text = document.decode("utf-8") if isinstance(document, bytes) else document
            payload = json.loads(text)
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            raise MalformedDocument(f"Job document is not valid UTF-8 JSON: {e}")
    if not isinstance(payload, dict):
        raise MalformedDocument("Job document must be a JSON object")

    try:
        job = JobSpec.model_validate(payload)
    except ValidationError as e:
        errors = [
            {"loc": ".".join(str(p) for p in err.get("loc", ())), "msg": err.get("msg", "")}
            for err in e.errors()
        ]
        raise MalformedDocument("Job document failed validation", details={"errors": errors})
    logger.debug(f"[PARSE] Accepted job over vars {job.vars} (char {job.field_char}, {job.filtration})")
    return job


def serialize_job(job) -> bytes:
    """Canonical job document; parse_job(serialize_job(j)) == j"""
    return (json.dumps(job.to_document(), indent=2, ensure_ascii=False) + "\n").encode("utf-8")


__all__ = [
    "PolyExpr",
    "parse_job",
    "parse_polynomial",
    "parse_to_polynomial",
    "serialize_job",
]
