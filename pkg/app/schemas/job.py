"""
Job schemas
Pydantic model for job documents (file, CLI and HTTP bodies share it)
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.config.settings import settings
from app.services.expr_parser import parse_to_polynomial
from app.services.polynomial import PolynomialRing
from app.utils.exceptions import ClosureUnsupported, InvalidField


class JobSpec(BaseModel):
    """
    Validated job: ring presentation, ideal, filtration kind and run options.
    Polynomials are stored in normalized printed form.
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    field_char: int = Field(default_factory=lambda: settings.field_char, alias="field.char")
    vars: List[str]
    quotient: List[str] = Field(default_factory=list)
    ideal: List[str]
    filtration: Literal["adic", "newton-closure"] = "adic"
    reduction: Optional[List[str]] = None
    seed: Optional[int] = None
    max_n: int = Field(default_factory=lambda: settings.max_n)

    @model_validator(mode="before")
    @classmethod
    def _flatten_field(cls, data):
        # accept {"field": {"char": p}} as well as the dotted key
        if isinstance(data, dict) and isinstance(data.get("field"), dict):
            data = dict(data)
            nested = data.pop("field")
            extra = set(nested) - {"char"}
            if extra:
                raise InvalidField("field", f"unknown keys {sorted(extra)}")
            if "char" in nested:
                data["field.char"] = nested["char"]
        return data

    @field_validator("vars")
    @classmethod
    def _check_vars(cls, value: List[str]) -> List[str]:
        if not value:
            raise InvalidField("vars", "at least one variable is required")
        if len(set(value)) != len(value):
            raise InvalidField("vars", "duplicate variable names")
        if len(value) > settings.max_variables:
            raise InvalidField("vars", f"at most {settings.max_variables} variables are supported")
        return value

    @field_validator("ideal")
    @classmethod
    def _check_ideal(cls, value: List[str]) -> List[str]:
        if not value:
            raise InvalidField("ideal", "at least one generator is required")
        return value

    @field_validator("max_n")
    @classmethod
    def _check_max_n(cls, value: int) -> int:
        if value < 2:
            raise InvalidField("max_n", "must be at least 2")
        return value

    @model_validator(mode="after")
    def _normalize(self) -> "JobSpec":
        ring = PolynomialRing(tuple(self.vars), self.field_char)

        def normalize(texts: List[str]) -> List[str]:
            return [str(parse_to_polynomial(t, ring)) for t in texts]

        quotient = normalize(self.quotient)
        ideal = normalize(self.ideal)
        reduction = normalize(self.reduction) if self.reduction is not None else None

        if self.filtration == "newton-closure":
            if quotient:
                raise ClosureUnsupported("newton-closure requires an empty quotient")
            if len(self.vars) != 2:
                raise ClosureUnsupported("newton-closure requires exactly 2 variables")
            if not all(parse_to_polynomial(g, ring).is_monomial() for g in ideal):
                raise ClosureUnsupported("newton-closure requires monomial ideal generators")

        # frozen model: write normalized values through the instance dict
        object.__setattr__(self, "quotient", quotient)
        object.__setattr__(self, "ideal", ideal)
        object.__setattr__(self, "reduction", reduction)
        return self

    def ring(self) -> PolynomialRing:
        return PolynomialRing(tuple(self.vars), self.field_char)

    def to_document(self) -> dict:
        document = {
            "field.char": self.field_char,
            "vars": list(self.vars),
            "quotient": list(self.quotient),
            "ideal": list(self.ideal),
            "filtration": self.filtration,
        }
        if self.reduction is not None:
            document["reduction"] = list(self.reduction)
        if self.seed is not None:
            document["seed"] = self.seed
        document["max_n"] = self.max_n
        return document
