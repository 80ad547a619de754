"""
Pydantic models for the JSON interface
Rationals travel as canonical "num/den" strings.
"""
import re
from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, RootModel, field_validator, model_validator

_RATIONAL = re.compile(r"^-?\d+/\d+$")


def parse_rational(text: str) -> Fraction:
    """Parse a canonical "num/den" string: den > 0, coprime, zero written 0/1"""
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise ValueError(f"Rational must be a 'num/den' string, got {text!r}")
    num, den = (int(part) for part in text.split("/"))
    if den == 0:
        raise ValueError(f"Zero denominator in {text!r}")
    value = Fraction(num, den)
    if rational_text(value) != text:
        raise ValueError(f"Non-canonical rational {text!r}, expected {rational_text(value)!r}")
    return value


def rational_text(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


class JsonTerm(BaseModel):
    """One monomial with its coefficient"""
    exps: List[int]
    coeff: str

    @field_validator("exps")
    @classmethod
    def non_negative(cls, v: List[int]) -> List[int]:
        if any(e < 0 for e in v):
            raise ValueError("Exponents must be non-negative")
        return v

    @field_validator("coeff")
    @classmethod
    def canonical(cls, v: str) -> str:
        if parse_rational(v) == 0:
            raise ValueError("Zero terms are omitted")
        return v


class JsonPolynomial(BaseModel):
    """Polynomial model"""
    vars: int = Field(ge=1)
    terms: List[JsonTerm]

    @model_validator(mode="after")
    def check_terms(self) -> "JsonPolynomial":
        seen = set()
        for term in self.terms:
            if len(term.exps) != self.vars:
                raise ValueError(f"Term {term.exps} does not have {self.vars} exponents")
            key = tuple(term.exps)
            if key in seen:
                raise ValueError(f"Repeated monomial {term.exps}")
            seen.add(key)
        return self


class JsonCurve(BaseModel):
    """Parametrized curve model: ambient + 1 binary forms of the same degree"""
    ambient: int = Field(ge=1)
    degree: int = Field(ge=1)
    components: List[JsonPolynomial]

    @model_validator(mode="after")
    def check_components(self) -> "JsonCurve":
        if len(self.components) != self.ambient + 1:
            raise ValueError(f"A curve in P^{self.ambient} needs {self.ambient + 1} components")
        for p in self.components:
            if p.vars != 2:
                raise ValueError("Curve components are binary forms")
            if any(sum(t.exps) != self.degree for t in p.terms):
                raise ValueError(f"Curve components must be homogeneous of degree {self.degree}")
        return self


class JsonPoint(RootModel[List[str]]):
    """Projective point model: a bare list of coordinates"""

    @field_validator("root")
    @classmethod
    def canonical(cls, v: List[str]) -> List[str]:
        values = [parse_rational(c) for c in v]
        if not values or all(c == 0 for c in values):
            raise ValueError("A projective point needs a nonzero coordinate")
        return v

    def fractions(self) -> List[Fraction]:
        return [parse_rational(c) for c in self.root]


class VerificationReportModel(BaseModel):
    """Report as written to standard output and report files"""
    claim: str
    status: str
    seeds: List[int] = []
    details: Dict[str, Any] = {}
    certificates: List[Dict[str, Any]] = []
    limit: Optional[str] = None
    version: str
    timings: Optional[Dict[str, float]] = None


class SuiteReportModel(BaseModel):
    """Quick verification suite written by the report command"""
    app_name: str
    version: str
    reports: List[VerificationReportModel]
