"""
JSON codecs for polynomials, points and curves
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

from pydantic import ValidationError
from sympy import Poly, QQ, Rational

from src.algebra.errors import InvalidInputError
from src.algebra.polynomials import Number, ordered_terms, to_fraction
from src.apolarity.forms import standard_gens
from src.apolarity.schemes import PLANE
from src.binary.sylvester import Z0, Z1
from src.curves.curve import RationalCurve
from src.models.json_models import JsonCurve, JsonPoint, JsonPolynomial, parse_rational, rational_text

logger = logging.getLogger(__name__)


def gens_for(nvars: int) -> Tuple:
    """(z0, z1) for binary forms, (x, y, z) for plane forms, x0..xn otherwise"""
    if nvars == 2:
        return Z0, Z1
    if nvars == 3:
        return PLANE
    return standard_gens(nvars)


def load_json(source: Union[str, bytes, Path]) -> Any:
    """
    Parse JSON from a path or raw bytes

    Raises:
        InvalidInputError: undecodable or malformed text, naming the byte offset
    """
    raw = source.read_bytes() if isinstance(source, Path) else source
    if isinstance(raw, str):
        raw = raw.encode("utf-8")
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise InvalidInputError(f"Invalid UTF-8 at byte offset {e.start}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        offset = len(text[:e.pos].encode("utf-8"))
        raise InvalidInputError(f"Malformed JSON at byte offset {offset}: {e.msg}")


def _validated(model, data: Any):
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise InvalidInputError(f"Invalid {model.__name__}: {e.errors()[0]['msg']}")


def decode_polynomial(data: Any) -> Poly:
    model: JsonPolynomial = _validated(JsonPolynomial, data)
    gens = gens_for(model.vars)
    coeffs = {}
    for term in model.terms:
        c = parse_rational(term.coeff)
        coeffs[tuple(term.exps)] = Rational(c.numerator, c.denominator)
    if not coeffs:
        return Poly(0, *gens, domain=QQ)
    return Poly.from_dict(coeffs, *gens, domain=QQ)


def encode_polynomial(p: Poly) -> Dict:
    """Terms in the fixed monomial order"""
    return {
        "vars": len(p.gens),
        "terms": [{"exps": list(m), "coeff": rational_text(c)} for m, c in ordered_terms(p)],
    }


def decode_point(data: Any) -> List:
    return _validated(JsonPoint, data).fractions()


def encode_point(point: Sequence[Number]) -> List[str]:
    return [rational_text(to_fraction(c)) for c in point]


def decode_curve(data: Any) -> RationalCurve:
    model: JsonCurve = _validated(JsonCurve, data)
    polys = [decode_polynomial(p.model_dump()) for p in model.components]
    curve = RationalCurve.from_polys(polys)
    if curve.degree != model.degree or curve.ambient != model.ambient:
        raise InvalidInputError("Curve header does not match its components")
    return curve.require_nondegenerate()


def encode_curve(curve: RationalCurve) -> Dict:
    return {
        "ambient": curve.ambient,
        "degree": curve.degree,
        "components": [encode_polynomial(p) for p in curve.polys()],
    }


def dumps(value: Any) -> str:
    """Deterministic JSON text"""
    return json.dumps(value, indent=2, ensure_ascii=False)
