"""
Certificates and verification reports
Evidence objects produced by the rank computations and claim verifiers.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Optional, Tuple

from sympy import Poly

from src.algebra.elimination import SystemWitness, WitnessStatus
from src.algebra.fields import NumberField


def fraction_text(value: Fraction) -> str:
    """Canonical "num/den" text of a rational"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


class CertificateKind(Enum):
    """How a rank claim is supported"""
    DECOMPOSITION = "decomposition"
    SCHEME_MEMBERSHIP = "scheme-membership"
    REFUTATION = "refutation"
    FACTORIZATION = "factorization"
    CONTACT_BOUND = "contact-bound"


_RULING_OUT = (CertificateKind.REFUTATION, CertificateKind.CONTACT_BOUND)


@dataclass(frozen=True)
class RankCertificate:
    """
    Exact evidence for a rank statement

    A decomposition lists vectors whose weighted sum is the target, or, at
    algebraic parameters, the curve components with the field and fiber holding
    them. A scheme membership carries the scheme generators annihilating the
    form; a refutation carries no-zero witnesses; a factorization carries the
    factors of a cubic. A contact bound rules out rank 3 in P^4 for a point on a
    tangent line meeting the curve in length at least d - 2 at one parameter.
    """
    kind: CertificateKind
    rank: Optional[int] = None
    target: Tuple[Fraction, ...] = ()
    vectors: Tuple[Tuple[Fraction, ...], ...] = ()
    coefficients: Tuple[Fraction, ...] = ()
    points: Tuple[str, ...] = ()
    scheme: Tuple[Poly, ...] = ()
    form: Optional[Poly] = None
    trace: Tuple[SystemWitness, ...] = ()
    children: Tuple["RankCertificate", ...] = ()
    notes: str = ""
    modulus: Optional[Poly] = None
    contact: Optional[Tuple[int, int]] = None
    curve: Tuple[Poly, ...] = ()
    fiber: Tuple[Poly, ...] = ()
    at_infinity: bool = False

    def _span_holds(self) -> bool:
        if not self.vectors or len(self.vectors) != len(self.coefficients):
            return False
        n = len(self.target)
        total = [Fraction(0)] * n
        for c, v in zip(self.coefficients, self.vectors):
            if len(v) != n:
                return False
            for i in range(n):
                total[i] += c * v[i]
        return tuple(total) == tuple(self.target)

    def _algebraic_span_holds(self) -> bool:
        """Span check at parameters algebraic over Q[a]/(modulus), from the stored affine components"""
        if self.modulus is None or not self.curve or len(self.curve) != len(self.target):
            return False
        K = NumberField(modulus=self.modulus, gen=self.modulus.gen)
        v = [K.rational(c) for c in self.target]
        alpha = [K.element(p.as_expr().subs(p.gens[0], K.gen)) for p in self.curve]
        if all(x.is_zero for x in alpha):
            return False
        if self.rank == 1:
            return not self.fiber and not self.at_infinity and K.rank([v, alpha]) == 1
        if self.rank != 2:
            return False
        if self.at_infinity:
            d = max(p.degree() for p in self.curve)
            inf = [K.rational(p.nth(d)) for p in self.curve]
            return K.rank([inf, alpha]) == 2 and K.rank([v, inf, alpha]) == 2
        F = K.trim(self.fiber)
        if len(F) < 2:
            return False
        phi_t = [K.from_rational_poly(p) for p in self.curve]

        def cross(i: int, j: int) -> Poly:
            return K.mul(v[i], alpha[j]) - K.mul(v[j], alpha[i])

        # v, phi(alpha), phi(t) are dependent at every root t of the fiber
        for i, j, k in combinations(range(len(v)), 3):
            minor = K.padd(K.padd(K.pscale(phi_t[i], cross(j, k)), K.pscale(phi_t[j], -cross(i, k))),
                           K.pscale(phi_t[k], cross(i, j)))
            if not K.pdivides(F, minor):
                return False
        # and phi(alpha), phi(t) are independent there
        g = F
        for i, j in combinations(range(len(v)), 2):
            g = K.pgcd(g, K.padd(K.pscale(phi_t[j], alpha[i]), K.pscale(phi_t[i], -alpha[j])))
        return len(g) == 1

    def validate(self) -> bool:
        """Re-check the certificate from its stored data alone"""
        if not all(child.validate() for child in self.children):
            return False
        if not all(w.validate() for w in self.trace):
            return False
        if self.kind == CertificateKind.DECOMPOSITION:
            if self.vectors:
                if self.rank is not None and len(self.vectors) != self.rank:
                    return False
                return self._span_holds()
            return self._algebraic_span_holds()
        if self.kind == CertificateKind.REFUTATION:
            if not self.trace and not self.children:
                return False
            if not all(w.status == WitnessStatus.NO_ZERO for w in self.trace):
                return False
            if self.children and self.rank is not None:
                # every smaller rank has to be ruled out by some child
                refuted = {c.rank for c in self.children if c.kind in _RULING_OUT}
                return all(k in refuted for k in range(1, self.rank))
            return True
        if self.kind == CertificateKind.CONTACT_BOUND:
            if self.contact is None or len(self.vectors) != 2:
                return False
            length, degree = self.contact
            return length + 2 >= degree and self._span_holds()
        if self.kind == CertificateKind.SCHEME_MEMBERSHIP:
            if self.form is None or not self.scheme:
                return False
            from src.apolarity.forms import annihilates, annihilates_over
            if self.modulus is not None:
                return all(annihilates_over(g, self.form, self.modulus) for g in self.scheme)
            return all(annihilates(g, self.form) for g in self.scheme)
        if self.kind == CertificateKind.FACTORIZATION:
            if self.form is None or len(self.scheme) != 2:
                return False
            line, conic = self.scheme
            return (line * conic - self.form).is_zero
        return False

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"kind": self.kind.value}
        if self.rank is not None:
            out["rank"] = self.rank
        if self.points:
            out["points"] = list(self.points)
        if self.vectors:
            out["vectors"] = [[fraction_text(x) for x in v] for v in self.vectors]
            out["coefficients"] = [fraction_text(c) for c in self.coefficients]
        if self.scheme:
            out["scheme"] = [str(g.as_expr()) for g in self.scheme]
        if self.trace:
            out["trace"] = [w.to_dict() for w in self.trace]
        if self.modulus is not None:
            out["field"] = str(self.modulus.as_expr())
        if self.fiber:
            out["fiber"] = [str(c.as_expr()) for c in self.fiber]
        if self.at_infinity:
            out["partner"] = "(0:1)"
        if self.contact is not None:
            out["contact"] = {"length": self.contact[0], "curve_degree": self.contact[1]}
        if self.children:
            out["children"] = [c.to_dict() for c in self.children]
        if self.notes:
            out["notes"] = self.notes
        return out


class ReportStatus(Enum):
    """Outcome of a claim verification"""
    VERIFIED = "verified"
    REFUTED = "refuted"
    UNDECIDED = "undecided"


@dataclass
class VerificationReport:
    """Structured result of verifying one claim"""
    claim: str
    status: ReportStatus
    certificates: List[RankCertificate] = field(default_factory=list)
    seeds: List[int] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    limit: Optional[str] = None
    timings: Dict[str, float] = field(default_factory=dict)
    numeric: bool = False  # closed-form claims carry their values in details instead of certificates

    def validate(self) -> bool:
        if self.status == ReportStatus.UNDECIDED:
            return bool(self.limit)
        if self.numeric:
            return bool(self.details)
        return bool(self.certificates) and all(c.validate() for c in self.certificates)

    def to_dict(self, include_timings: bool = False) -> Dict[str, Any]:
        out = {
            "claim": self.claim,
            "status": self.status.value,
            "seeds": list(self.seeds),
            "details": self.details,
            "certificates": [c.to_dict() for c in self.certificates],
        }
        if self.limit:
            out["limit"] = self.limit
        if include_timings and self.timings:
            out["timings"] = self.timings
        return out
