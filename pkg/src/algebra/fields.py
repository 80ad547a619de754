"""
Simple number fields Q[a]/(m) and univariate polynomials over them
Elements are sympy Polys in the generator `a`, reduced modulo m.
Polynomials over the field are tuples of elements, leading coefficient first.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from sympy import Dummy, Poly, QQ

from src.algebra.errors import InvalidInputError, UndecidedError
from src.algebra.polynomials import Number, to_rational

logger = logging.getLogger(__name__)

KPoly = Tuple[Poly, ...]


@dataclass(frozen=True)
class NumberField:
    """The field Q[a]/(modulus) for an irreducible univariate modulus"""
    modulus: Poly
    gen: object = field(default=None)

    @classmethod
    def from_poly(cls, m: Poly, limit: Optional[int] = None) -> "NumberField":
        """
        Build the field defined by an irreducible polynomial

        Args:
            m: Irreducible univariate polynomial over QQ
            limit: Largest allowed extension degree

        Returns:
            NumberField whose generator is a root of m
        """
        if len(m.gens) != 1 or m.degree() < 1:
            raise InvalidInputError(f"Field modulus must be univariate of positive degree: {m}")
        if limit is not None and m.degree() > limit:
            raise UndecidedError(
                f"Extension degree {m.degree()} exceeds the configured limit {limit}",
                limit=f"extension_degree_limit={limit}",
            )
        a = Dummy("a")
        modulus = Poly(m.as_expr().subs(m.gens[0], a), a, domain=QQ).monic()
        return cls(modulus=modulus, gen=a)

    @classmethod
    def rationals(cls) -> "NumberField":
        """Q itself, as the field Q[a]/(a)"""
        t = Dummy("t")
        return cls.from_poly(Poly(t, t, domain=QQ))

    @property
    def degree(self) -> int:
        return self.modulus.degree()

    def element(self, p) -> Poly:
        """Reduce a polynomial expression in the generator"""
        return Poly(p, self.gen, domain=QQ).rem(self.modulus)

    def rational(self, c: Number) -> Poly:
        return Poly(to_rational(c), self.gen, domain=QQ)

    def zero(self) -> Poly:
        return Poly(0, self.gen, domain=QQ)

    def one(self) -> Poly:
        return Poly(1, self.gen, domain=QQ)

    def mul(self, x: Poly, y: Poly) -> Poly:
        return (x * y).rem(self.modulus)

    def inv(self, x: Poly) -> Poly:
        if x.is_zero:
            raise ZeroDivisionError("Inverse of zero in a number field")
        if x.degree() <= 0:
            return Poly(1 / x.LC(), self.gen, domain=QQ)
        return x.invert(self.modulus)

    # Polynomials over the field

    def trim(self, f: Sequence[Poly]) -> KPoly:
        i = 0
        while i < len(f) and f[i].is_zero:
            i += 1
        return tuple(f[i:])

    def pdegree(self, f: KPoly) -> int:
        return len(f) - 1

    def padd(self, f: KPoly, g: KPoly) -> KPoly:
        n = max(len(f), len(g))
        f = (self.zero(),) * (n - len(f)) + tuple(f)
        g = (self.zero(),) * (n - len(g)) + tuple(g)
        return self.trim([a + b for a, b in zip(f, g)])

    def pscale(self, f: KPoly, c: Poly) -> KPoly:
        return self.trim([self.mul(a, c) for a in f])

    def pmul(self, f: KPoly, g: KPoly) -> KPoly:
        if not f or not g:
            return ()
        out = [self.zero()] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a.is_zero:
                continue
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
        return self.trim([c.rem(self.modulus) for c in out])

    def pdivmod(self, f: KPoly, g: KPoly) -> Tuple[KPoly, KPoly]:
        if not g:
            raise ZeroDivisionError("Division by the zero polynomial")
        f = list(f)
        dg = len(g) - 1
        lead_inv = self.inv(g[0])
        if len(f) - 1 < dg:
            return (), self.trim(f)
        q = [self.zero()] * (len(f) - dg)
        for i in range(len(q)):
            c = self.mul(f[i], lead_inv)
            q[i] = c
            if c.is_zero:
                continue
            for j in range(dg + 1):
                f[i + j] = (f[i + j] - c * g[j]).rem(self.modulus)
        return self.trim(q), self.trim(f[len(q):])

    def pmonic(self, f: KPoly) -> KPoly:
        if not f:
            return f
        return self.pscale(f, self.inv(f[0]))

    def pgcd(self, f: KPoly, g: KPoly) -> KPoly:
        """Monic gcd by the Euclidean algorithm"""
        f, g = self.trim(f), self.trim(g)
        while g:
            f, g = g, self.pdivmod(f, g)[1]
        return self.pmonic(f)

    def pderivative(self, f: KPoly) -> KPoly:
        n = len(f) - 1
        return self.trim([self.mul(c, self.rational(n - i)) for i, c in enumerate(f[:-1])])

    def psquarefree(self, f: KPoly) -> KPoly:
        """Monic squarefree part (characteristic zero)"""
        g = self.pgcd(f, self.pderivative(f))
        if len(g) <= 1:
            return self.pmonic(f)
        return self.pmonic(self.pdivmod(f, g)[0])

    def pdivides(self, g: KPoly, f: KPoly) -> bool:
        return not self.pdivmod(f, g)[1]

    def specialize(self, p: Poly, index: int) -> KPoly:
        """
        Substitute the field generator for generator `index` of a bivariate polynomial

        Args:
            p: Polynomial in two generators over QQ
            index: Which generator becomes the field element (the other stays free)

        Returns:
            Polynomial in the remaining generator over this field
        """
        if len(p.gens) != 2:
            raise InvalidInputError(f"specialize expects a bivariate polynomial, got gens {p.gens}")
        other = 1 - index
        coeffs = {}
        for monom, c in p.terms():
            k = monom[other]
            coeffs[k] = coeffs.get(k, 0) + c * self.gen ** monom[index]
        if not coeffs:
            return ()
        top = max(coeffs)
        return self.trim([self.element(coeffs.get(k, 0)) for k in range(top, -1, -1)])

    def from_rational_poly(self, p: Poly) -> KPoly:
        """Coerce a univariate rational polynomial into a polynomial over the field"""
        if p.is_zero:
            return ()
        return self.trim([self.rational(c) for c in p.all_coeffs()])

    # Linear algebra over the field

    def rank(self, rows: Sequence[Sequence[Poly]]) -> int:
        """Rank of a matrix with entries in the field"""
        A = [[self.element(x) if not isinstance(x, Poly) else x.rem(self.modulus) for x in r] for r in rows]
        if not A:
            return 0
        ncols = len(A[0])
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(A)) if not A[i][c].is_zero), None)
            if piv is None:
                continue
            A[r], A[piv] = A[piv], A[r]
            inv = self.inv(A[r][c])
            for i in range(r + 1, len(A)):
                if A[i][c].is_zero:
                    continue
                f = self.mul(A[i][c], inv)
                A[i] = [(x - f * y).rem(self.modulus) for x, y in zip(A[i], A[r])]
            r += 1
            if r == len(A):
                break
        return r

    def is_zero(self, x: Poly) -> bool:
        return x.rem(self.modulus).is_zero
