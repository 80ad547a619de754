"""
Exact rational matrices
Fraction-free (Bareiss) elimination for rank and kernel computations.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

from src.algebra.errors import InvalidInputError
from src.algebra.polynomials import Number, to_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QMatrix:
    """Row-major matrix of Fractions"""
    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise InvalidInputError(
                f"QMatrix {self.rows}x{self.cols} needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]], cols: int = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != ncols for r in rows):
            raise InvalidInputError("Ragged rows")
        return cls(len(rows), ncols, tuple(to_fraction(v) for r in rows for v in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, tuple(Fraction(0) for _ in range(rows * cols)))

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "QMatrix":
        return QMatrix(
            self.cols, self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows))
        )

    def apply(self, vector: Sequence[Number]) -> Tuple[Fraction, ...]:
        """Matrix-vector product"""
        if len(vector) != self.cols:
            raise InvalidInputError(f"Vector of length {len(vector)} for {self.cols} columns")
        v = [to_fraction(x) for x in vector]
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows))

    def stack(self, other: "QMatrix") -> "QMatrix":
        """Rows of self followed by rows of other"""
        if other.cols != self.cols:
            raise InvalidInputError("Column counts differ")
        return QMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)


@dataclass(frozen=True)
class KernelResult:
    """Rank and reduced-echelon kernel basis of a matrix"""
    rank: int
    basis: Tuple[Tuple[Fraction, ...], ...]
    pivots: Tuple[int, ...]


def _integer_rows(M: QMatrix) -> List[List[int]]:
    out = []
    for i in range(M.rows):
        r = M.row(i)
        den = lcm(*[v.denominator for v in r]) if r else 1
        out.append([int(v * den) for v in r])
    return out


def bareiss_echelon(M: QMatrix) -> Tuple[List[List[int]], List[int]]:
    """
    Fraction-free row echelon form

    Args:
        M: Input matrix

    Returns:
        Tuple of (integer echelon rows, pivot columns); only the first len(pivots) rows are nonzero
    """
    A = _integer_rows(M)
    m, n = M.rows, M.cols
    prev = 1
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, m):
            a_ic = A[i][c]
            row_i = A[i]
            row_r = A[r]
            for j in range(c + 1, n):
                row_i[j] = (p * row_i[j] - a_ic * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M: QMatrix) -> int:
    """Exact rank"""
    return len(bareiss_echelon(M)[1])


def reduced_echelon(M: QMatrix) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns"""
    A, pivots = bareiss_echelon(M)
    R = [[Fraction(v) for v in A[i]] for i in range(len(pivots))]
    for i in reversed(range(len(pivots))):
        c = pivots[i]
        p = R[i][c]
        R[i] = [v / p for v in R[i]]
        for k in range(i):
            f = R[k][c]
            if f != 0:
                R[k] = [a - f * b for a, b in zip(R[k], R[i])]
    return R, pivots


def kernel(M: QMatrix) -> KernelResult:
    """
    Exact rank and right kernel

    Args:
        M: Input matrix

    Returns:
        KernelResult; basis vectors have a 1 in their free column and 0 in the other free columns
    """
    R, pivots = reduced_echelon(M)
    free = [j for j in range(M.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        basis.append(tuple(v))
    return KernelResult(rank=len(pivots), basis=tuple(basis), pivots=tuple(pivots))


def solve(M: QMatrix, rhs: Sequence[Number]) -> Tuple[Fraction, ...]:
    """
    One exact solution x of M x = rhs

    Raises:
        InvalidInputError: if the system is inconsistent
    """
    aug = QMatrix.from_rows([list(M.row(i)) + [rhs[i]] for i in range(M.rows)])
    R, pivots = reduced_echelon(aug)
    if M.cols in pivots:
        raise InvalidInputError("Inconsistent linear system")
    x = [Fraction(0)] * M.cols
    for i, c in enumerate(pivots):
        x[c] = R[i][M.cols]
    return tuple(x)


def in_span(vectors: Sequence[Sequence[Number]], target: Sequence[Number]) -> bool:
    """Whether target is a linear combination of the given vectors"""
    if not vectors:
        return all(to_fraction(v) == 0 for v in target)
    base = rank(QMatrix.from_rows(vectors))
    return rank(QMatrix.from_rows(list(vectors) + [list(target)])) == base


def determinant(M: QMatrix) -> Fraction:
    """Exact determinant of a square matrix"""
    if M.rows != M.cols:
        raise InvalidInputError("determinant of a non-square matrix")
    if M.rows == 0:
        return Fraction(1)
    R, pivots = reduced_echelon(M)
    if len(pivots) < M.rows:
        return Fraction(0)
    # Bareiss: the last pivot is det up to the row-swap sign and denominators
    A = _integer_rows(M)
    scale = Fraction(1)
    for i in range(M.rows):
        den = lcm(*[v.denominator for v in M.row(i)])
        scale *= den
    sign = 1
    m = M.rows
    prev = 1
    for c in range(m):
        piv = next((i for i in range(c, m) if A[i][c] != 0), None)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        p = A[c][c]
        for i in range(c + 1, m):
            for j in range(c + 1, m):
                A[i][j] = (p * A[i][j] - A[i][c] * A[c][j]) // prev
            A[i][c] = 0
        prev = p
    return Fraction(sign * A[m - 1][m - 1]) / scale
