"""
Exact rational linear algebra: rank, determinant, reduced echelon form
and kernel bases, backed by sympy's DomainMatrix over QQ
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from enveloping import to_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix of exact rationals in row-major order"""
    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"Matrix dimensions must be non-negative: {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"Entry count {len(self.entries)} does not match {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int = None) -> "RationalMatrix":
        rows = [list(row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for k, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"Row {k} has {len(row)} entries, expected {cols}")
        entries = tuple(to_fraction(value) for row in rows for value in row)
        return cls(len(rows), cols, entries)

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[Mapping[int, Fraction]], cols: int) -> "RationalMatrix":
        entries = [Fraction(0)] * (len(rows) * cols)
        for r, row in enumerate(rows):
            for c, value in row.items():
                if not 0 <= c < cols:
                    raise ValueError(f"Column {c} out of range for {cols} columns")
                entries[r * cols + c] = to_fraction(value)
        return cls(len(rows), cols, tuple(entries))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[1 if r == c else 0 for c in range(n)] for r in range(n)], n)

    def __getitem__(self, index) -> Fraction:
        r, c = index
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> Tuple[Fraction, ...]:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(r)) for r in range(self.rows)]

    def submatrix(self, rows: int, cols: int) -> "RationalMatrix":
        """Leading rows x cols block"""
        if rows > self.rows or cols > self.cols:
            raise ValueError(f"Block {rows}x{cols} exceeds {self.rows}x{self.cols}")
        return RationalMatrix.from_rows([self.row(r)[:cols] for r in range(rows)], cols)

    def apply(self, vector: Sequence) -> List[Fraction]:
        """Matrix-vector product"""
        if len(vector) != self.cols:
            raise ValueError(f"Vector length {len(vector)} does not match {self.cols} columns")
        vector = [to_fraction(v) for v in vector]
        return [sum((a * b for a, b in zip(self.row(r), vector)), Fraction(0)) for r in range(self.rows)]

    def to_domain_matrix(self) -> DomainMatrix:
        sparse: Dict[int, Dict[int, object]] = {}
        for r in range(self.rows):
            row = {}
            for c, value in enumerate(self.row(r)):
                if value:
                    row[c] = QQ(value.numerator, value.denominator)
            if row:
                sparse[r] = row
        return DomainMatrix(sparse, (self.rows, self.cols), QQ)


def _from_domain_matrix(dm: DomainMatrix) -> RationalMatrix:
    rows, cols = dm.shape
    sym = dm.to_Matrix()
    entries = tuple(Fraction(int(sym[r, c].p), int(sym[r, c].q)) for r in range(rows) for c in range(cols))
    return RationalMatrix(rows, cols, entries)


def rank(matrix: RationalMatrix) -> int:
    if not any(matrix.entries):
        return 0
    return int(matrix.to_domain_matrix().rank())


def det(matrix: RationalMatrix) -> Fraction:
    if matrix.rows != matrix.cols:
        raise ValueError(f"Determinant needs a square matrix, got {matrix.rows}x{matrix.cols}")
    if matrix.rows == 0:
        return Fraction(1)
    value = matrix.to_domain_matrix().to_dense().det()
    return Fraction(int(value.numerator), int(value.denominator))


def rref(matrix: RationalMatrix) -> RationalMatrix:
    """Reduced row echelon form, same shape as the input"""
    if not any(matrix.entries):
        return matrix
    reduced, _pivots = matrix.to_domain_matrix().rref()
    return _from_domain_matrix(reduced)


def kernel_basis(matrix: RationalMatrix) -> List[List[Fraction]]:
    """Basis of {v : Mv = 0} in reduced echelon form, first nonzero coordinate 1"""
    if matrix.cols == 0:
        return []
    if matrix.rows == 0 or not any(matrix.entries):
        return RationalMatrix.identity(matrix.cols).to_rows()

    null = matrix.to_domain_matrix().nullspace()
    null_rows, _ = null.shape
    if null_rows == 0:
        return []
    # The echelon form of the spanning set is canonical for the kernel.
    spanning = _from_domain_matrix(null)
    basis = [row for row in rref(spanning).to_rows() if any(row)]
    logger.debug(f"Kernel of {matrix.rows}x{matrix.cols} matrix has dimension {len(basis)}")
    return basis


def main():
    """Try out the linear algebra"""
    ones = RationalMatrix.from_rows([[1, 1], [1, 1], [1, 1]])
    print("rank of all-ones 3x2:", rank(ones))
    print("det [[1,2],[2,6]]:", det(RationalMatrix.from_rows([[1, 2], [2, 6]])))
    print("kernel of all-ones 3x2:", kernel_basis(ones))


if __name__ == "__main__":
    main()
