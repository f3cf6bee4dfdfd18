"""Exact rational linear algebra on top of sympy's ``DomainMatrix`` over ``QQ``.

Matrices act on column vectors: a map ``V -> W`` between spaces of dimension ``n`` and
``m`` is an ``m x n`` matrix, and ``compose(g, f)`` is ``g . f``. Every matrix is kept
in sympy's sparse format so that entries are always plain ``QQ`` elements.
"""
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import ShapeMismatchError

Matrix = DomainMatrix
Vector = List

ZERO = QQ(0)
ONE = QQ(1)


def qq(value):
    if QQ.of_type(value):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not rationals.")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        value = Fraction(value.strip())
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ.convert(value)


def fraction_str(value) -> str:
    value = qq(value)
    num, den = int(value.numerator), int(value.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def matrix(rows: Iterable[Sequence], nrows: int, ncols: int) -> Matrix:
    rows = [[qq(x) for x in row] for row in rows]
    if len(rows) != nrows or any(len(row) != ncols for row in rows):
        raise ShapeMismatchError(f"Expected a {nrows}x{ncols} matrix.")
    if nrows == 0 or ncols == 0:
        return zeros(nrows, ncols)
    return DomainMatrix(rows, (nrows, ncols), QQ, fmt="sparse")


def zeros(nrows: int, ncols: int) -> Matrix:
    return DomainMatrix.zeros((nrows, ncols), QQ)


def identity(n: int) -> Matrix:
    if n == 0:
        return zeros(0, 0)
    return DomainMatrix.eye(n, QQ).to_sparse()


def rows(m: Matrix) -> List[List]:
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return [[] for _ in range(nrows)]
    return [list(row) for row in m.to_list()]


def entry(m: Matrix, i: int, j: int):
    return m[i, j].element


def compose(*matrices: Matrix) -> Matrix:
    """``compose(h, g, f) == h . g . f``."""
    result = matrices[-1]
    for m in reversed(matrices[:-1]):
        if m.shape[1] != result.shape[0]:
            raise ShapeMismatchError(f"Cannot compose {m.shape} after {result.shape}.")
        if m.shape[1] == 0 or m.shape[0] == 0 or result.shape[1] == 0:
            result = zeros(m.shape[0], result.shape[1])
        else:
            result = m * result
    return result


def add(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise ShapeMismatchError(f"Cannot add {a.shape} and {b.shape}.")
    return a + b


def sub(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise ShapeMismatchError(f"Cannot subtract {b.shape} from {a.shape}.")
    return a - b


def is_zero(m: Matrix) -> bool:
    return all(x == ZERO for row in rows(m) for x in row)


def equal(a: Matrix, b: Matrix) -> bool:
    return a.shape == b.shape and rows(a) == rows(b)


def apply(m: Matrix, vector: Sequence) -> Vector:
    if len(vector) != m.shape[1]:
        raise ShapeMismatchError(f"Vector of length {len(vector)} for a {m.shape} matrix.")
    column = matrix([[x] for x in vector], len(vector), 1)
    return [row[0] for row in rows(compose(m, column))]


def from_columns(columns: Sequence[Sequence], nrows: int) -> Matrix:
    return matrix([[col[i] for col in columns] for i in range(nrows)], nrows, len(columns))


def block(blocks: Sequence[Sequence[Matrix]], row_dims: Sequence[int], col_dims: Sequence[int]) -> Matrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    kept_rows = [i for i, n in enumerate(row_dims) if n]
    kept_cols = [j for j, n in enumerate(col_dims) if n]
    if not kept_rows or not kept_cols:
        return zeros(sum(row_dims), sum(col_dims))
    strips = []
    for i in kept_rows:
        pieces = [blocks[i][j] if blocks[i][j] is not None else zeros(row_dims[i], col_dims[j]) for j in kept_cols]
        strips.append(DomainMatrix.hstack(*(p.to_sparse() for p in pieces)))
    return DomainMatrix.vstack(*strips)


def rref(vectors: Sequence[Sequence], ncols: int) -> Tuple[List[List], Tuple[int, ...]]:
    """Reduced row echelon form of the span of ``vectors``, zero rows dropped."""
    vectors = [list(v) for v in vectors]
    if not vectors or ncols == 0:
        return [], ()
    reduced, pivots = matrix(vectors, len(vectors), ncols).rref()
    return rows(reduced)[:len(pivots)], tuple(pivots)


def rank(vectors_or_matrix, ncols: int = None) -> int:
    if isinstance(vectors_or_matrix, DomainMatrix):
        nrows, ncols = vectors_or_matrix.shape
        if nrows == 0 or ncols == 0:
            return 0
        return vectors_or_matrix.rank()
    return len(rref(vectors_or_matrix, ncols)[1])


def nullspace(m: Matrix) -> List[List]:
    """The reduced echelon basis of ``{x : m x = 0}``."""
    nrows, ncols = m.shape
    if ncols == 0:
        return []
    if nrows == 0 or is_zero(m):
        return rows(identity(ncols))
    basis = m.to_dense().nullspace()
    if basis.shape[0] == 0:
        return []
    return rref(rows(basis), ncols)[0]


def annihilator(vectors: Sequence[Sequence], ncols: int) -> List[List]:
    """Vectors ``y`` with ``<x, y> == 0`` for every ``x`` in ``vectors``."""
    if not vectors:
        return rows(identity(ncols))
    return nullspace(matrix(vectors, len(vectors), ncols))


def reduce(vector: Sequence, reduced: Sequence[Sequence], pivots: Sequence[int]) -> Vector:
    """Subtract the echelon rows so the result vanishes on every pivot column."""
    vector = list(vector)
    for row, pivot in zip(reduced, pivots):
        c = vector[pivot]
        if c != ZERO:
            vector = [x - c * y for x, y in zip(vector, row)]
    return vector


def extend_basis(span: Sequence[Sequence], candidates: Iterable[Sequence], ncols: int) -> List[List]:
    """Pick candidates, in order, that are independent modulo ``span`` and each other."""
    reduced, pivots = rref(span, ncols)
    chosen = []
    for candidate in candidates:
        rest = reduce(candidate, reduced, pivots)
        if any(x != ZERO for x in rest):
            chosen.append(list(candidate))
            reduced, pivots = rref(reduced + [rest], ncols)
    return chosen


def to_strings(m: Matrix) -> List[List[str]]:
    return [[fraction_str(x) for x in row] for row in rows(m)]
