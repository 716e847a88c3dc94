"""
Exact linear algebra for differential matrices.

Ranks over Q use fraction-free integer row elimination with a Markowitz-style
pivot choice (shortest row, then sparsest column). Ranks over GF(p) reduce the
entries mod p before any elimination; they are lower bounds for the rational rank.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional

from gcx.core.models import FieldChoice, RankReport
from gcx.errors import DimensionMismatchError, SmsFormatError

logger = logging.getLogger(__name__)

PRIME = 32003


@dataclass
class SparseMatrix:
    """rows x cols matrix; entries maps 0-based (row, col) to a nonzero rational."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for (i, j), value in list(self.entries.items()):
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise DimensionMismatchError(
                    f"Entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix"
                )
            if value == 0:
                del self.entries[(i, j)]
            else:
                self.entries[(i, j)] = Fraction(value)

    @classmethod
    def from_dense(cls, dense: list[list]) -> "SparseMatrix":
        rows = len(dense)
        cols = len(dense[0]) if dense else 0
        entries = {
            (i, j): Fraction(value)
            for i, row in enumerate(dense)
            for j, value in enumerate(row)
            if value
        }
        return cls(rows, cols, entries)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def set(self, i: int, j: int, value) -> None:
        if value:
            self.entries[(i, j)] = Fraction(value)
        else:
            self.entries.pop((i, j), None)

    def to_dense(self) -> list[list[Fraction]]:
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), value in self.entries.items():
            dense[i][j] = value
        return dense

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def column(self, j: int) -> dict[int, Fraction]:
        return {i: v for (i, c), v in self.entries.items() if c == j}

    def integer_scaled(self) -> "SparseMatrix":
        """Each column times the lcm of its denominators; the rank is unchanged."""
        scale: dict[int, int] = {}
        for (_, j), value in self.entries.items():
            scale[j] = lcm(scale.get(j, 1), value.denominator)
        return SparseMatrix(
            self.rows,
            self.cols,
            {(i, j): value * scale[j] for (i, j), value in self.entries.items()},
        )

    def apply(self, vector: list[Fraction]) -> list[Fraction]:
        if len(vector) != self.cols:
            raise DimensionMismatchError(f"Vector of length {len(vector)} for {self.cols} columns")
        result = [Fraction(0)] * self.rows
        for (i, j), value in self.entries.items():
            result[i] += value * vector[j]
        return result


# === Sparse Elimination ===


def _integer_rows(matrix: SparseMatrix) -> dict[int, dict[int, int]]:
    """Rows scaled to primitive integer vectors; for ranks over Q only."""
    rows: dict[int, dict[int, Fraction]] = {}
    for (i, j), value in matrix.entries.items():
        rows.setdefault(i, {})[j] = value
    result = {}
    for i, row in rows.items():
        denominator = 1
        for value in row.values():
            denominator = lcm(denominator, value.denominator)
        result[i] = _primitive({j: int(v * denominator) for j, v in row.items()})
    return result


def _residue_rows(matrix: SparseMatrix, prime: int) -> dict[int, dict[int, int]]:
    """Rows reduced entrywise into GF(prime), with no rescaling over Z first."""
    rows: dict[int, dict[int, int]] = {}
    for (i, j), value in matrix.entries.items():
        residue = value.numerator * pow(value.denominator, -1, prime) % prime
        if residue:
            rows.setdefault(i, {})[j] = residue
    return rows


def _primitive(row: dict[int, int]) -> dict[int, int]:
    content = 0
    for value in row.values():
        content = gcd(content, value)
    if content > 1:
        return {j: v // content for j, v in row.items()}
    return row


def _combine(
    target: dict[int, int], row: dict[int, int], c: int, prime: Optional[int]
) -> dict[int, int]:
    """Clear column c of target using the pivot row."""
    factor, pivot = target[c], row[c]
    if prime is None:
        combined = {j: pivot * v for j, v in target.items()}
        for j, v in row.items():
            combined[j] = combined.get(j, 0) - factor * v
        return _primitive({j: v for j, v in combined.items() if v})
    ratio = factor * pow(pivot, -1, prime) % prime
    combined = dict(target)
    for j, v in row.items():
        combined[j] = (combined.get(j, 0) - ratio * v) % prime
    return {j: v for j, v in combined.items() if v}


def _eliminate(rows: dict[int, dict[int, int]], prime: Optional[int]) -> int:
    rows = {i: row for i, row in rows.items() if row}
    column_rows: dict[int, set[int]] = {}
    for i, row in rows.items():
        for j in row:
            column_rows.setdefault(j, set()).add(i)

    rank = 0
    while rows:
        r = min(rows, key=lambda i: (len(rows[i]), i))
        row = rows.pop(r)
        for j in row:
            column_rows[j].discard(r)
        c = min(row, key=lambda j: (len(column_rows[j]), j))
        rank += 1
        for i in sorted(column_rows[c]):
            old = rows[i]
            new = _combine(old, row, c, prime)
            for j in old.keys() - new.keys():
                column_rows[j].discard(i)
            for j in new.keys() - old.keys():
                column_rows.setdefault(j, set()).add(i)
            if new:
                rows[i] = new
            else:
                del rows[i]
    return rank


def rank(matrix: SparseMatrix, prime: Optional[int] = None) -> int:
    """Rank over Q, or over GF(prime) when a prime is given."""
    if matrix.nnz == 0:
        return 0
    rows = _integer_rows(matrix) if prime is None else _residue_rows(matrix, prime)
    result = _eliminate(rows, prime)
    logger.debug(
        "rank %d for %dx%d (nnz=%d, prime=%s)", result, matrix.rows, matrix.cols, matrix.nnz, prime
    )
    return result


def rank_report(
    matrix: SparseMatrix, field_choice: FieldChoice = FieldChoice.RATIONAL
) -> RankReport:
    prime = PRIME if field_choice == FieldChoice.GF32003 else None
    return RankReport(
        rows=matrix.rows,
        cols=matrix.cols,
        rank=rank(matrix, prime),
        field=field_choice,
        lower_bound=prime is not None,
    )


# === Dense Oracles ===


def bareiss_rank(dense: list[list]) -> int:
    """Rank of a small integer or rational matrix by fraction-free Bareiss elimination."""
    if not dense or not dense[0]:
        return 0
    scaled = []
    for row in dense:
        fractions = [Fraction(v) for v in row]
        denominator = 1
        for value in fractions:
            denominator = lcm(denominator, value.denominator)
        scaled.append([int(v * denominator) for v in fractions])
    m, n = len(scaled), len(scaled[0])
    a = [row[:] for row in scaled]
    previous = 1
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // previous
            a[i][c] = 0
        previous = a[r][c]
        r += 1
        if r == m:
            break
    return r


def _rref(dense: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    a = [[Fraction(v) for v in row] for row in dense]
    m = len(a)
    n = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inverse = 1 / a[r][c]
        a[r] = [v * inverse for v in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                factor = a[i][c]
                a[i] = [v - factor * w for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def nullspace(matrix: SparseMatrix) -> list[list[Fraction]]:
    """A basis of the kernel of matrix, one vector of length cols per element."""
    reduced, pivots = _rref(matrix.to_dense())
    free = [c for c in range(matrix.cols) if c not in pivots]
    basis = []
    for f in free:
        vector = [Fraction(0)] * matrix.cols
        vector[f] = Fraction(1)
        for row, c in enumerate(pivots):
            vector[c] = -reduced[row][f]
        basis.append(vector)
    return basis


def in_column_span(
    matrix: SparseMatrix, vector: list
) -> tuple[bool, Optional[list[Fraction]]]:
    """
    Whether vector = matrix * x for some rational x, with x as certificate.

    A returned certificate is checked by multiplication. A negative answer is
    checked by the rank of the augmented matrix.

    Raises:
        DimensionMismatchError: If the vector length differs from the row count
    """
    if len(vector) != matrix.rows:
        raise DimensionMismatchError(
            f"Vector of length {len(vector)} for a matrix with {matrix.rows} rows", field="vector"
        )
    target = [Fraction(v) for v in vector]
    dense = matrix.to_dense()
    augmented = [row + [target[i]] for i, row in enumerate(dense)]
    reduced, pivots = _rref(augmented)
    if matrix.cols in pivots:
        augmented_matrix = SparseMatrix.from_dense(augmented) if augmented else matrix
        assert rank(augmented_matrix) == rank(matrix) + 1
        return False, None
    solution = [Fraction(0)] * matrix.cols
    for row, c in enumerate(pivots):
        solution[c] = reduced[row][matrix.cols]
    assert matrix.apply(solution) == target
    return True, solution


# === SMS Format ===


def to_sms(matrix: SparseMatrix) -> str:
    """
    Render as SMS text: a `rows cols M` header, 1-based `i j value` lines sorted
    by row then column, and a closing `0 0 0`.

    Raises:
        SmsFormatError: If an entry is not an integer
    """
    lines = [f"{matrix.rows} {matrix.cols} M"]
    for (i, j), value in sorted(matrix.entries.items()):
        if value.denominator != 1:
            raise SmsFormatError(f"Non-integer entry {value} at ({i + 1}, {j + 1})")
        lines.append(f"{i + 1} {j + 1} {value.numerator}")
    lines.append("0 0 0")
    return "\n".join(lines) + "\n"


def parse_sms(text: str) -> SparseMatrix:
    """
    Raises:
        SmsFormatError: On a bad header, malformed triplet, out-of-range index
            or missing terminator
    """
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines:
        raise SmsFormatError("Empty SMS text")
    header = lines[0].split()
    if len(header) != 3 or header[2] != "M":
        raise SmsFormatError(f"Bad SMS header: {lines[0]!r}")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError as e:
        raise SmsFormatError(f"Bad SMS header: {lines[0]!r}") from e
    if lines[-1].split() != ["0", "0", "0"]:
        raise SmsFormatError("Missing 0 0 0 terminator")

    matrix = SparseMatrix(rows, cols)
    for number, line in enumerate(lines[1:-1], start=2):
        parts = line.split()
        if len(parts) != 3:
            raise SmsFormatError(f"line {number}: expected 'i j value', got {line!r}")
        try:
            i, j, value = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError as e:
            raise SmsFormatError(f"line {number}: non-integer field in {line!r}") from e
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise SmsFormatError(f"line {number}: index ({i}, {j}) outside {rows}x{cols}")
        matrix.set(i - 1, j - 1, value)
    return matrix
