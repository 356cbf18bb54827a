"""Smith normal form of matrices over ℂ[∂] and the free/torsion split it gives."""

from dataclasses import dataclass
import yaml
from exceptions import InvalidStructure, ParseError
from services.exactpoly import D, ZERO, MultiPoly, const, degree_in, render, scalar, uses_only
from services.polyparse import parse_poly


def d_degree(p: MultiPoly) -> int:
    return degree_in(p, D) if p else -1


def d_lead(p: MultiPoly):
    return p.get((d_degree(p), 0, 0, 0))


def divide(p: MultiPoly, q: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Quotient and remainder of univariate division by a nonzero q."""
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    quot, rem = ZERO, p
    dq, lq = d_degree(q), d_lead(q)
    while rem and d_degree(rem) >= dq:
        term = D ** (d_degree(rem) - dq) * (d_lead(rem) / lq)
        quot = quot + term
        rem = rem - term * q
    return quot, rem


def is_unit(p: MultiPoly) -> bool:
    return bool(p) and d_degree(p) == 0


def monic(p: MultiPoly) -> MultiPoly:
    return p.mul_ground(scalar(1) / d_lead(p)) if p else p


@dataclass(frozen=True)
class PolyMatrix:
    rows: tuple[tuple[MultiPoly, ...], ...]
    nrows: int
    ncols: int

    @staticmethod
    def of(rows: list[list[MultiPoly]], ncols: int | None = None) -> "PolyMatrix":
        width = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        if any(len(row) != width for row in rows):
            raise InvalidStructure("matrix rows must have equal length")
        for row in rows:
            for entry in row:
                if not uses_only(entry, (D,)):
                    raise InvalidStructure(f"entry {render(entry)} is not univariate in d")
        return PolyMatrix(tuple(tuple(row) for row in rows), len(rows), width)

    @staticmethod
    def identity(n: int) -> "PolyMatrix":
        return PolyMatrix.of([[const(1) if i == j else ZERO for j in range(n)] for i in range(n)], n)

    def to_lists(self) -> list[list[MultiPoly]]:
        return [list(row) for row in self.rows]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise InvalidStructure(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = ZERO
                for k in range(self.ncols):
                    if self.rows[i][k] and other.rows[k][j]:
                        acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix.of(out, other.ncols)

    def diagonal(self) -> list[MultiPoly]:
        return [self.rows[i][i] for i in range(min(self.nrows, self.ncols))]

    def render(self) -> list[list[str]]:
        return [[render(p) for p in row] for row in self.rows]


def parse_matrix(text: str) -> PolyMatrix:
    """Reads a YAML/JSON-style nested list of polynomial strings, e.g. ``[[d, 1], [0, d]]``."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ParseError(f"matrix is not a nested list: {e}") from e
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise ParseError("matrix must be a list of rows")
    return PolyMatrix.of([[parse_poly(str(entry)) for entry in row] for row in data])


def determinant(M: PolyMatrix) -> MultiPoly:
    if M.nrows != M.ncols:
        raise InvalidStructure("determinant needs a square matrix")
    return _det(M.to_lists())


def _det(rows: list[list[MultiPoly]]) -> MultiPoly:
    n = len(rows)
    if n == 0:
        return const(1)
    if n == 1:
        return rows[0][0]
    total = ZERO
    for j, entry in enumerate(rows[0]):
        if not entry:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = entry * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


class _Reducer:
    """Elementary operations on a working matrix, mirrored into U (rows) and V (columns)."""

    def __init__(self, M: PolyMatrix):
        self.a = M.to_lists()
        self.u = PolyMatrix.identity(M.nrows).to_lists()
        self.v = PolyMatrix.identity(M.ncols).to_lists()
        self.m, self.n = M.nrows, M.ncols

    def swap_rows(self, i: int, k: int):
        if i != k:
            self.a[i], self.a[k] = self.a[k], self.a[i]
            self.u[i], self.u[k] = self.u[k], self.u[i]

    def swap_cols(self, j: int, k: int):
        if j != k:
            for row in self.a:
                row[j], row[k] = row[k], row[j]
            for row in self.v:
                row[j], row[k] = row[k], row[j]

    def add_row(self, target: int, source: int, factor: MultiPoly):
        """row_target += factor·row_source"""
        for mat in (self.a, self.u):
            mat[target] = [t + factor * s for t, s in zip(mat[target], mat[source])]

    def add_col(self, target: int, source: int, factor: MultiPoly):
        for mat in (self.a, self.v):
            for row in mat:
                row[target] = row[target] + factor * row[source]

    def scale_row(self, i: int, c):
        for mat in (self.a, self.u):
            mat[i] = [p.mul_ground(c) for p in mat[i]]

    def smallest(self, t: int) -> tuple[int, int] | None:
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                p = self.a[i][j]
                if p and (best is None or d_degree(p) < d_degree(self.a[best[0]][best[1]])):
                    best = (i, j)
        return best

    def clear(self, t: int) -> bool:
        """Eliminates row t and column t off the pivot; False if a remainder survived."""
        pivot = self.a[t][t]
        clean = True
        for i in range(t + 1, self.m):
            if self.a[i][t]:
                q, r = divide(self.a[i][t], pivot)
                self.add_row(i, t, -q)
                clean = clean and not r
        for j in range(t + 1, self.n):
            if self.a[t][j]:
                q, r = divide(self.a[t][j], pivot)
                self.add_col(j, t, -q)
                clean = clean and not r
        return clean

    def non_divisible_row(self, t: int) -> int | None:
        pivot = self.a[t][t]
        for i in range(t + 1, self.m):
            for j in range(t + 1, self.n):
                if self.a[i][j] and divide(self.a[i][j], pivot)[1]:
                    return i
        return None


def smith_normal_form(M: PolyMatrix) -> tuple[PolyMatrix, PolyMatrix, PolyMatrix]:
    """Returns (U, S, V) with U·M·V = S, U and V unimodular, S diagonal with d_1 | d_2 | ….

    Pivots are the smallest-degree nonzero entry of the remaining block, first in
    row-major order; nonzero invariants are monic.
    """
    red = _Reducer(M)
    for t in range(min(red.m, red.n)):
        while True:
            found = red.smallest(t)
            if found is None:
                break
            red.swap_rows(t, found[0])
            red.swap_cols(t, found[1])
            if not red.clear(t):
                continue
            bad = red.non_divisible_row(t)
            if bad is None:
                break
            red.add_row(t, bad, const(1))
        if red.a[t][t]:
            red.scale_row(t, scalar(1) / d_lead(red.a[t][t]))
        else:
            break
    return (
        PolyMatrix.of(red.u, red.m),
        PolyMatrix.of(red.a, red.n),
        PolyMatrix.of(red.v, red.n),
    )


def torsion_split(presentation: PolyMatrix) -> tuple[int, list[MultiPoly]]:
    """Free rank and torsion invariants of ℂ[∂]^rows / (column span of the presentation)."""
    _, S, _ = smith_normal_form(presentation)
    invariants = [p for p in S.diagonal() if p]
    free_rank = presentation.nrows - len(invariants)
    torsion = [monic(p) for p in invariants if not is_unit(p)]
    return free_rank, torsion
