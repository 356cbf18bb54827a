"""Exact solver for the rank-one intertwiner equations, by coefficient matching.

The intertwiner equation for f(∂, λ) with parameters (a, b, Δ_i, c_i, Δ_j, c_j) reads

    (−λ−μ+aλ+b)·f(∂, λ+μ) = f(∂+λ, μ)·(∂+Δ_iλ+c_i) − (∂+μ+Δ_jλ+c_j)·f(∂, μ)

and its homogeneous form drops b, c_i, c_j. Unknowns are the coefficients of the
monomials ∂^p λ^q up to the degree bound; the residual is linear in them, so the
solution space is an exact nullspace.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable
from exceptions import NotASolution
from services.exactpoly import (
    D,
    LAM,
    MU,
    POLY_RING,
    MultiPoly,
    Scalar,
    degree_in,
    is_scalar_multiple,
    normalize_leading,
    render,
    render_scalar,
    scalar,
    substitute,
    substitute_many,
    top_homogeneous_part,
    total_degree,
)
from services.linsolve import nullspace
from services.polyparse import parse_scalar
from services.reports import CheckReport


@dataclass(frozen=True)
class FuncEqInstance:
    a: Scalar
    b: Scalar
    delta_i: Scalar
    c_i: Scalar
    delta_j: Scalar
    c_j: Scalar
    degree_bound: int = 3
    homogeneous_degree: int | None = None

    def __post_init__(self):
        if self.degree_bound < 0:
            raise ValueError("degree bound must be non-negative")

    @staticmethod
    def of(a=0, b=0, delta_i=0, c_i=0, delta_j=0, c_j=0, degree_bound=3, homogeneous_degree=None) -> "FuncEqInstance":
        """Builds an instance from anything parse_scalar accepts."""
        return FuncEqInstance(
            a=parse_scalar(a),
            b=parse_scalar(b),
            delta_i=parse_scalar(delta_i),
            c_i=parse_scalar(c_i),
            delta_j=parse_scalar(delta_j),
            c_j=parse_scalar(c_j),
            degree_bound=int(degree_bound),
            homogeneous_degree=None if homogeneous_degree is None else int(homogeneous_degree),
        )

    def describe(self) -> dict[str, str]:
        return {
            "a": render_scalar(self.a),
            "b": render_scalar(self.b),
            "delta_i": render_scalar(self.delta_i),
            "c_i": render_scalar(self.c_i),
            "delta_j": render_scalar(self.delta_j),
            "c_j": render_scalar(self.c_j),
        }


@dataclass(frozen=True)
class SolutionBasis:
    basis: tuple[MultiPoly, ...] = field(default_factory=tuple)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def rendered(self) -> list[str]:
        return [render(p) for p in self.basis]


def intertwiner_residual(inst: FuncEqInstance, f: MultiPoly) -> MultiPoly:
    lhs = (-LAM - MU + LAM * inst.a + inst.b) * substitute(f, LAM, LAM + MU)
    right = substitute_many(f, [(D, D + LAM), (LAM, MU)]) * (D + LAM * inst.delta_i + inst.c_i)
    left = (D + MU + LAM * inst.delta_j + inst.c_j) * substitute(f, LAM, MU)
    return lhs - right + left


def homogeneous_residual(a: Scalar, delta_i: Scalar, delta_j: Scalar, f: MultiPoly) -> MultiPoly:
    zero = scalar(0)
    return intertwiner_residual(FuncEqInstance(a, zero, delta_i, zero, delta_j, zero, 0), f)


def swapped_residual(inst: FuncEqInstance, f: MultiPoly) -> MultiPoly:
    """The orientation with f(∂+μ, λ) in place of f(∂+λ, μ) on the right-hand side."""
    lhs = (-LAM - MU + LAM * inst.a + inst.b) * substitute(f, LAM, LAM + MU)
    right = substitute(f, D, D + MU) * (D + LAM * inst.delta_i + inst.c_i)
    left = (D + MU + LAM * inst.delta_j + inst.c_j) * substitute(f, LAM, MU)
    return lhs - right + left


def unknown_monomials(degree_bound: int, exact_degree: int | None = None) -> list[tuple]:
    """∂^p λ^q in graded-lex order with ∂ > λ, highest first."""
    degrees = [exact_degree] if exact_degree is not None else range(degree_bound, -1, -1)
    return [(p, t - p, 0, 0) for t in degrees for p in range(t, -1, -1)]


def solve_linear(residual: Callable[[MultiPoly], MultiPoly], monomials: list[tuple]) -> SolutionBasis:
    columns = [residual(POLY_RING({m: scalar(1)})) for m in monomials]
    keys = sorted({m for col in columns for m in col.keys()}, reverse=True)
    zero = scalar(0)
    rows = [[col.get(key, zero) for col in columns] for key in keys]
    basis = []
    for vec in nullspace(rows, len(monomials)):
        basis.append(normalize_leading(POLY_RING({m: c for m, c in zip(monomials, vec) if c})))
    return SolutionBasis(tuple(basis))


def solve_intertwiner(inst: FuncEqInstance) -> SolutionBasis:
    monomials = unknown_monomials(inst.degree_bound, inst.homogeneous_degree)
    return solve_linear(lambda f: intertwiner_residual(inst, f), monomials)


@lru_cache(maxsize=None)
def solve_homogeneous(a: Scalar, delta_i: Scalar, delta_j: Scalar, k: int) -> SolutionBasis:
    if k < 0:
        return SolutionBasis()
    return solve_linear(lambda f: homogeneous_residual(a, delta_i, delta_j, f), unknown_monomials(k, k))


def solve_swapped_intertwiner(inst: FuncEqInstance) -> SolutionBasis:
    monomials = unknown_monomials(inst.degree_bound, inst.homogeneous_degree)
    return solve_linear(lambda f: swapped_residual(inst, f), monomials)


@dataclass(frozen=True)
class DegreeOffset:
    expected: Scalar
    total_degree: int
    lambda_degree: int
    holds: bool


def degree_offset(f: MultiPoly, a, delta_i, delta_j) -> DegreeOffset:
    """Checks that a solution has total degree s = a + Δ_j − Δ_i − 1 (and λ-degree s when Δ_i ≠ 0).

    The top homogeneous part of any solution solves the homogeneous equation, so
    that is what gets checked.
    """
    a, delta_i, delta_j = parse_scalar(a), parse_scalar(delta_i), parse_scalar(delta_j)
    if not f:
        raise NotASolution("the zero polynomial carries no degree")
    top = top_homogeneous_part(f)
    defect = homogeneous_residual(a, delta_i, delta_j, top)
    if defect:
        raise NotASolution(f"{render(top)} leaves the defect {render(defect)}")
    s = a + delta_j - delta_i - 1
    total = total_degree(top)
    lam = degree_in(top, LAM)
    holds = s == scalar(total) and (not delta_i or s == scalar(lam))
    return DegreeOffset(expected=s, total_degree=total, lambda_degree=lam, holds=holds)


@dataclass(frozen=True)
class TableRow:
    """One row of the homogeneous solution table; the callables take the row's free parameters."""

    row_id: str
    k: int
    free: tuple[str, ...]
    params: Callable[..., tuple[Scalar, Scalar, Scalar]]
    solution: Callable[..., MultiPoly]
    admissible: Callable[..., bool] = lambda *args: True


def _q(text: str) -> Scalar:
    return parse_scalar(text)


def _row_1c(a):
    di = a - 2
    return D**2 - D * LAM * ((1 + di * 2) / (1 - a)) - LAM**2 * (di / (1 - a))


SOLUTION_TABLE: tuple[TableRow, ...] = (
    TableRow(
        "1a", 0, ("a", "delta_i"),
        params=lambda a, di: (a, di, di + 1 - a),
        solution=lambda a, di: POLY_RING.one,
        admissible=lambda a, di: a != scalar(1) and bool(di),
    ),
    TableRow(
        "1b", 1, ("a", "delta_i"),
        params=lambda a, di: (a, di, di + 2 - a),
        solution=lambda a, di: D - LAM * (di / (1 - a)),
        admissible=lambda a, di: a != scalar(1) and bool(di),
    ),
    TableRow(
        "1c", 2, ("a",),
        params=lambda a: (a, a - 2, scalar(1)),
        solution=_row_1c,
        admissible=lambda a: a != scalar(1) and a != scalar(2),
    ),
    TableRow(
        "1d", 3, (),
        params=lambda: (_q("5/3"), _q("-2/3"), _q("5/3")),
        solution=lambda: D**3 + D**2 * LAM * _q("3/2") - D * LAM**2 * _q("3/2") - LAM**3,
    ),
    TableRow(
        "2a", 0, ("delta_i",),
        params=lambda di: (scalar(1), di, di),
        solution=lambda di: POLY_RING.one,
        admissible=lambda di: bool(di),
    ),
    TableRow(
        "2b", 1, ("delta_i",),
        params=lambda di: (scalar(1), di, di + 1),
        solution=lambda di: LAM,
        admissible=lambda di: bool(di),
    ),
    TableRow(
        "2c", 2, ("delta_i",),
        params=lambda di: (scalar(1), di, di + 2),
        solution=lambda di: LAM * (D - LAM * di),
        admissible=lambda di: bool(di),
    ),
    TableRow(
        "2d", 3, (),
        params=lambda: (scalar(1), scalar(-2), scalar(1)),
        solution=lambda: LAM * (D**2 + D * LAM * 3 + LAM**2 * 2),
    ),
)


def sample_points(row: TableRow, samples: list[Scalar]) -> list[tuple[Scalar, ...]]:
    """Every sample for one free parameter; the second parameter walks the samples shifted by one."""
    if not row.free:
        return [()]
    n = len(samples)
    points = [tuple(samples[(i + shift) % n] for shift in range(len(row.free))) for i in range(n)]
    return [p for p in points if row.admissible(*p)]


@dataclass
class TableVerification:
    report: CheckReport
    rows: list[dict] = field(default_factory=list)


def verify_solution_table(samples: list, perturbations: list) -> TableVerification:
    """Checks every table row: the stated f solves, the solver finds exactly it, perturbations kill it."""
    samples = [parse_scalar(s) for s in samples]
    perturbations = [parse_scalar(e) for e in perturbations]
    result = TableVerification(CheckReport(title="homogeneous solution table"))
    report = result.report

    for row in SOLUTION_TABLE:
        for point in sample_points(row, samples):
            a, di, dj = row.params(*point)
            tag = ",".join(render_scalar(v) for v in (a, di, dj))
            f = row.solution(*point)
            defect = homogeneous_residual(a, di, dj, f)
            report.record(f"row[{row.row_id}];solves;({tag})", not defect, [render(defect)] if defect else [])

            found = solve_homogeneous(a, di, dj, row.k)
            ok = found.dimension == 1 and is_scalar_multiple(found.basis[0], f)
            report.record(f"row[{row.row_id}];dim;({tag})", ok, found.rendered(), f"expected 1, found {found.dimension}")

            wider = solve_intertwiner(FuncEqInstance(a, scalar(0), di, scalar(0), dj, scalar(0), 2 * row.k))
            report.record(f"row[{row.row_id}];stable;({tag})", wider.dimension == 1, wider.rendered())

            offset = degree_offset(f, a, di, dj)
            report.record(f"row[{row.row_id}];offset;({tag})", offset.holds, [render_scalar(offset.expected)])

            result.rows.append(
                {
                    "row": row.row_id,
                    "k": row.k,
                    "params": {"a": render_scalar(a), "delta_i": render_scalar(di), "delta_j": render_scalar(dj)},
                    "expected_dimension": 1,
                    "actual_dimension": found.dimension,
                    "defect_zero": not defect,
                }
            )
            for eps in perturbations:
                moved = solve_homogeneous(a, di, dj + eps, row.k)
                report.record(
                    f"row[{row.row_id}];perturbed[{render_scalar(eps)}];({tag})",
                    moved.dimension == 0,
                    moved.rendered(),
                )
                result.rows.append(
                    {
                        "row": row.row_id,
                        "k": row.k,
                        "params": {
                            "a": render_scalar(a),
                            "delta_i": render_scalar(di),
                            "delta_j": render_scalar(dj + eps),
                        },
                        "expected_dimension": 0,
                        "actual_dimension": moved.dimension,
                        "defect_zero": None,
                    }
                )
    return result
