"""Lie conformal algebras stored as λ-bracket structure tables.

A table entry ``table[(i, j)] = {k: p}`` means [g_i λ g_j] = Σ_k p(∂, λ)·g_k.
Both orders of every pair are stored; skew-symmetry is checked, never assumed.
"""

from dataclasses import dataclass, field
from itertools import product
from math import factorial
from exceptions import TruncationExceeded, UnknownGenerator
from services.exactpoly import (
    D,
    LAM,
    MU,
    ONE,
    ZERO,
    MultiPoly,
    Scalar,
    coeff_of,
    render,
    scalar,
    substitute,
    substitute_many,
)
from services.reports import CheckReport

Vector = dict[int, MultiPoly]


@dataclass(frozen=True, eq=False)
class ConformalAlgebra:
    name: str
    gens: tuple[str, ...]
    table: dict[tuple[int, int], Vector]
    grading: tuple[int, ...] | None = None
    truncation: int | None = None
    virasoro: str | None = None

    def index(self, label: str) -> int:
        try:
            return self.gens.index(label)
        except ValueError as e:
            raise UnknownGenerator(f"'{label}' is not a generator of {self.name}") from e

    def grade(self, i: int) -> int:
        return self.grading[i] if self.grading else i

    def has_entry(self, i: int, j: int) -> bool:
        if self.grading is None or self.truncation is None:
            return True
        return self.grading[i] + self.grading[j] <= self.truncation

    def entry(self, i: int, j: int) -> Vector:
        if not self.has_entry(i, j):
            raise TruncationExceeded(
                f"[{self.gens[i]} λ {self.gens[j]}] lies beyond truncation {self.truncation}"
            )
        return self.table.get((i, j), {})

    def structure_poly(self, i: int, j: int, k: int) -> MultiPoly:
        return self.entry(i, j).get(k, ZERO)

    def graded_target(self, i: int, j: int) -> int | None:
        """Index of the generator of grade grade(i)+grade(j), if there is one."""
        if self.grading is None:
            return None
        wanted = self.grading[i] + self.grading[j]
        return self.grading.index(wanted) if wanted in self.grading else None

    def pair_poly(self, i: int, j: int) -> MultiPoly:
        """p_{i,j} for graded tables, where every bracket has a single target."""
        vec = self.entry(i, j)
        if not vec:
            return ZERO
        (poly,) = vec.values()
        return poly

    def virasoro_index(self) -> int:
        if self.virasoro is not None:
            return self.index(self.virasoro)
        if self.grading is not None and 0 in self.grading:
            return self.grading.index(0)
        return 0


@dataclass(frozen=True)
class AlgebraElement:
    coords: dict[int, MultiPoly] = field(default_factory=dict)

    @staticmethod
    def of(i: int, poly: MultiPoly = ONE) -> "AlgebraElement":
        return AlgebraElement({i: poly})

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(add_vectors(self.coords, other.coords))

    def times(self, poly: MultiPoly) -> "AlgebraElement":
        return AlgebraElement(clean_vector({i: p * poly for i, p in self.coords.items()}))


def clean_vector(vec: Vector) -> Vector:
    return {k: vec[k] for k in sorted(vec) if vec[k]}


def add_vectors(*vectors: Vector, signs: tuple[int, ...] | None = None) -> Vector:
    total: Vector = {}
    for n, vec in enumerate(vectors):
        sign = signs[n] if signs else 1
        for k, poly in vec.items():
            total[k] = total.get(k, ZERO) + poly * sign
    return clean_vector(total)


def render_vector(A: ConformalAlgebra, vec: Vector) -> str:
    if not vec:
        return "0"
    return " + ".join(f"({render(p)})*{A.gens[k]}" for k, p in clean_vector(vec).items())


def bracket(A: ConformalAlgebra, x: AlgebraElement, y: AlgebraElement) -> Vector:
    """[f(∂)g_i λ h(∂)g_j] = f(−λ)·h(∂+λ)·[g_i λ g_j], extended bilinearly."""
    result: Vector = {}
    for (i, f), (j, h) in product(x.coords.items(), y.coords.items()):
        entry = A.entry(i, j)
        if not entry:
            continue
        factor = substitute(f, D, -LAM) * substitute(h, D, D + LAM)
        for k, p in entry.items():
            result[k] = result.get(k, ZERO) + factor * p
    return clean_vector(result)


def jth_product(A: ConformalAlgebra, x: AlgebraElement, y: AlgebraElement, j: int) -> AlgebraElement:
    if j < 0:
        raise ValueError("j-th products need j >= 0")
    vec = bracket(A, x, y)
    return AlgebraElement(clean_vector({k: coeff_of(p, LAM, j) * factorial(j) for k, p in vec.items()}))


def skew_defect(A: ConformalAlgebra, i: int, j: int) -> Vector:
    """p_{i,j}(∂,λ) + p_{j,i}(∂,−λ−∂) per target."""
    flipped = {k: substitute(p, LAM, -LAM - D) for k, p in A.entry(j, i).items()}
    return add_vectors(A.entry(i, j), flipped)


def check_skew(A: ConformalAlgebra) -> CheckReport:
    report = CheckReport(title=f"skew-symmetry of {A.name}")
    n = len(A.gens)
    for i in range(n):
        for j in range(i, n):
            check_id = f"skew[{A.gens[i]},{A.gens[j]}]"
            if not A.has_entry(i, j):
                report.record_skip(check_id, "pair beyond truncation")
                continue
            defect = skew_defect(A, i, j)
            if defect:
                report.record_fail(check_id, [render_vector(A, defect)])
            else:
                report.record_pass()
    return report


def jacobi_defect(A: ConformalAlgebra, i: int, j: int, k: int) -> Vector:
    """[g_i λ [g_j μ g_k]] − [[g_i λ g_j] λ+μ g_k] − [g_j μ [g_i λ g_k]] per target.

    Raises TruncationExceeded when one of the needed entries is absent.
    """
    terms: Vector = {}

    def accumulate(s: int, poly: MultiPoly, sign: int):
        terms[s] = terms.get(s, ZERO) + poly * sign

    # [g_i λ q_t(∂, μ) g_t] = q_t(∂+λ, μ)·p_{i,t}
    for t, q in A.entry(j, k).items():
        shifted = substitute_many(q, [(D, D + LAM), (LAM, MU)])
        for s, p in A.entry(i, t).items():
            accumulate(s, shifted * p, 1)
    # [(p_{i,j,t}(∂,λ) g_t) λ+μ g_k] = p_{i,j,t}(−λ−μ, λ)·p_{t,k}(∂, λ+μ)
    for t, q in A.entry(i, j).items():
        shifted = substitute(q, D, -LAM - MU)
        for s, p in A.entry(t, k).items():
            accumulate(s, shifted * substitute(p, LAM, LAM + MU), -1)
    # [g_j μ p_{i,k,t}(∂,λ) g_t] = p_{i,k,t}(∂+μ, λ)·p_{j,t}(∂, μ)
    for t, q in A.entry(i, k).items():
        shifted = substitute(q, D, D + MU)
        for s, p in A.entry(j, t).items():
            accumulate(s, shifted * substitute(p, LAM, MU), -1)
    return clean_vector(terms)


def check_jacobi(A: ConformalAlgebra) -> CheckReport:
    report = CheckReport(title=f"Jacobi identity of {A.name}")
    n = len(A.gens)
    for i, j, k in product(range(n), repeat=3):
        check_id = f"jacobi[{A.gens[i]},{A.gens[j]},{A.gens[k]}]"
        try:
            defect = jacobi_defect(A, i, j, k)
        except TruncationExceeded as e:
            report.record_skip(check_id, str(e))
            continue
        if defect:
            report.record_fail(check_id, [render_vector(A, defect)])
        else:
            report.record_pass()
    return report


def rescale_generator(A: ConformalAlgebra, label: str, factor) -> ConformalAlgebra:
    """Replaces generator g by factor·g (same label) and rewrites the table."""
    idx = A.index(label)
    factor = _as_scalar(factor)
    one = scalar(1)
    weights = [factor if i == idx else one for i in range(len(A.gens))]

    table = {}
    for (i, j), vec in A.table.items():
        table[(i, j)] = clean_vector(
            {k: p.mul_ground(weights[i] * weights[j] / weights[k]) for k, p in vec.items()}
        )
    return ConformalAlgebra(
        name=A.name,
        gens=A.gens,
        table=table,
        grading=A.grading,
        truncation=A.truncation,
        virasoro=A.virasoro,
    )


def _as_scalar(value) -> Scalar:
    return value if isinstance(value, Scalar) else scalar(value)
