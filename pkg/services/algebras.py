"""Built-in Lie conformal algebras and the finite-dimensional input structures they take."""

from dataclasses import dataclass, field
from itertools import product
from exceptions import InvalidStructure
from services.conformal import ConformalAlgebra, Vector, clean_vector, rescale_generator
from services.exactpoly import D, LAM, Scalar, const, render_scalar, scalar

VIRASORO_POLY = D + 2 * LAM


@dataclass(frozen=True)
class LieStructure:
    """A finite-dimensional Lie algebra: [x, y] = Σ_z c^z_{xy} z."""

    basis: tuple[str, ...]
    brackets: dict[tuple[str, str], dict[str, Scalar]] = field(default_factory=dict)

    def coeffs(self, x: str, y: str) -> dict[str, Scalar]:
        return {z: c for z, c in self.brackets.get((x, y), {}).items() if c}

    def validate(self) -> list[str]:
        errors = []
        known = set(self.basis)
        for (x, y), value in self.brackets.items():
            for label in (x, y, *value.keys()):
                if label not in known:
                    errors.append(f"unknown basis element '{label}'")
        for x, y in product(self.basis, repeat=2):
            forward, backward = self.coeffs(x, y), self.coeffs(y, x)
            for z in set(forward) | set(backward):
                if forward.get(z, scalar(0)) + backward.get(z, scalar(0)):
                    errors.append(f"[{x},{y}] is not antisymmetric in the {z} coordinate")
        return errors


@dataclass(frozen=True)
class CommutativeAlgebra:
    """A finite-dimensional commutative associative unital algebra given on a basis."""

    basis: tuple[str, ...]
    products: dict[tuple[str, str], dict[str, Scalar]]
    unit: str
    grading: tuple[int, ...] | None = None

    def mult(self, x: str, y: str) -> dict[str, Scalar]:
        return {z: c for z, c in self.products.get((x, y), {}).items() if c}

    def _mult_vectors(self, u: dict[str, Scalar], v: dict[str, Scalar]) -> dict[str, Scalar]:
        out: dict[str, Scalar] = {}
        for (x, a), (y, b) in product(u.items(), v.items()):
            for z, c in self.mult(x, y).items():
                out[z] = out.get(z, scalar(0)) + a * b * c
        return {z: c for z, c in out.items() if c}

    def validate(self) -> list[str]:
        errors = []
        if self.unit not in self.basis:
            errors.append(f"unit '{self.unit}' is not a basis element")
            return errors
        for x, y in product(self.basis, repeat=2):
            if self.mult(x, y) != self.mult(y, x):
                errors.append(f"{x}·{y} != {y}·{x}")
        for x in self.basis:
            if self.mult(self.unit, x) != {x: scalar(1)}:
                errors.append(f"'{self.unit}' does not act as unit on {x}")
        one = scalar(1)
        for x, y, w in product(self.basis, repeat=3):
            left = self._mult_vectors(self.mult(x, y), {w: one})
            right = self._mult_vectors({x: one}, self.mult(y, w))
            if left != right:
                errors.append(f"({x}·{y})·{w} != {x}·({y}·{w})")
        return errors


def sl2() -> LieStructure:
    one, two = scalar(1), scalar(2)
    return LieStructure(
        basis=("e", "h", "f"),
        brackets={
            ("e", "f"): {"h": one},
            ("f", "e"): {"h": -one},
            ("h", "e"): {"e": two},
            ("e", "h"): {"e": -two},
            ("h", "f"): {"f": -two},
            ("f", "h"): {"f": two},
        },
    )


def two_dim_nonabelian() -> LieStructure:
    one = scalar(1)
    return LieStructure(basis=("x", "y"), brackets={("x", "y"): {"y": one}, ("y", "x"): {"y": -one}})


def abelian(labels) -> LieStructure:
    return LieStructure(basis=tuple(labels))


def truncated_polynomial_algebra(n: int) -> CommutativeAlgebra:
    """ℂ[T]/(T^n), graded by T-degree."""
    if n < 1:
        raise InvalidStructure("the truncated polynomial algebra needs n >= 1")
    labels = tuple("1" if k == 0 else ("T" if k == 1 else f"T^{k}") for k in range(n))
    one = scalar(1)
    products = {
        (labels[i], labels[j]): {labels[i + j]: one}
        for i, j in product(range(n), repeat=2)
        if i + j < n
    }
    return CommutativeAlgebra(basis=labels, products=products, unit="1", grading=tuple(range(n)))


def _check(errors: list[str], what: str):
    if errors:
        raise InvalidStructure(f"{what}: " + "; ".join(errors))


def virasoro(label: str = "L") -> ConformalAlgebra:
    return ConformalAlgebra(
        name="Vir",
        gens=(label,),
        table={(0, 0): {0: VIRASORO_POLY}},
        virasoro=label,
    )


def current(g: LieStructure, name: str = "Cur") -> ConformalAlgebra:
    _check(g.validate(), "structure constants")
    table = {}
    for (i, x), (j, y) in product(enumerate(g.basis), repeat=2):
        vec = {g.basis.index(z): const(c) for z, c in g.coeffs(x, y).items()}
        if vec:
            table[(i, j)] = clean_vector(vec)
    return ConformalAlgebra(name=name, gens=g.basis, table=table)


def vir_semidirect_current(a, g: LieStructure, label: str = "L") -> ConformalAlgebra:
    """Vir ⋉ Cur g with [L λ x] = (∂+aλ)x, and the current brackets on g."""
    _check(g.validate(), "structure constants")
    if label in g.basis:
        raise InvalidStructure(f"label '{label}' collides with a basis element of g")
    a = a if isinstance(a, Scalar) else scalar(a)
    gens = (label,) + g.basis
    table: dict[tuple[int, int], Vector] = {(0, 0): {0: VIRASORO_POLY}}
    for n, _ in enumerate(g.basis, start=1):
        table[(0, n)] = {n: D + LAM * a}
        table[(n, 0)] = {n: D * (a - 1) + LAM * a}
    for (i, x), (j, y) in product(enumerate(g.basis, start=1), repeat=2):
        vec = {gens.index(z): const(c) for z, c in g.coeffs(x, y).items()}
        if vec:
            table[(i, j)] = clean_vector(vec)
    return ConformalAlgebra(name=f"Vir⋉Cur(a={render_scalar(a)})", gens=gens, table=table, virasoro=label)


def block(p, truncation: int) -> ConformalAlgebra:
    """𝓑(p) cut at grade N: [L_i λ L_j] = ((i+p)∂ + (i+j+2p)λ) L_{i+j}."""
    p = p if isinstance(p, Scalar) else scalar(p)
    if not p:
        raise InvalidStructure("block algebras need p != 0")
    if truncation < 0:
        raise InvalidStructure("truncation must be non-negative")
    gens = tuple(f"L{i}" for i in range(truncation + 1))
    table = {}
    for i, j in product(range(truncation + 1), repeat=2):
        if i + j <= truncation:
            table[(i, j)] = {i + j: D * (p + i) + LAM * (p * 2 + i + j)}
    return ConformalAlgebra(
        name=f"B(p={render_scalar(p)})",
        gens=gens,
        table=table,
        grading=tuple(range(truncation + 1)),
        truncation=truncation,
        virasoro="L0",
    )


def map_virasoro(A: CommutativeAlgebra, truncation: int | None = None) -> ConformalAlgebra:
    """𝒱(A): generators L⊗x with [(L⊗x) λ (L⊗y)] = (∂+2λ) L⊗xy."""
    _check(A.validate(), "commutative algebra")
    gens = tuple(f"L[{x}]" for x in A.basis)
    table = {}
    for (i, x), (j, y) in product(enumerate(A.basis), repeat=2):
        vec = {A.basis.index(z): VIRASORO_POLY.mul_ground(c) for z, c in A.mult(x, y).items()}
        if vec:
            table[(i, j)] = clean_vector(vec)
    if truncation is not None and A.grading is None:
        raise InvalidStructure("a truncation needs a graded algebra")
    return ConformalAlgebra(
        name="V(A)",
        gens=gens,
        table=table,
        grading=A.grading,
        truncation=truncation,
        virasoro=f"L[{A.unit}]",
    )


def graded_weight_line(a1) -> ConformalAlgebra:
    """Vir plus one grade-one generator L1 with [L0 λ L1] = (∂+a1·λ)L1 and [L1 λ L1] = 0."""
    a1 = a1 if isinstance(a1, Scalar) else scalar(a1)
    table = {
        (0, 0): {0: VIRASORO_POLY},
        (0, 1): {1: D + LAM * a1},
        (1, 0): {1: D * (a1 - 1) + LAM * a1},
    }
    return ConformalAlgebra(
        name=f"Vir+L1(a1={render_scalar(a1)})", gens=("L0", "L1"), table=table, grading=(0, 1), virasoro="L0"
    )


def from_table(
    name: str,
    gens: tuple[str, ...],
    table: dict[tuple[int, int], Vector],
    grading: tuple[int, ...] | None = None,
    truncation: int | None = None,
    virasoro_label: str | None = None,
) -> ConformalAlgebra:
    errors = []
    if len(set(gens)) != len(gens):
        errors.append("generator labels must be unique")
    if grading is not None and len(grading) != len(gens):
        errors.append("one grade per generator is required")
    if grading is not None and any(g < 0 for g in grading):
        errors.append("grades must be non-negative")
    for (i, j), vec in table.items():
        for k, poly in vec.items():
            if any(monom[2] or monom[3] for monom in poly.keys()):
                errors.append(f"[{gens[i]} λ {gens[j]}] may only use d and l")
            if grading is not None and grading[k] != grading[i] + grading[j]:
                errors.append(f"[{gens[i]} λ {gens[j]}] must land in grade {grading[i] + grading[j]}")
        if grading is not None and truncation is not None and grading[i] + grading[j] > truncation:
            errors.append(f"[{gens[i]} λ {gens[j]}] lies beyond the truncation")
    _check(errors, name)
    return ConformalAlgebra(
        name=name,
        gens=tuple(gens),
        table={key: clean_vector(vec) for key, vec in table.items()},
        grading=grading,
        truncation=truncation,
        virasoro=virasoro_label,
    )


def normalize_virasoro(A: ConformalAlgebra) -> ConformalAlgebra:
    """Rescales the Virasoro generator so that its self-bracket is exactly (∂+2λ)."""
    v = A.virasoro_index()
    poly = A.entry(v, v).get(v)
    if not poly:
        return A
    kappa = poly.get((1, 0, 0, 0))
    if not kappa or poly != VIRASORO_POLY.mul_ground(kappa):
        return A
    return rescale_generator(A, A.gens[v], scalar(1) / kappa)
