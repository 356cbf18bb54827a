"""Finite conformal modules given by λ-action matrices on a free ℂ[∂]-basis.

Convention: g λ v_j = Σ_k actions[g][k][j](∂, λ)·v_k.
"""

import random
from dataclasses import dataclass, field
from itertools import product
from exceptions import InvalidParams, MissingAction, TruncationExceeded
from services.conformal import ConformalAlgebra
from services.exactpoly import (
    D,
    LAM,
    MU,
    ZERO,
    MultiPoly,
    Scalar,
    coeff_of,
    const,
    degree_in,
    render,
    render_scalar,
    scalar,
    split_affine,
    substitute,
    substitute_many,
)
from services.linsolve import gaussian_roots, nullspace
from services.polyparse import parse_scalar
from services.reports import CheckReport

Matrix = list[list[MultiPoly]]
ModuleElement = list[MultiPoly]


@dataclass(frozen=True, eq=False)
class ConformalModule:
    name: str
    basis: tuple[str, ...]
    actions: dict[str, Matrix]
    irreducible: bool | None = None

    @property
    def rank(self) -> int:
        return len(self.basis)

    def matrix(self, label: str) -> Matrix:
        try:
            return self.actions[label]
        except KeyError as e:
            raise MissingAction(f"module {self.name} has no action for generator '{label}'") from e

    def basis_vector(self, j: int) -> ModuleElement:
        return [const(1) if k == j else ZERO for k in range(self.rank)]


def zero_matrix(m: int) -> Matrix:
    return [[ZERO for _ in range(m)] for _ in range(m)]


def scalar_matrix(m: int, poly: MultiPoly) -> Matrix:
    return [[poly if k == j else ZERO for j in range(m)] for k in range(m)]


def act(M: ConformalModule, label: str, element: ModuleElement) -> ModuleElement:
    """g λ (Σ_j f_j(∂) v_j) = Σ_j f_j(∂+λ)·Σ_k A_kj(∂,λ) v_k."""
    A = M.matrix(label)
    out = [ZERO for _ in range(M.rank)]
    for j, f in enumerate(element):
        if not f:
            continue
        shifted = substitute(f, D, D + LAM)
        for k in range(M.rank):
            if A[k][j]:
                out[k] = out[k] + shifted * A[k][j]
    return out


def render_element(M: ConformalModule, element: ModuleElement) -> str:
    parts = [f"({render(p)})*{M.basis[k]}" for k, p in enumerate(element) if p]
    return " + ".join(parts) if parts else "0"


def module_defect(A: ConformalAlgebra, M: ConformalModule, i: int, j: int, r: int) -> ModuleElement:
    """g_i λ (g_j μ v_r) − g_j μ (g_i λ v_r) − [g_i λ g_j] λ+μ v_r, per basis vector."""
    first, second = M.matrix(A.gens[i]), M.matrix(A.gens[j])
    m = M.rank
    out = [ZERO for _ in range(m)]
    for k in range(m):
        b_kr = second[k][r]
        if b_kr:
            shifted = substitute_many(b_kr, [(D, D + LAM), (LAM, MU)])
            for s in range(m):
                if first[s][k]:
                    out[s] = out[s] + shifted * first[s][k]
        a_kr = first[k][r]
        if a_kr:
            shifted = substitute(a_kr, D, D + MU)
            for s in range(m):
                if second[s][k]:
                    out[s] = out[s] - shifted * substitute(second[s][k], LAM, MU)
    for t, p in A.entry(i, j).items():
        outer = substitute(p, D, -LAM - MU)
        target = M.matrix(A.gens[t])
        for s in range(m):
            if target[s][r]:
                out[s] = out[s] - outer * substitute(target[s][r], LAM, LAM + MU)
    return out


def _ladder_action(M: ConformalModule, label: str, f: MultiPoly, r: int) -> ModuleElement:
    """g λ (f(∂) v_r) built from g λ (∂u) = (∂+λ)(g λ u), one power of ∂ at a time."""
    base = act(M, label, M.basis_vector(r))
    total = [ZERO for _ in range(M.rank)]
    power = base
    top = degree_in(f, D)
    for n in range(0, top + 1 if f else 0):
        c = f.get((n, 0, 0, 0))
        if c:
            total = [t + p.mul_ground(c) for t, p in zip(total, power)]
        power = [p * (D + LAM) for p in power]
    return total


def check_module(
    A: ConformalAlgebra, M: ConformalModule, spot_checks: int = 4, seed: int = 7
) -> CheckReport:
    report = CheckReport(title=f"module axioms of {M.name} over {A.name}")
    for label in A.gens:
        for row in M.matrix(label):
            for entry in row:
                if any(monom[2] or monom[3] for monom in entry.keys()):
                    report.record_fail(f"entries[{label}]", [render(entry)], "action entries may only use d and l")
    n = len(A.gens)
    for i, j in product(range(n), repeat=2):
        for r in range(M.rank):
            check_id = f"module[{A.gens[i]},{A.gens[j]};{M.basis[r]}]"
            try:
                defect = module_defect(A, M, i, j, r)
            except TruncationExceeded as e:
                report.record_skip(check_id, str(e))
                continue
            if any(defect):
                report.record_fail(check_id, [render_element(M, defect)])
            else:
                report.record_pass()

    rng = random.Random(seed)
    for n_check in range(spot_checks):
        label = A.gens[rng.randrange(n)]
        r = rng.randrange(M.rank)
        f = sum((D**e * rng.randint(-3, 3) for e in range(rng.randint(0, 3) + 1)), ZERO)
        element = [f if k == r else ZERO for k in range(M.rank)]
        direct = act(M, label, element)
        ladder = _ladder_action(M, label, f, r)
        check_id = f"sesquilinear[{label};{M.basis[r]};#{n_check}]"
        if direct != ladder:
            report.record_fail(check_id, [render_element(M, direct), render_element(M, ladder)])
        else:
            report.record_pass()
    return report


def _as_scalar(value) -> Scalar:
    return parse_scalar(value)


def rank_one_vir(a, b, label: str = "L") -> ConformalModule:
    """M_{a,b}: L λ v = (∂ + aλ + b) v, irreducible exactly when a ≠ 0."""
    a, b = _as_scalar(a), _as_scalar(b)
    return ConformalModule(
        name=f"M(a={render_scalar(a)},b={render_scalar(b)})",
        basis=("v",),
        actions={label: [[D + LAM * a + b]]},
        irreducible=bool(a),
    )


def direct_sum(M: ConformalModule, N: ConformalModule) -> ConformalModule:
    labels = sorted(set(M.actions) | set(N.actions))
    m, n = M.rank, N.rank
    actions = {}
    for label in labels:
        top = M.actions.get(label, zero_matrix(m))
        bottom = N.actions.get(label, zero_matrix(n))
        block = zero_matrix(m + n)
        for k, j in product(range(m), repeat=2):
            block[k][j] = top[k][j]
        for k, j in product(range(n), repeat=2):
            block[m + k][m + j] = bottom[k][j]
        actions[label] = block
    basis = tuple(f"{x}.1" for x in M.basis) + tuple(f"{x}.2" for x in N.basis)
    return ConformalModule(name=f"{M.name}+{N.name}", basis=basis, actions=actions)


def trivial_module(A: ConformalAlgebra, rank: int = 1) -> ConformalModule:
    basis = ("v",) if rank == 1 else tuple(f"v{k}" for k in range(1, rank + 1))
    return ConformalModule(
        name="trivial",
        basis=basis,
        actions={label: zero_matrix(rank) for label in A.gens},
        irreducible=False,
    )


def adjoint_module(A: ConformalAlgebra) -> ConformalModule:
    """A acting on itself; the (k, j) entry of g_i is p_{i,j,k}."""
    n = len(A.gens)
    actions = {}
    for i, label in enumerate(A.gens):
        mat = zero_matrix(n)
        for j in range(n):
            if A.has_entry(i, j):
                for k, p in A.entry(i, j).items():
                    mat[k][j] = p
        actions[label] = mat
    return ConformalModule(name=f"ad({A.name})", basis=A.gens, actions=actions)


def weight_line_parameters(A: ConformalAlgebra, i: int) -> tuple[Scalar, Scalar] | None:
    """(a_i, b_i) of [L_0 λ L_i] = (∂ + a_iλ + b_i)L_i, or None if it is not of that form."""
    v = A.virasoro_index()
    poly = A.entry(v, i).get(i)
    return split_affine(poly) if poly else None


def rank_one_theorem_module(A: ConformalAlgebra, case: int, params: dict) -> ConformalModule:
    """Rank-one modules of graded algebras extending Vir.

    Args:
        case: 1 for {L0 λ v = (∂+Δλ+c)v, L1 λ v = γv, L_i λ v = 0 for i > 1},
            2 for {L_i λ v = c_i(∂+Δλ+c)v}.
        params: ``delta``, ``c`` and ``gamma`` (case 1) or ``c_seq`` (case 2), c_seq indexed by grade.
    """
    if A.grading is None:
        raise InvalidParams("rank-one theorem modules need a graded algebra")
    delta = _as_scalar(params.get("delta", 0))
    c = _as_scalar(params.get("c", 0))
    base = D + LAM * delta + c
    actions = {}
    if case == 1:
        gamma = _as_scalar(params.get("gamma", 0))
        if not gamma and not delta:
            raise InvalidParams("case 1 with γ = 0 needs Δ != 0")
        if gamma:
            if 1 not in A.grading:
                raise InvalidParams("γ != 0 needs a generator of grade 1")
            line = weight_line_parameters(A, A.grading.index(1))
            if line is None or line[0] != scalar(1):
                raise InvalidParams("γ != 0 is only allowed when a1 = 1")
        for label, grade in zip(A.gens, A.grading):
            if grade == 0:
                actions[label] = [[base]]
            elif grade == 1:
                actions[label] = [[const(gamma)]]
            else:
                actions[label] = [[ZERO]]
        name = f"R1(Δ={render_scalar(delta)},c={render_scalar(c)},γ={render_scalar(gamma)})"
    elif case == 2:
        if not delta:
            raise InvalidParams("case 2 needs Δ != 0")
        c_seq = [_as_scalar(x) for x in params.get("c_seq", [])]
        if len(c_seq) <= max(A.grading):
            raise InvalidParams(f"case 2 needs c_i for every grade up to {max(A.grading)}")
        for label, grade in zip(A.gens, A.grading):
            actions[label] = [[base.mul_ground(c_seq[grade])]]
        name = f"R2(Δ={render_scalar(delta)},c={render_scalar(c)})"
    else:
        raise InvalidParams(f"unknown case {case}, expected 1 or 2")
    return ConformalModule(name=name, basis=("v",), actions=actions)


def map_virasoro_module(A: ConformalAlgebra, algebra, character: dict[str, Scalar], delta, c) -> ConformalModule:
    """M_{π,Δ,c} over 𝒱(algebra): L⊗x λ v = π(x)(∂+Δλ+c)v for a character π.

    Multiplicativity is only required on products inside the truncation of A.
    """
    labels = {x: f"L[{x}]" for x in algebra.basis}
    missing = [label for label in A.gens if label not in labels.values()]
    if missing or len(A.gens) != len(labels):
        raise InvalidParams(f"generators {missing or list(A.gens)} are not the L[x] of the given algebra")
    pi = {x: _as_scalar(character.get(x, 0)) for x in algebra.basis}
    if pi[algebra.unit] != scalar(1):
        raise InvalidParams("a character must send the unit to 1")
    for x, y in product(algebra.basis, repeat=2):
        if not A.has_entry(A.index(labels[x]), A.index(labels[y])):
            continue
        image = sum((pi[z] * k for z, k in algebra.mult(x, y).items()), scalar(0))
        if image != pi[x] * pi[y]:
            raise InvalidParams(f"π({x}·{y}) != π({x})·π({y})")
    base = D + LAM * _as_scalar(delta) + _as_scalar(c)
    actions = {labels[x]: [[base.mul_ground(pi[x])]] for x in algebra.basis}
    return ConformalModule(name="M(π,Δ,c)", basis=("v",), actions=actions)


@dataclass
class ActionKernel:
    zero_generators: list[str] = field(default_factory=list)
    per_grade: dict[int, list[dict[str, Scalar]]] = field(default_factory=dict)
    span: list[dict[str, Scalar]] = field(default_factory=list)


def _flatten(matrix: Matrix) -> dict[tuple, Scalar]:
    coords = {}
    for k, row in enumerate(matrix):
        for j, entry in enumerate(row):
            for monom, coeff in entry.items():
                coords[(k, j, monom)] = coeff
    return coords


def _kernel_combinations(labels: list[str], vectors: list[dict[tuple, Scalar]]) -> list[dict[str, Scalar]]:
    keys = sorted(set().union(*vectors)) if vectors else []
    rows = [[vec.get(key, scalar(0)) for vec in vectors] for key in keys]
    combos = []
    for null_vec in nullspace(rows, len(labels)):
        combos.append({label: c for label, c in zip(labels, null_vec) if c})
    return combos


def action_kernel(A: ConformalAlgebra, M: ConformalModule) -> ActionKernel:
    """Generators acting as zero, and Scalar combinations Σ k_i g_i acting as zero.

    Combinations are solved inside every grade and over the whole span of the generators.
    """
    kernel = ActionKernel()
    flat = {label: _flatten(M.matrix(label)) for label in A.gens}
    kernel.zero_generators = [label for label in A.gens if not flat[label]]
    grades = sorted({A.grade(i) for i in range(len(A.gens))})
    for grade in grades:
        labels = [label for i, label in enumerate(A.gens) if A.grade(i) == grade]
        combos = _kernel_combinations(labels, [flat[label] for label in labels])
        if combos:
            kernel.per_grade[grade] = combos
    kernel.span = _kernel_combinations(list(A.gens), [flat[label] for label in A.gens])
    return kernel


def render_combination(combo: dict[str, Scalar]) -> str:
    return " + ".join(f"({render_scalar(c)})*{label}" for label, c in combo.items())


def _divides(f: MultiPoly, h: MultiPoly) -> bool:
    if not h:
        return True
    return not h.rem([f])


def find_invariant_submodule(M: ConformalModule, max_degree: int = 3) -> MultiPoly | None:
    """Searches a proper nonzero submodule ℂ[∂]·f(∂)v of a rank-one module, deg f ≤ max_degree.

    A root r of such an f must kill every λ-coefficient of every action at ∂ = r,
    so the candidates are products of (∂ − r) over those common roots.
    Returns the first f found (lowest degree) or None.
    """
    if M.rank != 1:
        raise ValueError("the submodule search covers rank-one modules")
    entries = [mat[0][0] for mat in M.actions.values() if mat[0][0]]
    if not entries:
        return D
    candidate_roots = None
    for entry in entries:
        for n in range(degree_in(entry, LAM) + 1):
            coeff = coeff_of(entry, LAM, n)
            if not coeff:
                continue
            d_deg = degree_in(coeff, D)
            coeffs = [coeff.get((d_deg - k, 0, 0, 0), scalar(0)) for k in range(d_deg + 1)]
            roots = set(gaussian_roots(coeffs)) if d_deg > 0 else set()
            candidate_roots = roots if candidate_roots is None else candidate_roots & roots
    roots = sorted(candidate_roots or [], key=render_scalar)
    for degree in range(1, max_degree + 1):
        for combo in product(roots, repeat=degree):
            f = const(1)
            for r in combo:
                f = f * (D - r)
            if all(_divides(f, substitute(f, D, D + LAM) * entry) for entry in entries):
                return f
    return None
