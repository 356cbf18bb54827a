"""Annihilation Lie algebras of conformal algebras and the L_(1)-weight theory of modules.

Symbols are pairs (i, n) standing for g_i_(n); ``DERIVATION`` is the extra ∂ of the
extended algebra, with [∂, a_(n)] = −n·a_(n−1).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb, factorial
from exceptions import InvalidParams, TruncationExceeded
from services.conformal import ConformalAlgebra
from services.exactpoly import D, LAM, ZERO, MultiPoly, Scalar, coeff_of, degree_in, render_scalar, scalar
from services.linsolve import charpoly, gaussian_roots, nullspace
from services.modules import ConformalModule, ModuleElement, act, render_element
from services.reports import CheckReport

Symbol = tuple[int, int]
Combination = dict[Symbol, Scalar]

DERIVATION: Symbol = (-1, -1)


@dataclass
class AnnihAlgebra:
    parent: ConformalAlgebra
    depth: int
    extended: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    def symbols(self) -> list[Symbol]:
        out = [(i, n) for i in range(len(self.parent.gens)) for n in range(self.depth + 1)]
        return ([DERIVATION] if self.extended else []) + out

    def name(self, sym: Symbol) -> str:
        if sym == DERIVATION:
            return "∂"
        return f"{self.parent.gens[sym[0]]}_({sym[1]})"

    def render(self, combo: Combination) -> str:
        if not combo:
            return "0"
        return " + ".join(f"({render_scalar(c)})*{self.name(s)}" for s, c in sorted(combo.items()))


def _accumulate(out: Combination, sym: Symbol, c: Scalar):
    total = out.get(sym, scalar(0)) + c
    if total:
        out[sym] = total
    else:
        out.pop(sym, None)


def _symbol_of_multiple(X: AnnihAlgebra, poly: MultiPoly, t: int, index: int, out: Combination, weight: Scalar):
    """Adds weight·(poly(∂)·g_t)_(index), using (∂a)_(N) = −N·a_(N−1)."""
    for monom, coeff in poly.items():
        e = monom[0]
        if e > index:
            continue
        target = index - e
        c = coeff * weight * ((-1) ** e * factorial(index) // factorial(target))
        if not c:
            continue
        if target > X.depth:
            raise TruncationExceeded(f"{X.parent.gens[t]}_({target}) lies beyond depth {X.depth}")
        _accumulate(out, (t, target), c)


def annih_bracket(X: AnnihAlgebra, x: Symbol, y: Symbol) -> Combination:
    """[a_(m), b_(n)] = Σ_k C(m,k)·(a_(k) b)_(m+n−k), with the ∂ rules when extended."""
    key = (x, y)
    if key in X._cache:
        return dict(X._cache[key])
    for sym in (x, y):
        if sym == DERIVATION:
            if not X.extended:
                raise InvalidParams("∂ only lives in the extended annihilation algebra")
        elif sym[1] > X.depth or sym[1] < 0:
            raise TruncationExceeded(f"{X.name(sym)} lies beyond depth {X.depth}")

    out: Combination = {}
    if x == DERIVATION and y == DERIVATION:
        pass
    elif x == DERIVATION:
        if y[1] > 0:
            _accumulate(out, (y[0], y[1] - 1), scalar(-y[1]))
    elif y == DERIVATION:
        if x[1] > 0:
            _accumulate(out, (x[0], x[1] - 1), scalar(x[1]))
    else:
        (i, m), (j, n) = x, y
        for t, p in X.parent.entry(i, j).items():
            for k in range(min(m, degree_in(p, LAM)) + 1):
                kth = coeff_of(p, LAM, k) * factorial(k)
                if kth:
                    _symbol_of_multiple(X, kth, t, m + n - k, out, scalar(comb(m, k)))
    X._cache[key] = dict(out)
    return out


def bracket_combinations(X: AnnihAlgebra, u: Combination, v: Combination) -> Combination:
    out: Combination = {}
    for (x, a), (y, b) in product(u.items(), v.items()):
        for sym, c in annih_bracket(X, x, y).items():
            _accumulate(out, sym, a * b * c)
    return out


def check_annih_lie(X: AnnihAlgebra) -> CheckReport:
    report = CheckReport(title=f"annihilation algebra of {X.parent.name} at depth {X.depth}")
    one = scalar(1)
    syms = X.symbols()
    for x, y in combinations_with_replacement(syms, 2):
        check_id = f"antisym[{X.name(x)},{X.name(y)}]"
        try:
            total = dict(annih_bracket(X, x, y))
            for sym, c in annih_bracket(X, y, x).items():
                _accumulate(total, sym, c)
        except TruncationExceeded as e:
            report.record_skip(check_id, str(e))
            continue
        if total:
            report.record_fail(check_id, [X.render(total)])
        else:
            report.record_pass()
    for x, y, z in combinations_with_replacement(syms, 3):
        check_id = f"jacobi[{X.name(x)},{X.name(y)},{X.name(z)}]"
        try:
            total: Combination = {}
            for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                inner = annih_bracket(X, b, c)
                for sym, coeff in bracket_combinations(X, {a: one}, inner).items():
                    _accumulate(total, sym, coeff)
        except TruncationExceeded as e:
            report.record_skip(check_id, str(e))
            continue
        if total:
            report.record_fail(check_id, [X.render(total)])
        else:
            report.record_pass()
    return report


def module_action_n(M: ConformalModule, label: str, n: int, v: ModuleElement) -> ModuleElement:
    """g_(n)·v = n!·(λ^n coefficient of g λ v)."""
    if n < 0:
        raise ValueError("annihilation indices are non-negative")
    return [coeff_of(p, LAM, n) * factorial(n) for p in act(M, label, v)]


def check_correspondence(A: ConformalAlgebra, M: ConformalModule, extra_degree: int = 2) -> CheckReport:
    """Rebuilds g λ (∂^e v_r) as Σ_n (g_(n)·∂^e v_r)·λ^n/n! and compares with the action."""
    report = CheckReport(title=f"λ-action reconstruction for {M.name}")
    for label in A.gens:
        for r, e in product(range(M.rank), range(extra_degree + 1)):
            element = [D**e if k == r else ZERO for k in range(M.rank)]
            direct = act(M, label, element)
            top = max((degree_in(p, LAM) for p in direct if p), default=0)
            rebuilt = [ZERO for _ in range(M.rank)]
            for n in range(top + 1):
                piece = module_action_n(M, label, n, element)
                rebuilt = [acc + p * LAM**n * scalar(Fraction(1, factorial(n))) for acc, p in zip(rebuilt, piece)]
            check_id = f"reconstruct[{label};d^{e}*{M.basis[r]}]"
            if rebuilt != direct:
                report.record_fail(check_id, [render_element(M, direct), render_element(M, rebuilt)])
            else:
                report.record_pass()
    return report


@dataclass
class WeightReport:
    weight: Scalar
    basis: list[ModuleElement]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _coordinates(element: ModuleElement, degree: int) -> list[Scalar]:
    """Coordinates on the basis ∂^e v_k, ordered by (k, e)."""
    zero = scalar(0)
    return [element[k].get((e, 0, 0, 0), zero) for k in range(len(element)) for e in range(degree + 1)]


def _element(coords: list[Scalar], rank: int, degree: int) -> ModuleElement:
    out = []
    for k in range(rank):
        poly = ZERO
        for e in range(degree + 1):
            c = coords[k * (degree + 1) + e]
            if c:
                poly = poly + D**e * c
        out.append(poly)
    return out


def weight_spaces(M: ConformalModule, degree_bound: int, virasoro_label: str = "L") -> list[WeightReport]:
    """Exact eigenspaces of L_(1) on module elements whose coordinates have ∂-degree ≤ degree_bound.

    Candidate weights are the Gaussian-rational eigenvalues of the truncated operator;
    each eigenspace is solved on the untruncated image, so every vector is exact.
    """
    basis = [
        [D**e if k == r else ZERO for k in range(M.rank)]
        for r in range(M.rank)
        for e in range(degree_bound + 1)
    ]
    images = [module_action_n(M, virasoro_label, 1, u) for u in basis]
    image_degree = max([degree_bound] + [degree_in(p, D) for img in images for p in img if p])
    columns = [_coordinates(img, image_degree) for img in images]
    size = len(basis)
    full = [[columns[c][r] for c in range(size)] for r in range(len(columns[0]))]
    square = [[columns[c][k * (image_degree + 1) + e] for c in range(size)]
              for k in range(M.rank) for e in range(degree_bound + 1)]

    reports = []
    for alpha in gaussian_roots(charpoly(square)):
        shifted = [list(row) for row in full]
        for k in range(M.rank):
            for e in range(degree_bound + 1):
                row = k * (image_degree + 1) + e
                col = k * (degree_bound + 1) + e
                shifted[row][col] = shifted[row][col] - alpha
        vectors = nullspace(shifted, size)
        if vectors:
            reports.append(
                WeightReport(weight=alpha, basis=[_element(v, M.rank, degree_bound) for v in vectors])
            )
    return reports


def weight_ladder_check(
    M: ConformalModule, reports: list[WeightReport], max_index: int = 3, virasoro_label: str = "L"
) -> CheckReport:
    """L_(n) sends weight α to α + 1 − n, as [L_(1), L_(n)] = (1 − n)L_(n)."""
    report = CheckReport(title=f"weight ladder of {M.name}")
    for wr in reports:
        for b, u in enumerate(wr.basis):
            for n in range(max_index + 1):
                w = module_action_n(M, virasoro_label, n, u)
                expected = [p.mul_ground(wr.weight + 1 - n) for p in w]
                actual = module_action_n(M, virasoro_label, 1, w)
                check_id = f"ladder[{render_scalar(wr.weight)};#{b};L_({n})]"
                if actual != expected:
                    report.record_fail(check_id, [render_element(M, actual), render_element(M, expected)])
                else:
                    report.record_pass()
    return report


def check_weight_bound(M: ConformalModule, reports: list[WeightReport]) -> CheckReport:
    """dim V[α] ≤ rank, asserted only for modules the caller declares completely non-trivial."""
    report = CheckReport(title=f"weight multiplicities of {M.name}")
    for wr in reports:
        check_id = f"dim[{render_scalar(wr.weight)}]"
        if wr.dimension > M.rank:
            report.record_fail(check_id, [str(wr.dimension)], f"rank is {M.rank}")
        else:
            report.record_pass()
    return report
