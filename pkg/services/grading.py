"""Graded algebras extending Vir by L_0: weight classes, constant terms, degree profiles, a_1 scan."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pydantic import BaseModel
from exceptions import HypothesisViolated, InvalidParams, MalformedBracket, NotVirasoroAtZero
from services.algebras import VIRASORO_POLY, normalize_virasoro
from services.conformal import ConformalAlgebra
from services.exactpoly import (
    D,
    LAM,
    MU,
    POLY_RING,
    Scalar,
    degree_in,
    im_part,
    re_part,
    render,
    render_scalar,
    scalar,
    split_affine,
    substitute,
)
from services.funceq import solve_homogeneous
from services.linsolve import nullspace
from services.polyparse import parse_scalar
from services.reports import CheckReport


def _by_grade(A: ConformalAlgebra) -> dict[int, int]:
    if A.grading is None:
        raise InvalidParams(f"{A.name} is not graded")
    return {g: i for i, g in enumerate(A.grading)}


def _virasoro_zero(A: ConformalAlgebra) -> ConformalAlgebra:
    A = normalize_virasoro(A)
    v = A.virasoro_index()
    if A.grade(v) != 0 or A.structure_poly(v, v, v) != VIRASORO_POLY:
        raise NotVirasoroAtZero(f"{A.gens[v]} does not satisfy [L0 λ L0] = (∂+2λ)L0 in {A.name}")
    return A


def split_weight_classes(A: ConformalAlgebra) -> tuple[list[int], list[int], CheckReport]:
    """Splits grades into I0 = {i : p_{0,i} ≠ 0} and I1 = {i : p_{0,i} = 0}.

    Checks inside the truncation that the two classes do not bracket each other,
    that I0 is closed where brackets are nonzero and that I1 spans a subalgebra.
    """
    A = _virasoro_zero(A)
    grades = _by_grade(A)
    v = A.virasoro_index()
    I0 = sorted(g for g, i in grades.items() if A.has_entry(v, i) and A.entry(v, i))
    I1 = sorted(g for g in grades if g not in I0)
    report = CheckReport(title=f"weight classes of {A.name}")

    for gi in sorted(grades):
        for gj in sorted(grades):
            i, j = grades[gi], grades[gj]
            if not A.has_entry(i, j):
                continue
            vec = A.entry(i, j)
            pair = f"[{A.gens[i]},{A.gens[j]}]"
            witnesses = [render(p) for p in vec.values()]
            if (gi in I0) != (gj in I0):
                report.record(f"decoupled{pair}", not vec, witnesses)
            elif vec:
                target = gi + gj
                same = target in grades and ((target in I0) == (gi in I0))
                kind = "closed" if gi in I0 else "subalgebra"
                report.record(f"{kind}{pair}", same, witnesses)
    return I0, I1, report


def _line(A: ConformalAlgebra, i: int) -> tuple[Scalar, Scalar] | None:
    v = A.virasoro_index()
    poly = A.structure_poly(v, i, i) if A.has_entry(v, i) else None
    if not poly:
        return None
    line = split_affine(poly)
    if line is None:
        raise MalformedBracket(f"[{A.gens[v]} λ {A.gens[i]}] = {render(poly)} is not of the form ∂+aλ+b")
    return line


def check_constant_terms(A: ConformalAlgebra) -> CheckReport:
    """b_i = i·b_1, where [L_0 λ L_i] = (∂+a_iλ+b_i)L_i, assuming every [L_1 λ L_i] inside range is nonzero."""
    A = _virasoro_zero(A)
    grades = _by_grade(A)
    if 1 not in grades:
        raise HypothesisViolated(f"{A.name} has no generator of grade 1")
    one = grades[1]
    for g, i in sorted(grades.items()):
        if g + 1 in grades and A.has_entry(one, i) and not A.entry(one, i):
            raise HypothesisViolated(f"[{A.gens[one]} λ {A.gens[i]}] = 0")

    b1 = _line(A, one)
    report = CheckReport(title=f"constant terms of {A.name}")
    for g, i in sorted(grades.items()):
        line = _line(A, i)
        if line is None or b1 is None:
            report.record_skip(f"b[{g}]", "zero bracket with L0")
            continue
        expected = b1[1] * g
        report.record(f"b[{g}]", line[1] == expected, [render_scalar(line[1]), render_scalar(expected)])
    return report


@dataclass
class GradedProfile:
    a_seq: dict[int, Scalar] = field(default_factory=dict)
    b_seq: dict[int, Scalar] = field(default_factory=dict)
    deg_choices: dict[tuple[int, int], int | str] = field(default_factory=dict)
    report: CheckReport = field(default_factory=lambda: CheckReport(title="graded profile"))

    def as_data(self) -> dict:
        return {
            "a": {str(g): render_scalar(a) for g, a in sorted(self.a_seq.items())},
            "b": {str(g): render_scalar(b) for g, b in sorted(self.b_seq.items())},
            "deg": {f"{i},{j}": d for (i, j), d in sorted(self.deg_choices.items())},
        }


def profile_from_table(A: ConformalAlgebra) -> GradedProfile:
    """Reads a_i, b_i and deg_λ p_{i,j} off a graded table and checks both degree relations."""
    A = normalize_virasoro(A)
    grades = _by_grade(A)
    profile = GradedProfile(report=CheckReport(title=f"graded profile of {A.name}"))
    for g, i in sorted(grades.items()):
        line = _line(A, i)
        if line is not None:
            profile.a_seq[g], profile.b_seq[g] = line
    for gi, i in sorted(grades.items()):
        for gj, j in sorted(grades.items()):
            if not A.has_entry(i, j):
                continue
            vec = A.entry(i, j)
            profile.deg_choices[(gi, gj)] = max(degree_in(p, LAM) for p in vec.values()) if vec else "zero-bracket"

    a = profile.a_seq
    report = profile.report
    for (gi, gj), deg in sorted(profile.deg_choices.items()):
        if deg == "zero-bracket" or not {gi, gj, gi + gj} <= set(a):
            continue
        expected = a[gi] + a[gj] - a[gi + gj] - 1
        report.record(f"degree[{gi},{gj}]", expected == scalar(deg), [str(deg), render_scalar(expected)])
        if gi == 1 and gj + 1 in a:
            step = a[1] + a[gj] - 1 - deg
            report.record(f"recursion[{gj + 1}]", a[gj + 1] == step, [render_scalar(a[gj + 1]), render_scalar(step)])
    return profile


class ScanResult(BaseModel):
    a1: str
    horizon: int
    admissible: bool
    witness_sequence: list[str] | None = None
    degree_choices: list[int] | None = None
    rejection_depth: int | None = None
    reason: str = ""
    value_budget: int


# Constant in N so that admissibility stays monotone in the horizon. Nine values hold
# the 2 - 2/7 witness, which visits nine distinct a_i by grade twelve.
SCAN_VALUE_BUDGET = 9


def _linear_value(a1: Scalar, i: int) -> Scalar:
    """a_i while every deg_λ p_{1,j} below i is one."""
    return a1 * i - 2 * (i - 1)


@lru_cache(maxsize=None)
def jacobi_allows_vanishing(a1: Scalar, j0: int, degree: int = 2) -> bool:
    """Whether p_{i,j0} = 0 is compatible with the Jacobi identity on (L1, L(i-1), L(j0)).

    With p_{i,j0} = 0 and p_{1,·} constant the identity reduces to

        P(∂+λ, μ) = Q(∂, μ)·((a_1−1)(∂+μ) + a_{j0+1}λ)

    for P = p_{i−1,j0} and Q = p_{i−1,j0+1}, where a_{j0+1} is read off the linear prefix.
    Matches the unknown coefficients of P and Q exactly and reports whether some P is nonzero.
    """
    factor = (D + MU) * (a1 - 1) + LAM * _linear_value(a1, j0 + 1)
    if not factor:
        # a_1 = 1, j0 = 1: p_{1,1} is any α∂ + βλ and the instance does not constrain
        return True
    one = scalar(1)
    unknowns = [(p, t - p) for t in range(degree + 1) for p in range(t + 1)]
    columns = [substitute(POLY_RING({(p, 0, q, 0): one}), D, D + LAM) for p, q in unknowns]
    columns += [-POLY_RING({(p, 0, q, 0): one}) * factor for p, q in unknowns if p + q < degree]
    keys = sorted({m for col in columns for m in col.keys()}, reverse=True)
    zero = scalar(0)
    rows = [[col.get(key, zero) for col in columns] for key in keys]
    return bool(nullspace(rows, len(columns)))


@dataclass
class _Search:
    a1: Scalar
    horizon: int
    budget: int
    deepest: int = 1
    reason: str = ""

    def legal(self, a: Scalar, delta_i: Scalar, delta_j: Scalar, k: int) -> bool:
        return solve_homogeneous(a, delta_i, delta_j, k).dimension > 0

    def diagonal_may_survive(self, seq: list[Scalar], j: int) -> bool | None:
        """None when 2j lies past the horizon; otherwise whether p_{j,j} can be nonzero."""
        if 2 * j > len(seq):
            return None
        e = seq[j - 1] * 2 - seq[2 * j - 1] - 1
        if im_part(e) or re_part(e).denominator != 1:
            return False
        n = int(re_part(e))
        return n > 0 and n % 2 == 1 and self.legal(seq[j - 1], seq[2 * j - 1], seq[j - 1], n)

    def classify(self, seq: list[Scalar], degs: list[int]) -> str:
        """Empty string when the prefix is consistent, otherwise why it is not."""
        if 0 not in degs:
            return ""
        k = degs.index(0) + 1
        if any(d >= 2 for d in degs[: k - 1]):
            return ""
        if (k + 1) % 2 == 0:
            j = (k + 1) // 2
        else:
            if k + 1 > len(degs):
                return ""
            if degs[k] == 2:
                return ""
            j = (k + 2) // 2
        survives = self.diagonal_may_survive(seq, j)
        if survives is None or survives:
            return ""
        # p_{j,j} = 0 puts a first vanishing p_{i,j0} at some j0 inside the horizon
        if any(jacobi_allows_vanishing(self.a1, j0) for j0 in range(1, len(seq) + 1)):
            return ""
        return (
            f"[L{j} λ L{j}] must vanish, and the Jacobi identity on (L1, L(i-1), L(j0)) "
            f"forces p_(i-1,j0) = 0 for every j0 ≤ {len(seq)}"
        )

    def run(self, seq: list[Scalar], degs: list[int]) -> tuple[list[Scalar], list[int]] | None:
        self.deepest = max(self.deepest, len(seq))
        if len(seq) == self.horizon:
            why = self.classify(seq, degs)
            if why:
                self.reason = why
                return None
            return seq, degs
        j = len(seq)
        for d in range(4):
            if j == 1 and d % 2 == 0:
                continue
            nxt = self.a1 + seq[-1] - 1 - d
            if len(set(seq + [nxt])) > self.budget:
                continue
            if not self.legal(self.a1, nxt, seq[-1], d):
                continue
            found = self.run(seq + [nxt], degs + [d])
            if found is not None:
                return found
        if not self.reason:
            self.reason = "no legal degree keeps the value set within budget"
        return None


def scan_a1(a1, horizon: int = 12, value_budget: int = SCAN_VALUE_BUDGET) -> ScanResult:
    """Depth-first search for an a_1, ..., a_N sequence reachable through legal deg p_{1,j}.

    Admissibility at a finite horizon is necessary, not sufficient, for the infinite statement.
    """
    a1 = parse_scalar(a1)
    if horizon < 1:
        raise InvalidParams("the horizon must be at least 1")
    base = ScanResult(a1=render_scalar(a1), horizon=horizon, admissible=False, value_budget=value_budget)
    if im_part(a1):
        return base.model_copy(update={"rejection_depth": 1, "reason": "a1 must be real"})
    search = _Search(a1, horizon, value_budget)
    found = search.run([a1], [])
    if found is None:
        return base.model_copy(update={"rejection_depth": search.deepest, "reason": search.reason})
    seq, degs = found
    return base.model_copy(
        update={
            "admissible": True,
            "witness_sequence": [render_scalar(x) for x in seq],
            "degree_choices": degs,
        }
    )


def a1_grid(max_denominator: int = 6, lower="1", upper="2") -> list[Scalar]:
    """All m/n with n ≤ max_denominator inside [lower, upper], increasing."""
    lo, hi = re_part(parse_scalar(lower)), re_part(parse_scalar(upper))
    values = set()
    for n in range(1, max_denominator + 1):
        for m in range(int(lo * n) - 1, int(hi * n) + 2):
            q = Fraction(m, n)
            if lo <= q <= hi:
                values.add(q)
    return [scalar(q) for q in sorted(values)]


def parse_grid(text: str, max_denominator: int = 6) -> list[Scalar]:
    """`lower:upper` or `lower:upper:max_denominator` builds a grid, anything else is a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise InvalidParams(f"grid '{text}' must be lower:upper[:max_denominator]")
        den = int(parts[2]) if len(parts) == 3 else max_denominator
        return a1_grid(den, parts[0], parts[1])
    return [parse_scalar(item) for item in text.split(",") if item.strip()]
