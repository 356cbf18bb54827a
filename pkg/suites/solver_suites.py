from argparse import Namespace
from exceptions import InvalidParams
from services.exactpoly import render, render_scalar
from services.funceq import (
    FuncEqInstance,
    degree_offset,
    intertwiner_residual,
    solve_intertwiner,
    solve_swapped_intertwiner,
    swapped_residual,
    verify_solution_table,
)
from services.grading import parse_grid, scan_a1
from services.printr import Printr
from services.reports import CheckReport, RunReport
from services.smith import determinant, divide, is_unit, parse_matrix, smith_normal_form, torsion_split
from services.spec_file import SpecFile
from suites.suite import Suite

printr = Printr()

FUNCEQ_KEYS = ("a", "b", "delta_i", "c_i", "delta_j", "c_j")


def parse_params(text: str) -> dict[str, str]:
    """`a=2,b=0,delta_i=1/2` into a dict; unknown keys are rejected."""
    params = {}
    for item in (text or "").split(","):
        if not item.strip():
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in FUNCEQ_KEYS:
            raise InvalidParams(f"'{item.strip()}' is not one of {', '.join(k + '=...' for k in FUNCEQ_KEYS)}")
        params[key] = value.strip()
    return params


def split_list(text: str | None, default: list) -> list:
    if not text:
        return list(default)
    return [item.strip() for item in text.split(",") if item.strip()]


class FuncEqSuite(Suite):
    """Solves one intertwiner equation and re-checks every basis element."""

    def run(self, args: Namespace, spec: SpecFile | None) -> RunReport:
        inst = FuncEqInstance.of(
            **parse_params(getattr(args, "params", "")),
            degree_bound=getattr(args, "degree", 3),
            homogeneous_degree=getattr(args, "homogeneous", None),
        )
        swapped = getattr(args, "swapped", False)
        solution = solve_swapped_intertwiner(inst) if swapped else solve_intertwiner(inst)
        residual = swapped_residual if swapped else intertwiner_residual

        check = CheckReport(title=f"intertwiner solutions ({'swapped' if swapped else 'standard'} orientation)")
        offsets = []
        for n, f in enumerate(solution.basis):
            defect = residual(inst, f)
            check.record(f"solves[#{n}]", not defect, [render(defect)] if defect else [])
            if not swapped:
                offset = degree_offset(f, inst.a, inst.delta_i, inst.delta_j)
                check.record(f"degree-offset[#{n}]", offset.holds, [render(f)], f"s = {render_scalar(offset.expected)}")
                offsets.append({"total_degree": offset.total_degree, "lambda_degree": offset.lambda_degree})

        printr.box_start(f"dimension {solution.dimension}")
        for poly in solution.rendered():
            printr.box_print(poly)
        printr.box_end()
        self.print_check(check)

        report = self.new_report()
        report.reports.append(check)
        report.data = {
            "instance": inst.describe(),
            "degree_bound": inst.degree_bound,
            "homogeneous_degree": inst.homogeneous_degree,
            "swapped": swapped,
            "dimension": solution.dimension,
            "basis": solution.rendered(),
            "degrees": offsets,
        }
        return report


class SolutionTableSuite(Suite):
    def validate(self) -> list[str]:
        section = self.section("solution_table")
        errors = []
        if len(section.get("samples", [])) < 5:
            errors.append("solution_table.samples needs at least 5 values")
        if len(section.get("perturbations", [])) < 5:
            errors.append("solution_table.perturbations needs at least 5 values")
        return errors

    def run(self, args: Namespace, spec: SpecFile | None) -> RunReport:
        section = self.section("solution_table")
        samples = split_list(getattr(args, "samples", None), section.get("samples", []))
        perturbations = split_list(getattr(args, "perturbations", None), section.get("perturbations", []))
        result = verify_solution_table(samples, perturbations)
        self.print_check(result.report)

        report = self.new_report()
        report.reports.append(result.report)
        report.data = result.rows
        return report


class ScanSuite(Suite):
    def validate(self) -> list[str]:
        section = self.section("scan")
        errors = []
        for key in ("horizon", "value_budget", "max_denominator"):
            if not isinstance(section.get(key), int) or section.get(key) < 1:
                errors.append(f"scan.{key} must be a positive integer")
        return errors

    def run(self, args: Namespace, spec: SpecFile | None) -> RunReport:
        section = self.section("scan")
        horizon = getattr(args, "horizon", None) or section["horizon"]
        budget = getattr(args, "budget", None) or section["value_budget"]
        grid_text = getattr(args, "grid", None) or f"{section.get('lower', '1')}:{section.get('upper', '2')}"
        grid = parse_grid(grid_text, section["max_denominator"])

        results = []
        printr.box_start(f"a1 scan, horizon {horizon}, value budget {budget}")
        for a1 in grid:
            result = scan_a1(a1, horizon, budget)
            printr.box_print(f"{result.a1:>6}  {'admissible' if result.admissible else 'rejected: ' + result.reason}")
            results.append(result.model_dump())
        printr.box_end()

        report = self.new_report()
        report.data = results
        return report


class SmithSuite(Suite):
    def run(self, args: Namespace, spec: SpecFile | None) -> RunReport:
        if not getattr(args, "matrix", None):
            raise InvalidParams("snf needs --matrix, e.g. --matrix '[[d, 1], [0, d]]'")
        M = parse_matrix(args.matrix)
        U, S, V = smith_normal_form(M)

        check = CheckReport(title=f"Smith normal form of a {M.nrows}x{M.ncols} matrix")
        check.record("U*M*V=S", (U @ M) @ V == S)
        check.record("U unimodular", is_unit(determinant(U)), [render(determinant(U))])
        check.record("V unimodular", is_unit(determinant(V)), [render(determinant(V))])
        diagonal = S.diagonal()
        off_diagonal = any(S.rows[i][j] for i in range(S.nrows) for j in range(S.ncols) if i != j)
        check.record("diagonal", not off_diagonal)
        for n in range(len(diagonal) - 1):
            first, second = diagonal[n], diagonal[n + 1]
            divides = not second if not first else not divide(second, first)[1]
            check.record(f"chain[{n + 1}|{n + 2}]", divides, [render(first), render(second)])
        self.print_check(check)

        free_rank, torsion = torsion_split(M)
        report = self.new_report()
        report.reports.append(check)
        report.data = {
            "U": U.render(),
            "S": S.render(),
            "V": V.render(),
            "free_rank": free_rank,
            "torsion": [render(p) for p in torsion],
        }
        return report
