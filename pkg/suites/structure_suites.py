from argparse import Namespace
from services.annihilation import (
    AnnihAlgebra,
    check_annih_lie,
    check_correspondence,
    check_weight_bound,
    weight_ladder_check,
    weight_spaces,
)
from services.conformal import check_jacobi, check_skew
from services.grading import check_constant_terms, profile_from_table, split_weight_classes
from services.modules import (
    ConformalModule,
    action_kernel,
    check_module,
    find_invariant_submodule,
    render_combination,
    render_element,
)
from services.exactpoly import render, render_scalar
from services.printr import Printr
from services.reports import CheckReport, RunReport
from services.spec_file import SpecFile
from suites.suite import Suite

printr = Printr()


def selected_modules(args: Namespace, spec: SpecFile) -> list[ConformalModule]:
    name = getattr(args, "module", None)
    return [spec.module(name)] if name else list(spec.modules.values()) or [spec.module()]


class AlgebraSuite(Suite):
    """Skew-symmetry and Jacobi identity of the spec's algebra."""

    requires_spec = True

    def run(self, args: Namespace, spec: SpecFile) -> RunReport:
        A = spec.algebra
        report = self.new_report()
        printr.print_info(f"Checking {A.name} on generators {', '.join(A.gens)}")
        for check in (check_skew(A), check_jacobi(A)):
            self.print_check(check)
            report.reports.append(check)
        report.data = {"algebra": A.name, "generators": list(A.gens), "truncation": A.truncation}
        return report


class ModuleSuite(Suite):
    requires_spec = True

    def validate(self) -> list[str]:
        errors = []
        section = self.section("module_check")
        if not isinstance(section.get("spot_checks", 0), int) or section.get("spot_checks", 0) < 0:
            errors.append("module_check.spot_checks must be a non-negative integer")
        return errors

    def run(self, args: Namespace, spec: SpecFile) -> RunReport:
        A = spec.algebra
        section = self.section("module_check")
        report = self.new_report()
        data = []
        for M in selected_modules(args, spec):
            check = check_module(A, M, section.get("spot_checks", 4), section.get("seed", 7))
            self.print_check(check)
            report.reports.append(check)

            entry = {"module": M.name, "rank": M.rank}
            if M.rank == 1 and M.irreducible is not None:
                submodule = find_invariant_submodule(M, max_degree=3)
                irreducibility = CheckReport(title=f"submodule search in {M.name}")
                irreducibility.record(
                    "irreducible-flag",
                    (submodule is None) == M.irreducible,
                    [render(submodule)] if submodule is not None else [],
                    f"flag says {'irreducible' if M.irreducible else 'reducible'}",
                )
                self.print_check(irreducibility)
                report.reports.append(irreducibility)
                entry["submodule"] = render(submodule) if submodule is not None else None

            kernel = action_kernel(A, M)
            entry["kernel"] = {
                "zero_generators": kernel.zero_generators,
                "per_grade": {str(g): [render_combination(c) for c in combos] for g, combos in kernel.per_grade.items()},
                "span": [render_combination(c) for c in kernel.span],
            }
            data.append(entry)
        report.data = data
        return report


class AnnihilationSuite(Suite):
    requires_spec = True

    def validate(self) -> list[str]:
        depth = self.section("annihilation").get("depth", 6)
        return [] if isinstance(depth, int) and depth >= 0 else ["annihilation.depth must be a non-negative integer"]

    def run(self, args: Namespace, spec: SpecFile) -> RunReport:
        depth = getattr(args, "depth", None)
        if depth is None:
            depth = self.section("annihilation").get("depth", 6)
        X = AnnihAlgebra(spec.algebra, depth, extended=getattr(args, "extended", False))
        report = self.new_report()
        check = check_annih_lie(X)
        self.print_check(check)
        report.reports.append(check)
        for M in spec.modules.values():
            correspondence = check_correspondence(spec.algebra, M)
            self.print_check(correspondence)
            report.reports.append(correspondence)
        report.data = {"algebra": spec.algebra.name, "depth": depth, "extended": X.extended}
        return report


class WeightSuite(Suite):
    requires_spec = True

    def run(self, args: Namespace, spec: SpecFile) -> RunReport:
        degree = getattr(args, "degree", None)
        if degree is None:
            degree = self.section("weights").get("degree", 5)
        A = spec.algebra
        label = A.virasoro or A.gens[A.virasoro_index()]
        report = self.new_report()
        data = []
        for M in selected_modules(args, spec):
            spaces = weight_spaces(M, degree, label)
            printr.box_start(f"weights of {M.name}, ∂-degree ≤ {degree}")
            for wr in spaces:
                printr.box_print(f"{render_scalar(wr.weight)}: dim {wr.dimension}")
            printr.box_end()

            ladder = weight_ladder_check(M, spaces, virasoro_label=label)
            self.print_check(ladder)
            report.reports.append(ladder)
            if getattr(args, "nontrivial", False):
                bound = check_weight_bound(M, spaces)
                self.print_check(bound)
                report.reports.append(bound)
            data.append(
                {
                    "module": M.name,
                    "degree": degree,
                    "weights": [
                        {
                            "weight": render_scalar(wr.weight),
                            "dimension": wr.dimension,
                            "basis": [render_element(M, u) for u in wr.basis],
                        }
                        for wr in spaces
                    ],
                }
            )
        report.data = data
        return report


class GradingSuite(Suite):
    requires_spec = True

    def run(self, args: Namespace, spec: SpecFile) -> RunReport:
        A = spec.algebra
        report = self.new_report()
        I0, I1, split = split_weight_classes(A)
        constants = check_constant_terms(A)
        profile = profile_from_table(A)
        for check in (split, constants, profile.report):
            self.print_check(check)
            report.reports.append(check)
        report.data = {"I0": I0, "I1": I1, "profile": profile.as_data()}
        return report
