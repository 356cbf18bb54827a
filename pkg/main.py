from os import path
import argparse
import sys
import yaml
from exceptions import (
    HypothesisViolated,
    MalformedBracket,
    NotASolution,
    NotVirasoroAtZero,
    SpecError,
    TruncationExceeded,
)
from services.command_tower import CommandTower
from services.config_manager import ConfigManager
from services.printr import Printr
from services.schema_check import SchemaCheck

printr = Printr()

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_SPEC_ERROR = 2
EXIT_TRUNCATION = 3

ANALYSIS_ERRORS = (NotASolution, NotVirasoroAtZero, HypothesisViolated, MalformedBracket)


def get_application_root() -> str:
    return path.dirname(path.abspath(__file__))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="algebra/module spec file (YAML)")
    common.add_argument("--json", help="write the JSON report here (bare file names go to the report directory)")
    common.add_argument("--config", help="YAML file deep-merged over the defaults")
    common.add_argument("--baseline", help="earlier JSON report that must have the same checksum")
    common.add_argument("--no-color", action="store_true", help="plain terminal output")

    parser = argparse.ArgumentParser(
        prog="lca", description="Exact checks and solvers for Lie conformal algebras and their modules."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("check-algebra", parents=[common], help="skew-symmetry and Jacobi identity")

    module = commands.add_parser("check-module", parents=[common], help="module axioms, submodules and kernels")
    module.add_argument("--module", help="only this module of the spec")

    annih = commands.add_parser("annih-check", parents=[common], help="annihilation Lie algebra")
    annih.add_argument("--depth", type=int)
    annih.add_argument("--extended", action="store_true", help="adjoin ∂")

    weights = commands.add_parser("weights", parents=[common], help="L_(1) weight spaces")
    weights.add_argument("--degree", type=int)
    weights.add_argument("--module")
    weights.add_argument("--nontrivial", action="store_true", help="assert dim V[α] ≤ rank")

    commands.add_parser("check-grading", parents=[common], help="weight classes, constant terms, degree profile")

    funceq = commands.add_parser("solve-funceq", parents=[common], help="solve one intertwiner equation")
    funceq.add_argument("--params", default="", help="e.g. a=2,b=0,delta_i=1,c_i=0,delta_j=1,c_j=0")
    funceq.add_argument("--degree", type=int, default=3, help="total degree bound")
    funceq.add_argument("--homogeneous", type=int, help="only solutions of exactly this total degree")
    funceq.add_argument("--swapped", action="store_true", help="use the f(∂+μ, λ) orientation")

    table = commands.add_parser(
        "verify-table", aliases=["verify-prop36"], parents=[common], help="homogeneous solution table"
    )
    table.add_argument("--samples", help="comma separated values for every free parameter")
    table.add_argument("--perturbations", help="comma separated shifts of Δ_j")

    scan = commands.add_parser("scan-a1", parents=[common], help="admissible a_1 values at a horizon")
    scan.add_argument("--grid", help="lower:upper[:max_denominator] or a comma list")
    scan.add_argument("--horizon", type=int)
    scan.add_argument("--budget", type=int, help="maximum number of distinct a_i values")

    snf = commands.add_parser("snf", parents=[common], help="Smith normal form over C[∂]")
    snf.add_argument("--matrix", help="nested list such as '[[d, 1], [0, d]]'")
    return parser


class ConformalToolkit:
    def __init__(self):
        self.app_root_dir = get_application_root()
        self.config_manager = ConfigManager(self.app_root_dir)
        self.tower = None

    def load_config(self, override_file: str | None = None):
        config = self.config_manager.get_config(override_file)
        self.tower = CommandTower(config=config, app_root_dir=self.app_root_dir)

    def run(self, argv: list[str] | None = None) -> int:
        args = build_parser().parse_args(argv)
        printr.colored = not args.no_color
        self.load_config(args.config)

        suite = self.tower.get_suite(args.command)
        if suite is None:
            for broken in self.tower.get_broken_suites():
                if broken["name"] == args.command:
                    printr.print_err(f"'{args.command}' is disabled: {broken['error']}")
                    break
            else:
                printr.print_err(f"'{args.command}' is not configured")
            return EXIT_SPEC_ERROR

        try:
            report = suite.run_command(args)
        except TruncationExceeded as e:
            printr.print_err(f"Truncation too small: {e}")
            return EXIT_TRUNCATION
        except (SpecError, yaml.YAMLError) as e:
            printr.print_err(f"Spec error: {e}")
            return EXIT_SPEC_ERROR
        except FileNotFoundError as e:
            printr.print_err(f"Could not find {e.filename}")
            return EXIT_SPEC_ERROR
        except ANALYSIS_ERRORS as e:
            printr.print_err(f"{type(e).__name__}: {e}")
            return EXIT_CHECK_FAILED

        if args.json:
            written = suite.write_report(report, args.json)
            printr.print_info(f"Report written to {written}")

        exit_code = EXIT_OK if report.status == "pass" else EXIT_CHECK_FAILED
        if args.baseline and not SchemaCheck().matches_baseline(report, args.baseline):
            exit_code = EXIT_CHECK_FAILED

        if exit_code == EXIT_OK:
            printr.print(Printr.clr(f"{args.command}: pass", Printr.GREEN) if printr.colored else f"{args.command}: pass")
        else:
            printr.print_err(f"{args.command}: fail")
        return exit_code


# ─────────────────────────────────── ↓ START ↓ ─────────────────────────────────────────
if __name__ == "__main__":
    core = ConformalToolkit()
    sys.exit(core.run())
