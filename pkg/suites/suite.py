import time
from argparse import Namespace
from importlib import import_module
from typing import Any
from exceptions import InvalidStructure
from services.printr import Printr
from services.report_writer import ReportWriter
from services.reports import CheckReport, RunReport
from services.spec_file import SpecFile, load_spec

printr = Printr()


class Suite(ReportWriter):
    """The base class of every command suite. It is meant to be 'virtual': the CommandTower
    instantiates a concrete subclass per command named in the `suites:` section of the config.

    Subclasses override `run()` and, if they need more config, `validate()` and `prepare()`.
    """

    requires_spec: bool = False
    """If set, the command refuses to run without --spec."""

    def __init__(self, name: str, config: dict[str, Any], app_root_dir: str):
        """
        Args:
            name (str): The command this suite answers, e.g. "check-algebra".
            config (dict[str, Any]): The merged configuration (defaults plus --config override).
            app_root_dir (str): The path to the root directory of the app.
        """
        super().__init__(app_root_dir=app_root_dir, subdir=config.get("report", {}).get("output_dir", "reports"))

        self.name = name
        self.config = config
        self.app_root_dir = app_root_dir

        self.execution_start: None | float = None
        """Used for benchmarking. The timer is (re-)started whenever run_command starts."""

    @staticmethod
    def create_dynamically(
        module_path: str,
        class_name: str,
        name: str,
        config: dict[str, Any],
        app_root_dir: str,
        **kwargs,
    ):
        """Creates a Suite from a module path and class name, e.g. suites.structure_suites / AlgebraSuite."""

        module = import_module(module_path)
        DerivedSuiteClass = getattr(module, class_name)
        instance = DerivedSuiteClass(
            name=name,
            config=config,
            app_root_dir=app_root_dir,
            **kwargs,
        )
        return instance

    def print_execution_time(self, reset_timer=False) -> float:
        """Prints the time since the execution started (in seconds) and returns it."""
        elapsed_seconds = 0.0
        if self.execution_start:
            elapsed_seconds = time.perf_counter() - self.execution_start
            printr.print_info(f"...took {elapsed_seconds:.2f}s")
        if reset_timer:
            self.start_execution_benchmark()
        return elapsed_seconds

    def start_execution_benchmark(self):
        self.execution_start = time.perf_counter()

    # ──────────────────────────────────── Hooks ─────────────────────────────────── #

    def validate(self) -> list[str]:
        """Checks the config sections this suite reads. Errors disable the suite in the CommandTower.

        Returns:
            list[str]: A list of error messages or an empty list if everything is okay.
        """
        return []

    def prepare(self):
        """Called once after validate() succeeded."""
        pass

    def run(self, args: Namespace, spec: SpecFile | None) -> RunReport:
        """Runs the command and returns its report. Override this in every suite."""
        raise NotImplementedError(f"{type(self).__name__} does not implement run()")

    # ──────────────────────────── Running a command ──────────────────────────── #

    def run_command(self, args: Namespace) -> RunReport:
        self.start_execution_benchmark()
        spec = None
        spec_path = getattr(args, "spec", None)
        if spec_path:
            spec = load_spec(spec_path)
        elif self.requires_spec:
            raise InvalidStructure(f"'{self.name}' needs --spec")

        report = self.run(args, spec).finalize()
        report.elapsed = self.print_execution_time()
        return report

    def section(self, key: str) -> dict[str, Any]:
        return self.config.get(key, {}) or {}

    def new_report(self) -> RunReport:
        return RunReport(command=self.name)

    @staticmethod
    def print_check(check: CheckReport):
        printr.box_start(check.title)
        printr.box_print(f"status: {check.status}, evaluated: {check.evaluated}, skipped: {len(check.skipped)}")
        for item in check.failed:
            printr.box_print(f"FAIL {item.check_id}")
            for witness in item.witnesses:
                printr.box_print(f"    {witness}")
            if item.detail:
                printr.box_print(f"    {item.detail}")
        printr.box_end()
