import json
from packaging import version
from services.printr import Printr
from services.reports import SCHEMA_VERSION, RunReport

printr = Printr()


class SchemaCheck:
    """Compares a fresh report with a stored baseline report."""

    def __init__(self, local_version: str = SCHEMA_VERSION):
        self.local_version = version.parse(local_version)

    def is_compatible(self, other: str) -> bool:
        try:
            remote = version.parse(other)
        except version.InvalidVersion as e:
            printr.print_warn(f"Error with schema version information: {e}")
            return False
        return remote.major == self.local_version.major

    def load_baseline(self, baseline_path: str) -> dict | None:
        try:
            with open(baseline_path, "r", encoding="UTF-8") as stream:
                return json.load(stream)
        except FileNotFoundError:
            printr.print_warn(f"Baseline {baseline_path} not found.")
        except json.JSONDecodeError as e:
            printr.print_err(f"Could not read baseline ({baseline_path})!\n{e}")
        return None

    def matches_baseline(self, report: RunReport, baseline_path: str) -> bool:
        baseline = self.load_baseline(baseline_path)
        if baseline is None:
            return False
        baseline_version = str(baseline.get("schema_version", "0.0.0"))
        if not self.is_compatible(baseline_version):
            printr.print_err(
                f"Baseline schema {baseline_version} is not compatible with {self.local_version}."
            )
            return False
        if baseline.get("checksum") != report.checksum:
            printr.print_err(
                f"Checksum differs from baseline: {baseline.get('checksum')} != {report.checksum}"
            )
            return False
        return True
