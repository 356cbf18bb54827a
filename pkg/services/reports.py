import hashlib
import json
from typing import Any, Literal
from pydantic import BaseModel, Field, computed_field

SCHEMA_VERSION = "1.0.0"

Status = Literal["pass", "fail", "skipped"]


class CheckItem(BaseModel):
    check_id: str
    status: Status
    witnesses: list[str] = Field(default_factory=list)
    detail: str = ""


class CheckReport(BaseModel):
    """Outcome of one check suite: failing and skipped cells are listed, passes are counted."""

    title: str
    evaluated: int = 0
    items: list[CheckItem] = Field(default_factory=list)

    @property
    def failed(self) -> list[CheckItem]:
        return [item for item in self.items if item.status == "fail"]

    @property
    def skipped(self) -> list[CheckItem]:
        return [item for item in self.items if item.status == "skipped"]

    @property
    def passed(self) -> bool:
        return not self.failed

    @computed_field
    @property
    def status(self) -> Status:
        return "pass" if self.passed else "fail"

    def record_pass(self):
        self.evaluated += 1

    def record_fail(self, check_id: str, witnesses: list[str], detail: str = ""):
        self.evaluated += 1
        self.items.append(
            CheckItem(check_id=check_id, status="fail", witnesses=witnesses, detail=detail)
        )

    def record_skip(self, check_id: str, detail: str = ""):
        self.items.append(CheckItem(check_id=check_id, status="skipped", detail=detail))

    def record(self, check_id: str, ok: bool, witnesses: list[str] | None = None, detail: str = ""):
        """Lists the cell either way, for reports where every cell matters."""
        self.evaluated += 1
        self.items.append(
            CheckItem(
                check_id=check_id,
                status="pass" if ok else "fail",
                witnesses=witnesses or [],
                detail=detail,
            )
        )


class RunReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: str
    status: Status = "pass"
    reports: list[CheckReport] = Field(default_factory=list)
    data: Any = None
    checksum: str = ""
    elapsed: float = Field(default=0.0, exclude=True)

    def finalize(self) -> "RunReport":
        self.status = "fail" if any(not r.passed for r in self.reports) else "pass"
        self.checksum = compute_checksum(self)
        return self

    def to_json(self) -> str:
        return self.model_dump_json(indent=2) + "\n"


def compute_checksum(report: RunReport) -> str:
    body = report.model_dump(exclude={"checksum", "elapsed"})
    canonical = json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
