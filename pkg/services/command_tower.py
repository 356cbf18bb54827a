from typing import Any
from suites.suite import Suite
from services.printr import Printr


printr = Printr()


class CommandTower:
    def __init__(self, config: dict[str, Any], app_root_dir: str):
        self.config = config
        self.app_root_dir = app_root_dir
        self.broken_suites = []

        self.suites = self.__instantiate_suites()
        self.command_suite_dict: dict[str, Suite] = {suite.name: suite for suite in self.suites}

    def __instantiate_suites(self) -> list[Suite]:
        suites = []
        for command, suite_config in (self.config.get("suites") or {}).items():
            if suite_config.get("disabled") is True:
                continue

            suite = None
            try:
                suite = Suite.create_dynamically(
                    module_path=suite_config.get("module"),
                    class_name=suite_config.get("name"),
                    name=command,
                    config=self.config,
                    app_root_dir=self.app_root_dir,
                    **suite_config.get("args", {}),
                )
            except Exception as e:  # pylint: disable=broad-except
                msg = str(e).strip()
                if not msg:
                    msg = type(e).__name__
                self.broken_suites.append({"name": command, "error": msg})
            else:
                errors = suite.validate()
                if not errors:
                    suite.prepare()
                    suites.append(suite)
                else:
                    self.broken_suites.append({"name": command, "error": ", ".join(errors)})

        return suites

    def get_suite(self, command: str) -> Suite | None:
        return self.command_suite_dict.get(command)

    def get_broken_suites(self):
        return self.broken_suites
