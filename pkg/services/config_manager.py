import copy
import os
import yaml
from services.printr import Printr

SYSTEM_CONFIG_PATH = "configs/system"
DEFAULT_CONFIG = "defaults.yaml"


class ConfigManager:
    def __init__(self, app_root_path: str):
        self.printr = Printr()
        self.system_config_path: str = os.path.join(app_root_path, SYSTEM_CONFIG_PATH)
        self.defaults = self.load_defaults()

    def __read_config_file(self, config_file: str) -> dict[str, any]:  # type: ignore
        parsed_config = {}

        if os.path.exists(config_file) and os.path.isfile(config_file):
            with open(config_file, "r", encoding="UTF-8") as stream:
                try:
                    parsed_config = yaml.safe_load(stream) or {}
                except yaml.YAMLError as e:
                    self.printr.print_err(
                        f"Could not load config ({os.path.basename(config_file)})!\n{str(e)}"
                    )
        else:
            self.printr.print_warn(f"Config file {config_file} not found.")

        return parsed_config

    def load_defaults(self) -> dict[str, any]:  # type: ignore
        """Fetch the system defaults and keep them for future use"""
        return self.__read_config_file(
            os.path.join(self.system_config_path, DEFAULT_CONFIG)
        )

    def get_config(self, override_file: str | None = None) -> dict[str, any]:  # type: ignore
        """Returns the defaults, deep-merged with the given override file if any."""
        config = copy.deepcopy(self.defaults)
        if override_file:
            config = self.__deep_merge(config, self.__read_config_file(override_file))
        return config

    def __deep_merge(self, source, updates):
        """Recursively merges updates into source."""
        for key, value in updates.items():
            if isinstance(value, dict):
                node = source.setdefault(key, {})
                self.__deep_merge(node, value)
            else:
                source[key] = value
        return source
