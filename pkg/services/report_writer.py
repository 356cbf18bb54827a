from os import path, makedirs
from services.reports import RunReport


class ReportWriter:
    def __init__(self, app_root_dir: str, subdir: str):
        """Remembers the report directory inside the app root; it is only created once something gets written."""

        self.file_dir: str = path.join(app_root_dir, subdir)

    def get_full_file_path(self, file_name: str) -> str:
        # bare file names go to the report directory, anything with a directory part is used as given
        if path.dirname(file_name):
            return file_name
        return path.join(self.file_dir, file_name)

    def write_report(self, report: RunReport, file_name: str) -> str:
        full_path = self.get_full_file_path(file_name)
        directory = path.dirname(full_path)
        if directory and not path.exists(directory):
            makedirs(directory)
        with open(full_path, "w", encoding="UTF-8", newline="\n") as stream:
            stream.write(report.to_json())
        return full_path
