import pytest
from services.printr import Printr


@pytest.fixture
def captured():
    """Routes every Printr channel into lists for the duration of a test."""
    printr = Printr()
    sinks = {channel: [] for channel in ("main", "error", "warning", "info")}
    for channel, sink in sinks.items():
        printr.set_output(channel, sink)
    yield sinks
    for channel in sinks:
        printr.set_output(channel, None)
