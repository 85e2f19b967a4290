import json
import logging

import pytest
from injector import Injector

from qroof.config.config_mgt import AppConfigSource
from qroof.logging import LoggingModule, TelemetryLogger


def _telemetry_logger() -> TelemetryLogger:
    injector = Injector([LoggingModule])
    injector.binder.bind(AppConfigSource, to=AppConfigSource(config={"logging.level": "debug"}))
    return injector.get(TelemetryLogger)


def test_telemetry_records_carry_custom_dimensions(caplog: pytest.LogCaptureFixture):
    telemetry = _telemetry_logger()
    with caplog.at_level(logging.INFO, logger="qroof"):
        telemetry.telemetry_logging("oracle run", {"functional": "entropy", "length": 3})
    record = caplog.records[-1]
    assert record.getMessage() == "oracle run"
    assert record.custom_dimensions == {"functional": "entropy", "length": 3}


def test_dump_log_file(tmp_path):
    class Result:
        def to_dict(self):
            return {"value": 0.5, "weights": [0.25, 0.75]}

    telemetry = _telemetry_logger()
    path = tmp_path / "roof.json"
    telemetry.dump_log_file(Result(), str(path))
    assert json.loads(path.read_text()) == {"value": 0.5, "weights": [0.25, 0.75]}

    telemetry.dump_log_file([1, 2], str(path))
    assert json.loads(path.read_text()) == [1, 2]

    with pytest.raises(TypeError):
        telemetry.dump_log_file("plain text", str(path))
