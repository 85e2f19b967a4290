import logging
from typing import Any, Dict, Optional

from injector import Injector

from qroof.bloch import log_base
from qroof.capacity import CapacityConfig, CapacitySettings
from qroof.config.config_mgt import AppConfigSource
from qroof.logging import LoggingModule, TelemetryLogger
from qroof.roof_oracle import Budget, RoofOracle, RoofOracleConfig, RoofOracleModule
from qroof.utils.app_utils import ProjectDir, discover_app_dir


class QRoofApp(object):
    def __init__(
        self,
        app_dir: Optional[str] = None,
        config: Optional[Dict[str, Any]] = None,
        overrides: Optional[Dict[str, Any]] = None,
        **kwargs: Any,
    ) -> None:
        """
        Initialize the qroof app.
        :param app_dir: The project directory; discovered from the working directory when omitted.
        :param config: In-memory configuration values.
        :param overrides: Values that win over every other source (command-line flags).
        :param kwargs: Additional in-memory configuration values.
        """
        self.project: ProjectDir = discover_app_dir(app_dir)
        config = {
            **(config or {}),
            **(kwargs or {}),
        }

        self.config_src = AppConfigSource(
            config_file_path=self.project.config_file,
            config=config,
            app_base_path=self.project.path,
        )
        for key, value in (overrides or {}).items():
            if value is not None:
                self.config_src.set_config_value(key, "str", value, "override")

        self.app_injector = Injector([LoggingModule, RoofOracleModule])
        self.app_injector.binder.bind(AppConfigSource, to=self.config_src)

    @property
    def budget(self) -> Budget:
        return self.app_injector.get(Budget)

    @property
    def oracle(self) -> RoofOracle:
        return self.app_injector.get(RoofOracle)

    @property
    def logger(self) -> TelemetryLogger:
        return self.app_injector.get(TelemetryLogger)

    @property
    def capacity_settings(self) -> CapacitySettings:
        return self.app_injector.get(CapacityConfig).settings()

    @property
    def base(self) -> float:
        return log_base(self.app_injector.get(RoofOracleConfig).base)

    def start(self) -> logging.Logger:
        """Resolve the package logger so handlers are in place before any computation logs."""
        return self.app_injector.get(logging.Logger)
