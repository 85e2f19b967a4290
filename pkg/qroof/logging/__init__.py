import logging
import os
from dataclasses import dataclass
from typing import Any, Dict

from injector import Module, provider

from qroof.config.module_config import ModuleConfig

_LEVELS = ["debug", "info", "warning", "error"]


class LoggingModuleConfig(ModuleConfig):
    def _configure(self) -> None:
        self._set_name("logging")

        app_dir = self.src.app_base_path

        self.level = self._get_enum("level", _LEVELS, "info")
        self.log_to_file = self._get_bool("log_to_file", False)
        self.injector = self._get_bool("injector", False)
        self.log_folder = self._get_str("log_folder", "logs")
        self.log_file = self._get_str("log_file", "qroof.log")
        self.log_full_path = os.path.join(app_dir, self.log_folder, self.log_file)


@dataclass
class TelemetryLogger:
    """The app logger plus structured records for oracle runs."""

    logger: logging.Logger

    def telemetry_logging(self, telemetry_log_message: str, telemetry_log_content: Dict[str, Any]):
        self.logger.info(telemetry_log_message, extra={"custom_dimensions": telemetry_log_content})

    def dump_log_file(self, obj: Any, file_path: str):
        from qroof.utils import json_dump

        if hasattr(obj, "to_dict"):
            obj = obj.to_dict()
        if not isinstance(obj, (list, dict)):
            raise TypeError(f"cannot dump {type(obj).__name__}: expected a list, a dict or an object with to_dict")
        with open(file_path, "w", encoding="utf-8") as log_file:
            json_dump(obj, log_file)

    def debug(self, msg: str, *args: Any, **kwargs: Any):
        self.logger.debug(msg, *args, **kwargs)


class LoggingModule(Module):
    @provider
    def provide_logger(self, config: LoggingModuleConfig) -> logging.Logger:
        # library modules log through children of this logger (`qroof.<module>`)
        logger = logging.getLogger("qroof")
        level = getattr(logging, config.level.upper())
        logger.setLevel(level)

        log_format = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"
        if config.log_to_file:
            if not any(isinstance(handler, logging.FileHandler) for handler in logger.handlers):
                os.makedirs(os.path.dirname(config.log_full_path), exist_ok=True)
                file_handler = logging.FileHandler(config.log_full_path, encoding="utf-8")
                file_handler.setLevel(level)
                file_handler.setFormatter(logging.Formatter(log_format))
                logger.addHandler(file_handler)
        elif not any(type(handler) is logging.StreamHandler for handler in logger.handlers):
            stream_handler = logging.StreamHandler()
            stream_handler.setLevel(level)
            stream_handler.setFormatter(logging.Formatter(log_format))
            logger.addHandler(stream_handler)

        if config.injector:
            logging.getLogger("injector").setLevel(logging.INFO)

        return logger

    @provider
    def provide_telemetry_logger(self, app_logger: logging.Logger) -> TelemetryLogger:
        return TelemetryLogger(logger=app_logger)
