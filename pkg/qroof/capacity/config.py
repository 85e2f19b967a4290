from dataclasses import dataclass

from qroof.config.module_config import ModuleConfig


@dataclass(frozen=True)
class CapacitySettings:
    starts: int = 32
    iterations: int = 80
    xatol: float = 1e-8


class CapacityConfig(ModuleConfig):
    def _configure(self) -> None:
        self._set_name("capacity")

        self.starts = self._get_int("starts", 32, minimum=1)
        self.iterations = self._get_int("iterations", 80, minimum=1)
        self.xatol = self._get_float("xatol", 1e-8, positive=True)

    def settings(self) -> CapacitySettings:
        return CapacitySettings(starts=self.starts, iterations=self.iterations, xatol=self.xatol)
