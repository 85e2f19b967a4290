import os
from dataclasses import dataclass, replace

from injector import Module, provider, singleton

from qroof.config.module_config import ModuleConfig

DEFAULT_SEED = 0x5EED


@dataclass(frozen=True)
class Budget:
    """Search effort of the roof oracle. Results are a deterministic function of the budget."""

    seed: int = DEFAULT_SEED
    threads: int = 1
    direction_grid: int = 2000
    circle_grid: int = 720
    nm_iterations: int = 200
    nm_iterations_high: int = 1500
    triangle_seeds: int = 10_000
    refine_top: int = 4

    def with_seed(self, seed: int) -> "Budget":
        return replace(self, seed=seed)


class RoofOracleConfig(ModuleConfig):
    def _configure(self) -> None:
        self._set_name("qroof")

        self.seed = self._get_int("seed", DEFAULT_SEED, minimum=0)
        self.threads = self._get_int("threads", os.cpu_count() or 1, minimum=1)
        self.direction_grid = self._get_int("direction_grid", 2000, minimum=10)
        self.circle_grid = self._get_int("circle_grid", 720, minimum=8)
        self.nm_iterations = self._get_int("nm_iterations", 200, minimum=1)
        self.nm_iterations_high = self._get_int("nm_iterations_high", 1500, minimum=1)
        self.triangle_seeds = self._get_int("triangle_seeds", 10_000, minimum=1)
        self.refine_top = self._get_int("refine_top", 4, minimum=1)
        self.base = self._get_enum("base", ["2", "e"], "2")

    def budget(self) -> Budget:
        return Budget(
            seed=self.seed,
            threads=self.threads,
            direction_grid=self.direction_grid,
            circle_grid=self.circle_grid,
            nm_iterations=self.nm_iterations,
            nm_iterations_high=self.nm_iterations_high,
            triangle_seeds=self.triangle_seeds,
            refine_top=self.refine_top,
        )


class RoofOracleModule(Module):
    @singleton
    @provider
    def provide_budget(self, config: RoofOracleConfig) -> Budget:
        return config.budget()
