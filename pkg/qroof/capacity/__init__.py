from .config import CapacityConfig, CapacitySettings
from .holevo import (
    CapacityResult,
    amplitude_damping_capacity,
    amplitude_damping_holevo,
    axis_holevo,
    holevo_quantity,
    hsw_capacity,
    maximize_over_ball,
    unital_capacity,
)
from .sweeps import (
    SweepPoint,
    amplitude_damping_profile,
    axis_holevo_profile,
    capacity_sweep,
    off_axis_probe,
    unital_slice_reference,
)

__all__ = [
    "CapacityConfig",
    "CapacityResult",
    "CapacitySettings",
    "SweepPoint",
    "amplitude_damping_capacity",
    "amplitude_damping_holevo",
    "amplitude_damping_profile",
    "axis_holevo",
    "axis_holevo_profile",
    "capacity_sweep",
    "holevo_quantity",
    "hsw_capacity",
    "maximize_over_ball",
    "off_axis_probe",
    "unital_capacity",
    "unital_slice_reference",
]
