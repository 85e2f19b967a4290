from .positivity import (
    NotPositive,
    PositivityClass,
    PositivityTag,
    choi_is_completely_positive,
    choi_matrix,
    classify_axial,
    classify_positivity,
    classify_positivity_general,
    require_positive,
    sampled_min_det,
)
from .qubit_map import (
    AxialParams,
    QubitMap,
    amplitude_damping,
    apply,
    axial,
    depolarizing,
    identity,
    kraus2,
    phase_damping,
    unital,
)
from .spec_models import ChannelSpecError, load_channel_spec, parse_channel_spec

__all__ = [
    "AxialParams",
    "ChannelSpecError",
    "NotPositive",
    "PositivityClass",
    "PositivityTag",
    "QubitMap",
    "amplitude_damping",
    "apply",
    "axial",
    "choi_is_completely_positive",
    "choi_matrix",
    "classify_axial",
    "classify_positivity",
    "classify_positivity_general",
    "depolarizing",
    "identity",
    "kraus2",
    "load_channel_spec",
    "parse_channel_spec",
    "phase_damping",
    "require_positive",
    "sampled_min_det",
    "unital",
]
