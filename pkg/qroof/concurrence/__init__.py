from .closed_forms import (
    NotAtBifurcation,
    amplitude_damping_concurrence,
    apex_z0,
    axial_concurrence,
    kraus2_concurrence,
    linear_concurrence_check,
    unital_concurrence,
)
from .foliation import Apex, DegenerateKernel, Flat, Foliation, foliation, foliation_of
from .form import (
    TAU_IMAG,
    TAU_PSD,
    ConcurrenceForm,
    NegativeForm,
    NonRealEigenvalues,
    concurrence,
    concurrence_form,
    critical_w,
    eigen_flow,
    eigen_flow_many,
    kernel_at,
    locate_critical_w,
    min_eigenvalue,
    q_matrix,
)

__all__ = [
    "TAU_IMAG",
    "TAU_PSD",
    "Apex",
    "ConcurrenceForm",
    "DegenerateKernel",
    "Flat",
    "Foliation",
    "NegativeForm",
    "NonRealEigenvalues",
    "NotAtBifurcation",
    "amplitude_damping_concurrence",
    "apex_z0",
    "axial_concurrence",
    "concurrence",
    "concurrence_form",
    "critical_w",
    "eigen_flow",
    "eigen_flow_many",
    "foliation",
    "foliation_of",
    "kernel_at",
    "kraus2_concurrence",
    "linear_concurrence_check",
    "locate_critical_w",
    "min_eigenvalue",
    "q_matrix",
    "unital_concurrence",
]
