"""Kubo-Ando operator means, matrix divergences and barycenters of positive definite matrices.

Set ``OPMEANS_BACKEND=numpy`` before import to bypass the numba kernels.
"""

from __future__ import annotations

from ._kernels import BACKEND
from .barycenters import (
    SolverConfig,
    SolverReport,
    WeightedEnsemble,
    bw_barycenter,
    geometric_barycenter_closed_form,
    gradient_check,
    hellinger_barycenter,
    ka_barycenter,
    karcher_mean,
    loss_gradient,
    loss_q,
)
from .divergences import (
    SigmaPotential,
    bw_curve_verbatim,
    bw_geodesic,
    d_bw,
    d_rtm,
    g_sigma,
    phi_mu,
    phi_sigma,
    rtm_geodesic,
    rtm_velocity,
)
from .errors import DegenerateProblemError, DomainError, OpMeansError
from .kubo_ando import (
    GeneratorMeasure,
    HalfLineMeasure,
    MeanDescriptor,
    adjoint,
    convex_order_leq,
    mean,
    parallel_sum,
    parse_mean,
    pushforward_to_unit,
    transpose,
)

__all__ = [
    "BACKEND",
    "DegenerateProblemError",
    "DomainError",
    "GeneratorMeasure",
    "HalfLineMeasure",
    "MeanDescriptor",
    "OpMeansError",
    "SigmaPotential",
    "SolverConfig",
    "SolverReport",
    "WeightedEnsemble",
    "adjoint",
    "bw_barycenter",
    "bw_curve_verbatim",
    "bw_geodesic",
    "convex_order_leq",
    "d_bw",
    "d_rtm",
    "g_sigma",
    "geometric_barycenter_closed_form",
    "gradient_check",
    "hellinger_barycenter",
    "ka_barycenter",
    "karcher_mean",
    "loss_gradient",
    "loss_q",
    "mean",
    "parallel_sum",
    "parse_mean",
    "phi_mu",
    "phi_sigma",
    "pushforward_to_unit",
    "rtm_geodesic",
    "rtm_velocity",
    "transpose",
]
