from ._core import (
    Certificate,
    Error,
    LevelTooLow,
    StepBudgetExceeded,
    bound_f,
    certificate_from_json,
    coarse_bound_f,
    endo,
    hamilton,
    norm,
    prefix_norm_sum,
    rd,
    sharpen,
    sharpen_all,
    sporadic,
)

__all__ = [
    "Certificate",
    "Error",
    "LevelTooLow",
    "StepBudgetExceeded",
    "bound_f",
    "certificate_from_json",
    "coarse_bound_f",
    "endo",
    "hamilton",
    "norm",
    "prefix_norm_sum",
    "rd",
    "sharpen",
    "sharpen_all",
    "sporadic",
]
