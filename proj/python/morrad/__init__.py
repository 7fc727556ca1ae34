"""Python access to the morrad core."""

from ._morrad import (
    MorradError,
    Weight,
    dyadic_morrey,
    e_counts,
    exact_lp,
    kkl_norm,
    morrey,
    phi,
    rademacher_sum,
    run,
)

__all__ = [
    "MorradError",
    "Weight",
    "dyadic_morrey",
    "e_counts",
    "exact_lp",
    "kkl_norm",
    "morrey",
    "phi",
    "rademacher_sum",
    "run",
]
