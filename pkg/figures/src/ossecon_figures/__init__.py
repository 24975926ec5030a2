"""Figure rendering for ossecon CLI outputs."""

from .schemas import (
    EquilibriumCurves,
    SchemaError,
    SweepTable,
    TailFitData,
    read_equilibrium,
    read_sweep,
    read_tailfit,
)
from .render import (
    render_counterfactual_ratios,
    render_s_curve,
    render_sustainability_region,
    render_tail_fit,
)

__version__ = "0.1.0"

__all__ = [
    "EquilibriumCurves",
    "SchemaError",
    "SweepTable",
    "TailFitData",
    "read_equilibrium",
    "read_sweep",
    "read_tailfit",
    "render_counterfactual_ratios",
    "render_s_curve",
    "render_sustainability_region",
    "render_tail_fit",
    "__version__",
]
