"""In-house solvers and model exporters.

Exact rational simplex with certified optimality, branch-and-bound on top
of it, a dense interior-point method for block semidefinite programs, and
text exporters (SDPA sparse, readable LP listing).
"""

from .branch_bound import BnbResult, branch_and_bound
from .ipm import IpmResult, ipm_solve
from .lp_text import export_lp_text, parse_lp_text
from .model import (
    FloatBlock,
    FloatModel,
    LinearProgram,
    LinRow,
    SdpBlock,
    SemidefiniteProgram,
)
from .sdpa_io import export_sdpa, parse_sdpa
from .simplex import SimplexResult, simplex_solve

__all__ = [
    "BnbResult",
    "branch_and_bound",
    "IpmResult",
    "ipm_solve",
    "export_lp_text",
    "parse_lp_text",
    "FloatBlock",
    "FloatModel",
    "LinearProgram",
    "LinRow",
    "SdpBlock",
    "SemidefiniteProgram",
    "export_sdpa",
    "parse_sdpa",
    "SimplexResult",
    "simplex_solve",
]
