"""Rigorous upper bounds for subspace codes over finite fields.

Exact q-combinatorics and q-Hahn polynomials feed three bound engines:
closed-form constant-dimension bounds, the per-dimension packing linear
program for projective codes, and a symmetry-reduced semidefinite program,
for both the subspace and the injection metric.  In-house solvers (exact
rational simplex, branch-and-bound, dense interior point) keep the whole
pipeline self-contained; exporters write SDPA sparse and readable LP text.
"""

from .grassmann import (
    GrassmannBoundReport,
    anticode_bound,
    best_grassmann_bound,
    combined_bound,
    delsarte_lp_bound,
    grassmann_bounds,
    grassmann_cap,
    johnson1_bound,
    johnson2_chain_bound,
    singleton_bound,
    sphere_packing_bound,
)
from .projective_lp import CutSet, DimCut, ev_model, solve_ev, theorem51_cuts
from .projective_sdp import (
    SdpBoundReport,
    TripleIndex,
    fk_entry_coeff,
    omega,
    sdp_model,
    solve_sdp,
)
from .qcombinat import (
    GrassmannParams,
    Metric,
    ProjectiveParams,
    ball_size_injection,
    ball_size_subspace,
    ball_slice_injection,
    ball_slice_subspace,
    bracket,
    hahn_weight,
    pair_count,
    projective_size,
    qbinom,
)
from .qhahn import HahnPolynomial, hahn_eval, hahn_family, q1_closed_form
from .reports import BoundReport

__version__ = "0.1.0"
