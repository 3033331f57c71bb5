"""Dense primal-dual interior-point method for block semidefinite programs.

Solves the linear-matrix-inequality form produced by
``SemidefiniteProgram.to_float_model``:

    maximize  b . x   s.t.   sum_j x_j F_j - F_0  PSD blockwise,  E x = r

via the equivalent minimization of c = -b, using the HKM search direction
with a Mehrotra predictor-corrector (optionally plain path-following with a
fixed centering factor).  Infeasible start; both primal and dual objective
values are reported so callers can take the dual side as the safe bound.

Per iteration the Schur complement M_ij = tr(F_i X^-1 F_j Y) is assembled
blockwise: dense blocks through batched matrix products, diagonal blocks
through sparse weighted Gram matrices.  Equality rows are handled natively
(a free multiplier) rather than as paired inequalities, which would leave
the iterates with no interior.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp

from .model import FloatBlock, FloatModel

__all__ = ["IpmResult", "ipm_solve"]


@dataclass
class IpmResult:
    status: str  # "optimal" | "max_iterations" | "numerical_failure"
    primal_value: float  # maximize orientation
    dual_value: float  # maximize orientation; safe bound side
    gap: float  # absolute |primal - dual| at exit
    rel_gap: float
    iterations: int
    x: np.ndarray | None = None
    message: str = ""


class _Block:
    """Per-block workspace: coefficient data plus current X, Y and factors."""

    def __init__(self, spec: FloatBlock, m: int):
        self.size = spec.size
        self.diag = spec.diag
        self.m = m
        rho = spec.size
        if spec.diag:
            self.D = sp.csr_matrix(
                (spec.vals, (spec.rows, spec.var_idx)), shape=(rho, m)
            )
            self.f0 = np.zeros(rho)
            np.add.at(self.f0, spec.const_rows, spec.const_vals)
        else:
            # store the full symmetric pattern for contractions
            r = np.concatenate([spec.rows, spec.cols[spec.rows != spec.cols]])
            c = np.concatenate([spec.cols, spec.rows[spec.rows != spec.cols]])
            v = np.concatenate([spec.vals, spec.vals[spec.rows != spec.cols]])
            j = np.concatenate([spec.var_idx, spec.var_idx[spec.rows != spec.cols]])
            self.active = np.unique(j) if len(j) else np.array([], dtype=np.int64)
            lookup = {int(a): i for i, a in enumerate(self.active)}
            jl = np.array([lookup[int(a)] for a in j], dtype=np.int64)
            na = len(self.active)
            self.F = np.zeros((na, rho, rho))
            np.add.at(self.F, (jl, r, c), v)
            self.S = sp.csr_matrix(
                (v, (jl, r * rho + c)), shape=(na, rho * rho)
            )
            self.f0 = np.zeros((rho, rho))
            np.add.at(self.f0, (spec.const_rows, spec.const_cols), spec.const_vals)
            np.add.at(
                self.f0,
                (
                    spec.const_cols[spec.const_rows != spec.const_cols],
                    spec.const_rows[spec.const_rows != spec.const_cols],
                ),
                spec.const_vals[spec.const_rows != spec.const_cols],
            )

    # -- linear maps ------------------------------------------------------
    def apply(self, x: np.ndarray):
        """A_b(x) = sum_j x_j F_j restricted to this block."""
        if self.diag:
            return self.D @ x
        if len(self.active) == 0:
            return np.zeros((self.size, self.size))
        return np.tensordot(x[self.active], self.F, axes=1)

    def adjoint(self, Y, out: np.ndarray):
        """out_j += tr(F_j Y_b)."""
        if self.diag:
            out += self.D.T @ Y
        elif len(self.active):
            out[self.active] += self.S @ Y.ravel()

    def contract(self, B, out: np.ndarray):
        """out_j += tr(F_j B) for arbitrary (not necessarily symmetric) B."""
        if self.diag:
            out += self.D.T @ B
        elif len(self.active):
            out[self.active] += self.S @ B.ravel()


def _alpha_max_dense(S: np.ndarray, dS: np.ndarray) -> float:
    L = np.linalg.cholesky(S)
    W = sla.solve_triangular(L, dS, lower=True)
    W = sla.solve_triangular(L, W.T, lower=True)
    lam = np.linalg.eigvalsh(0.5 * (W + W.T))[0]
    return np.inf if lam >= 0 else -1.0 / lam


def _alpha_max_diag(s: np.ndarray, ds: np.ndarray) -> float:
    neg = ds < 0
    if not np.any(neg):
        return np.inf
    return float(np.min(-s[neg] / ds[neg]))


def ipm_solve(
    model: FloatModel,
    tol: float = 1e-8,
    max_iter: int = 200,
    predictor_corrector: bool = True,
    sigma: float = 0.3,
    feas_tol: float | None = None,
    verbose: bool = False,
) -> IpmResult:
    """Run the interior-point method on ``model`` (maximize orientation)."""
    m = model.m
    if m == 0:
        raise ValueError("empty model")
    # feasibility errors are iterate-scaled; two orders looser than the gap
    # is the usual pairing (the gap criterion is the binding one)
    feas_tol = feas_tol if feas_tol is not None else max(tol * 100, 1e-7)
    S = float(model.obj_scale) if model.obj_scale else 1.0
    c = -model.obj / S  # minimize c.x, objective normalized to O(1)
    blocks = [_Block(b, m) for b in model.blocks]
    E = model.eq_mat
    r_eq = model.eq_rhs
    p = E.shape[0]
    nu_dim = sum(b.size for b in blocks)
    c_scale = 1.0 + float(np.max(np.abs(c))) if m else 1.0

    # infeasible start: x = 0, X and Y spectral-scaled identities
    x = np.zeros(m)
    nu = np.zeros(p)
    X, Y = [], []
    for b in blocks:
        eta = max(10.0, 2.0 * (np.max(np.abs(b.f0)) if b.f0.size else 0.0))
        theta = max(10.0, 2.0 * c_scale)
        if b.diag:
            X.append(np.full(b.size, eta))
            Y.append(np.full(b.size, theta))
        else:
            X.append(eta * np.eye(b.size))
            Y.append(theta * np.eye(b.size))

    def objective_pair():
        pobj = float(c @ x)
        dobj = 0.0
        for b, Yb in zip(blocks, Y):
            dobj += float(np.vdot(b.f0, Yb)) if not b.diag else float(b.f0 @ Yb)
        dobj += float(r_eq @ nu)
        return pobj, dobj

    status = "max_iterations"
    message = ""
    best = None  # (score, pobj, dobj, gap_abs, rel_gap, x)
    stall = 0
    it = 0
    for it in range(1, max_iter + 1):
        # residuals
        R = []
        for b, Xb in zip(blocks, X):
            R.append(b.apply(x) - b.f0 - Xb)
        re = r_eq - E @ x if p else np.zeros(0)
        aty = np.zeros(m)
        for b, Yb in zip(blocks, Y):
            b.adjoint(Yb, aty)
        d = c - aty
        if p:
            d -= E.T @ nu
        mu = 0.0
        for b, Xb, Yb in zip(blocks, X, Y):
            mu += float(Xb @ Yb) if b.diag else float(np.vdot(Xb, Yb))
        mu /= nu_dim

        pobj, dobj = objective_pair()
        gap_abs = abs(pobj - dobj)
        rel_gap = gap_abs / (1.0 + abs(pobj) + abs(dobj))
        # feasibility errors relative to the iterate scale (the residuals are
        # differences of terms carried by x and Y, which grow with the bound)
        x_scale = 1.0 + float(np.max(np.abs(x)))
        y_scale = 1.0 + max(
            max((float(np.max(np.abs(Yb))) for Yb in Y), default=0.0),
            float(np.max(np.abs(nu))) if p else 0.0,
        )
        pinf = max(
            (float(np.max(np.abs(Rb))) if Rb.size else 0.0 for Rb in R), default=0.0
        )
        pinf = max(pinf, float(np.max(np.abs(re))) if p else 0.0)
        pinf /= x_scale
        dinf = float(np.max(np.abs(d))) / y_scale
        if verbose:
            print(
                f"  it {it:3d}  mu {mu:9.2e}  gap {rel_gap:9.2e}  "
                f"pinf {pinf:9.2e}  dinf {dinf:9.2e}  pobj {-pobj:.8e}  dobj {-dobj:.8e}"
            )
        score = max(rel_gap / tol, pinf / feas_tol, dinf / feas_tol)
        if best is None or score < best[0]:
            best = (score, pobj, dobj, gap_abs, rel_gap, x.copy())
            stall = 0
        else:
            stall += 1
        if score <= 1.0:
            status = "optimal"
            break
        if stall >= 12 and best[0] <= 1e4:
            # in the endgame and no progress for a dozen iterations: the
            # double-precision floor for this model has been reached
            status = "max_iterations"
            message = "stalled at the numerical floor"
            break

        # factorizations and Schur complement
        try:
            Xinv, Ych = [], []
            for b, Xb in zip(blocks, X):
                if b.diag:
                    Xinv.append(1.0 / Xb)
                else:
                    Lx = np.linalg.cholesky(Xb)
                    Xinv.append(sla.cho_solve((Lx, True), np.eye(b.size)))
            M = np.zeros((m, m))
            for b, Xi, Yb in zip(blocks, Xinv, Y):
                if b.diag:
                    w = Yb * Xi
                    Dw = b.D.multiply(w[:, None])
                    M += (b.D.T @ Dw).toarray()
                elif len(b.active):
                    G = Xi @ b.F @ Yb  # batched over leading axis
                    Ml = (b.S @ G.reshape(len(b.active), -1).T).T
                    M[np.ix_(b.active, b.active)] += 0.5 * (Ml + Ml.T)
            # symmetric equilibration: the Schur diagonal spans many decades
            # once some variables are huge, and scaling it away buys accuracy
            dM = M.diagonal().copy()
            dM[dM <= 0] = 1.0
            Deq = 1.0 / np.sqrt(dM)
            Meq = M * np.outer(Deq, Deq)
            ridge = 0.0
            for _ in range(8):
                try:
                    Mf = sla.cho_factor(Meq + ridge * np.eye(m), lower=True)
                    break
                except np.linalg.LinAlgError:
                    ridge = max(ridge * 100, 1e-14)
            else:
                raise np.linalg.LinAlgError("Schur complement not PD")
        except np.linalg.LinAlgError as exc:
            status = "numerical_failure"
            message = str(exc)
            break

        Meq_r = Meq + ridge * np.eye(m) if ridge else Meq

        def refine(rhs):
            # solve M sol = rhs through the equilibrated factor with two
            # steps of iterative refinement for the late ill-conditioning
            r = rhs * Deq if rhs.ndim == 1 else rhs * Deq[:, None]
            z = sla.cho_solve(Mf, r)
            for _ in range(2):
                z += sla.cho_solve(Mf, r - Meq_r @ z)
            return z * Deq if rhs.ndim == 1 else z * Deq[:, None]

        def solve_kkt(g):
            if not p:
                return refine(g), np.zeros(0)
            u = refine(g)
            W = refine(E.T)
            EW = E @ W
            dnu = np.linalg.solve(EW, re - E @ u)
            return u + W @ dnu, dnu

        def direction(sig, corrector=None):
            # g_i = <F_i, X^-1 K> - <F_i, X^-1 R Y> - d_i  with
            # K = sig*mu*I - X Y (- dX_aff dY_aff on the corrector pass)
            g = -d.copy()
            Ks = []
            for bi, (b, Xi, Yb, Rb) in enumerate(zip(blocks, Xinv, Y, R)):
                if b.diag:
                    K = sig * mu - X[bi] * Yb
                    if corrector is not None:
                        K = K - corrector[bi]
                    Ks.append(K)
                    b.contract(K * Xi, g)
                    b.contract(-(Rb * Yb) * Xi, g)
                else:
                    K = sig * mu * np.eye(b.size) - X[bi] @ Yb
                    if corrector is not None:
                        K = K - corrector[bi]
                    Ks.append(K)
                    b.contract(Xi @ K, g)
                    b.contract(-(Xi @ Rb @ Yb), g)
            dx, dnu = solve_kkt(g)
            dX, dY = [], []
            for bi, (b, Xi, Yb, Rb) in enumerate(zip(blocks, Xinv, Y, R)):
                Adx = b.apply(dx)
                if b.diag:
                    dXb = Adx + Rb
                    dYb = (Ks[bi] - dXb * Yb) * Xi
                else:
                    dXb = Adx + Rb
                    dYb = Xi @ (Ks[bi] - dXb @ Yb)
                    dYb = 0.5 * (dYb + dYb.T)
                dX.append(dXb)
                dY.append(dYb)
            return dx, dnu, dX, dY

        # take longer steps as convergence tightens
        tau = 0.9 if rel_gap > 1e-3 else (0.98 if rel_gap > 1e-6 else 0.995)

        def step_lengths(dX, dY):
            ap = ad = 1.0
            for b, Xb, Yb, dXb, dYb in zip(blocks, X, Y, dX, dY):
                if b.diag:
                    ap = min(ap, tau * _alpha_max_diag(Xb, dXb))
                    ad = min(ad, tau * _alpha_max_diag(Yb, dYb))
                else:
                    ap = min(ap, tau * _alpha_max_dense(Xb, dXb))
                    ad = min(ad, tau * _alpha_max_dense(Yb, dYb))
            return min(ap, 1.0), min(ad, 1.0)

        try:
            if predictor_corrector:
                dx_a, dnu_a, dX_a, dY_a = direction(0.0)
                ap_a, ad_a = step_lengths(dX_a, dY_a)
                mu_aff = 0.0
                for b, Xb, Yb, dXb, dYb in zip(blocks, X, Y, dX_a, dY_a):
                    Xn = Xb + ap_a * dXb
                    Yn = Yb + ad_a * dYb
                    mu_aff += float(Xn @ Yn) if b.diag else float(np.vdot(Xn, Yn))
                mu_aff /= nu_dim
                sig = min(1.0, max(1e-10, (mu_aff / mu) ** 3))
                corr = []
                for b, dXb, dYb in zip(blocks, dX_a, dY_a):
                    corr.append(dXb * dYb if b.diag else dXb @ dYb)
                dx, dnu, dX, dY = direction(sig, corrector=corr)
            else:
                dx, dnu, dX, dY = direction(sigma)
            ap, ad = step_lengths(dX, dY)
            if max(ap, ad) < 1e-6:
                # corrupt direction at the numerical edge: fall back to a
                # pure centering step, which is far better conditioned
                dx, dnu, dX, dY = direction(1.0)
                ap, ad = step_lengths(dX, dY)
        except np.linalg.LinAlgError as exc:
            status = "numerical_failure"
            message = str(exc)
            break

        if max(ap, ad) < 1e-10:
            status = "numerical_failure"
            message = "step length collapsed"
            break

        # the eigenvalue bound guarantees interiority up to roundoff;
        # back the step off if a factorization disagrees
        for _ in range(30):
            ok = True
            for b, Xb, Yb, dXb, dYb in zip(blocks, X, Y, dX, dY):
                if b.diag:
                    if np.any(Xb + ap * dXb <= 0) or np.any(Yb + ad * dYb <= 0):
                        ok = False
                        break
                else:
                    try:
                        np.linalg.cholesky(Xb + ap * dXb)
                        np.linalg.cholesky(Yb + ad * dYb)
                    except np.linalg.LinAlgError:
                        ok = False
                        break
            if ok:
                break
            ap *= 0.8
            ad *= 0.8
        else:
            status = "numerical_failure"
            message = "could not restore interior iterate"
            break

        x = x + ap * dx
        nu = nu + ad * dnu
        for bi, b in enumerate(blocks):
            X[bi] = X[bi] + ap * dX[bi]
            Y[bi] = Y[bi] + ad * dY[bi]
            if not b.diag:  # keep iterates symmetric against drift
                X[bi] = 0.5 * (X[bi] + X[bi].T)
                Y[bi] = 0.5 * (Y[bi] + Y[bi].T)

    if status == "optimal" or best is None:
        pobj, dobj = objective_pair()
        gap_abs = abs(pobj - dobj)
        rel_gap = gap_abs / (1.0 + abs(pobj) + abs(dobj))
        x_out = x
    else:
        # report the best iterate seen, not the degraded last one
        _, pobj, dobj, gap_abs, rel_gap, x_out = best
    if model.var_scale is not None:
        x_out = x_out * model.var_scale
    return IpmResult(
        status=status,
        primal_value=-pobj * S,
        dual_value=-dobj * S,
        gap=gap_abs * S,
        rel_gap=rel_gap,
        iterations=it,
        x=x_out,
        message=message,
    )
