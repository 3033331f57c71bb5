"""Model containers for the in-house solvers and exporters.

Both containers hold exact rational coefficients.  Conversion to floating
point (including the conditioning rescale of semidefinite blocks) happens
in one place, ``SemidefiniteProgram.to_float_model``, shared by the
interior-point solver and the SDPA exporter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

__all__ = [
    "LinRow",
    "LinearProgram",
    "SdpBlock",
    "SemidefiniteProgram",
    "FloatBlock",
    "FloatModel",
]

Rational = Fraction | int


@dataclass(frozen=True)
class LinRow:
    """One linear constraint: coeffs . x  <sense>  rhs."""

    coeffs: tuple[Fraction, ...]
    sense: str  # "<=", ">=" or "=="
    rhs: Fraction
    tag: str = ""

    def __post_init__(self) -> None:
        if self.sense not in ("<=", ">=", "=="):
            raise ValueError(f"bad sense {self.sense!r}")


@dataclass
class LinearProgram:
    """Linear program over named nonnegative variables with exact coefficients."""

    var_names: list[str]
    objective: list[Fraction]
    rows: list[LinRow] = field(default_factory=list)
    maximize: bool = True
    integer_vars: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        self.objective = [Fraction(c) for c in self.objective]
        if len(self.objective) != len(self.var_names):
            raise ValueError("objective length does not match variable count")
        for row in self.rows:
            if len(row.coeffs) != len(self.var_names):
                raise ValueError("row length does not match variable count")

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    def add_row(self, coeffs, sense: str, rhs, tag: str = "") -> None:
        self.rows.append(
            LinRow(tuple(Fraction(c) for c in coeffs), sense, Fraction(rhs), tag)
        )


@dataclass
class SdpBlock:
    """One symmetric-matrix-valued linear map of the variables.

    ``entries[(r, c)]`` with r <= c maps variable index -> exact coefficient;
    the (c, r) mirror is implied.
    """

    size: int
    entries: dict[tuple[int, int], dict[int, Fraction]] = field(default_factory=dict)

    def add(self, r: int, c: int, var: int, coeff: Rational) -> None:
        if r > c:
            r, c = c, r
        self.entries.setdefault((r, c), {}).setdefault(var, Fraction(0))
        self.entries[(r, c)][var] += Fraction(coeff)


@dataclass
class SemidefiniteProgram:
    """Maximize objective . x over nonnegative x subject to one normalization
    equality, optional linear cut rows, and PSD block constraints."""

    var_names: list[str]
    objective: list[Fraction]
    normalization: tuple[tuple[Fraction, ...], Fraction]  # (coeffs, rhs), equality
    blocks: list[SdpBlock] = field(default_factory=list)
    cut_rows: list[LinRow] = field(default_factory=list)  # all "<=" rows

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    def block_scales(self, var_scale: list[float] | None = None) -> list[np.ndarray]:
        """Power-of-two diagonal congruence scales, one vector per block.

        Chosen so the largest |coefficient| on each diagonal entry becomes
        ~1 (after any variable rescale); exact powers of two keep the
        rescale loss-free.  PSD-ness of a block is invariant under any
        positive diagonal congruence.
        """
        vs = var_scale if var_scale is not None else [1.0] * self.num_vars
        scales = []
        for blk in self.blocks:
            d = np.ones(blk.size)
            for s in range(blk.size):
                coeffs = blk.entries.get((s, s), {})
                if coeffs:
                    mx = max(abs(float(c)) * vs[v] for v, c in coeffs.items())
                    if mx > 0:
                        d[s] = 2.0 ** round(-math.log2(mx) / 2.0)
            scales.append(d)
        return scales

    def variable_scales(self) -> list[float]:
        """Power-of-two per-variable scales from the implied upper bounds.

        The normalization and the cut rows bound each variable; dividing it
        by (roughly) that bound keeps every iterate O(1), which moves the
        solver's double-precision floor well below the gap tolerance even
        when the bound value itself is in the millions.
        """
        ub = [math.inf] * self.num_vars
        rows = [self.normalization] + [(r.coeffs, r.rhs) for r in self.cut_rows]
        for coeffs, rhs in rows:
            for j, cf in enumerate(coeffs):
                if cf > 0 and rhs > 0:
                    ub[j] = min(ub[j], float(rhs / cf))
        return [
            2.0 ** math.floor(math.log2(u)) if math.isfinite(u) and u > 1.0 else 1.0
            for u in ub
        ]

    def to_float_model(self, equality_as_rows: bool = False) -> "FloatModel":
        """Assemble the conditioned floating-point model.

        Variables are rescaled to O(1) via :meth:`variable_scales`, cut rows
        are normalized to unit right-hand side, and PSD blocks get the
        diagonal congruence from :meth:`block_scales`.  The normalization
        equality is kept native unless ``equality_as_rows`` (the SDPA file
        layout, which has no equality rows).
        """
        m = self.num_vars
        vs = self.variable_scales()
        fblocks: list[FloatBlock] = []
        for blk, d in zip(self.blocks, self.block_scales(vs)):
            vi, ri, ci, vv = [], [], [], []
            for (r, c), coeffs in sorted(blk.entries.items()):
                sc = d[r] * d[c]
                for var in sorted(coeffs):
                    val = float(coeffs[var]) * sc * vs[var]
                    if val == 0.0:
                        continue
                    vi.append(var)
                    ri.append(r)
                    ci.append(c)
                    vv.append(val)
            fblocks.append(
                FloatBlock(
                    size=blk.size,
                    diag=False,
                    var_idx=np.array(vi, dtype=np.int64),
                    rows=np.array(ri, dtype=np.int64),
                    cols=np.array(ci, dtype=np.int64),
                    vals=np.array(vv, dtype=float),
                    const_rows=np.array([], dtype=np.int64),
                    const_cols=np.array([], dtype=np.int64),
                    const_vals=np.array([], dtype=float),
                )
            )

        # diagonal block: one slot per nonnegative variable, then equality
        # rows if requested, then normalized cut rows
        dvi, dsl, dvv = [], [], []
        c_sl, c_vv = [], []
        slot = 0
        for j in range(m):
            dvi.append(j)
            dsl.append(slot)
            dvv.append(1.0)  # slack is the rescaled variable itself
            slot += 1
        eq_coeffs, eq_rhs = self.normalization
        if equality_as_rows:
            for sign in (1.0, -1.0):
                for j, cf in enumerate(eq_coeffs):
                    if cf != 0:
                        dvi.append(j)
                        dsl.append(slot)
                        dvv.append(sign * float(cf) * vs[j])
                c_sl.append(slot)
                c_vv.append(sign * float(eq_rhs))
                slot += 1
        for row in self.cut_rows:
            scale = 1.0 / float(row.rhs) if row.rhs > 0 else 1.0
            for j, cf in enumerate(row.coeffs):
                if cf != 0:
                    dvi.append(j)
                    dsl.append(slot)
                    dvv.append(-float(cf) * vs[j] * scale)
            c_sl.append(slot)
            c_vv.append(-float(row.rhs) * scale)
            slot += 1
        fblocks.append(
            FloatBlock(
                size=slot,
                diag=True,
                var_idx=np.array(dvi, dtype=np.int64),
                rows=np.array(dsl, dtype=np.int64),
                cols=np.array(dsl, dtype=np.int64),
                vals=np.array(dvv, dtype=float),
                const_rows=np.array(c_sl, dtype=np.int64),
                const_cols=np.array(c_sl, dtype=np.int64),
                const_vals=np.array(c_vv, dtype=float),
            )
        )

        if equality_as_rows:
            eq_mat = np.zeros((0, m))
            eq_rhs_v = np.zeros(0)
        else:
            eq_mat = np.array([[float(c) * s for c, s in zip(eq_coeffs, vs)]])
            eq_rhs_v = np.array([float(eq_rhs)])
        obj = np.array([float(c) * s for c, s in zip(self.objective, vs)])
        obj_scale = 2.0 ** round(math.log2(max(1.0, float(np.sum(np.abs(obj))))))
        return FloatModel(
            m=m,
            obj=obj,
            blocks=fblocks,
            eq_mat=eq_mat,
            eq_rhs=eq_rhs_v,
            var_scale=np.array(vs),
            obj_scale=obj_scale,
        )


@dataclass
class FloatBlock:
    """Triplet form of one block of the linear matrix map.

    The slack block is  sum_j x_j * F_j - F_0  restricted to this block;
    (var_idx, rows, cols, vals) are the F_j entries with rows <= cols, and
    (const_rows, const_cols, const_vals) the F_0 entries.  ``diag`` marks
    blocks that are diagonal by construction.
    """

    size: int
    diag: bool
    var_idx: np.ndarray
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray
    const_rows: np.ndarray
    const_cols: np.ndarray
    const_vals: np.ndarray


@dataclass
class FloatModel:
    """Floating-point SDP in linear-matrix-inequality form.

    maximize obj . x  subject to  sum_j x_j F_j - F_0 >= 0 (blockwise PSD)
    and eq_mat x = eq_rhs.  Variable nonnegativity, when wanted, is part of
    the diagonal block.  ``var_scale`` maps solver variables back to model
    variables (x_model = var_scale * x); ``obj_scale`` is a hint for the
    solver's internal objective normalization and does not change the model.
    """

    m: int
    obj: np.ndarray
    blocks: list[FloatBlock]
    eq_mat: np.ndarray
    eq_rhs: np.ndarray
    var_scale: np.ndarray | None = None
    obj_scale: float = 1.0

    def detect_equalities(self) -> "FloatModel":
        """Fold exactly-opposite diagonal row pairs back into native equalities.

        Inverse of the ``equality_as_rows`` export layout: a pair of slots
        whose coefficient patterns and constants are exact negations encodes
        an equality constraint, which the interior-point method handles far
        better natively (paired inequalities have empty interior).
        """
        diag = self.blocks[-1]
        if not diag.diag:
            return self
        rows_by_slot: dict[int, dict[int, float]] = {}
        for j, s, v in zip(diag.var_idx, diag.rows, diag.vals):
            rows_by_slot.setdefault(int(s), {})[int(j)] = float(v)
        const_by_slot = {int(s): float(v) for s, v in zip(diag.const_rows, diag.const_vals)}
        slots = sorted(set(rows_by_slot) | set(const_by_slot))
        paired: dict[int, int] = {}
        used = set()
        for a_pos, a in enumerate(slots):
            if a in used:
                continue
            ra = rows_by_slot.get(a, {})
            ca = const_by_slot.get(a, 0.0)
            for b in slots[a_pos + 1 :]:
                if b in used:
                    continue
                rb = rows_by_slot.get(b, {})
                if rb.keys() == ra.keys() and const_by_slot.get(b, 0.0) == -ca and all(
                    rb[k] == -v for k, v in ra.items()
                ):
                    paired[a] = b
                    used.update((a, b))
                    break
        if not paired:
            return self
        eq_rows = []
        eq_rhs = []
        for a in paired:
            row = np.zeros(self.m)
            for j, v in rows_by_slot.get(a, {}).items():
                row[j] = v
            eq_rows.append(row)
            eq_rhs.append(const_by_slot.get(a, 0.0))
        keep = [s for s in slots if s not in used]
        remap = {s: i for i, s in enumerate(keep)}
        mask = np.array([int(s) in remap for s in diag.rows])
        cmask = np.array([int(s) in remap for s in diag.const_rows], dtype=bool)
        new_diag = FloatBlock(
            size=len(keep),
            diag=True,
            var_idx=diag.var_idx[mask],
            rows=np.array([remap[int(s)] for s in diag.rows[mask]], dtype=np.int64),
            cols=np.array([remap[int(s)] for s in diag.rows[mask]], dtype=np.int64),
            vals=diag.vals[mask],
            const_rows=np.array(
                [remap[int(s)] for s in diag.const_rows[cmask]], dtype=np.int64
            ),
            const_cols=np.array(
                [remap[int(s)] for s in diag.const_rows[cmask]], dtype=np.int64
            ),
            const_vals=diag.const_vals[cmask],
        )
        return FloatModel(
            m=self.m,
            obj=self.obj,
            blocks=self.blocks[:-1] + [new_diag],
            eq_mat=np.vstack([self.eq_mat] + [r.reshape(1, -1) for r in eq_rows])
            if eq_rows
            else self.eq_mat,
            eq_rhs=np.concatenate([self.eq_rhs, np.array(eq_rhs)]),
            var_scale=self.var_scale,
            obj_scale=self.obj_scale,
        )
