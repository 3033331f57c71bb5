"""SDPA sparse format (.dat-s) writer and reader.

The file encodes:  minimize c.x  subject to  sum_j x_j F_j - F_0  PSD,
with block-diagonal structure (negative block size = diagonal block).
Our models maximize, so the written objective is negated; a leading
comment line records that.  Field order is deterministic: the constant
matrix first, then variables in model order, entries sorted by block and
upper-triangle position; indices are 1-based as usual for this format.
"""

from __future__ import annotations

import numpy as np

from .model import FloatBlock, FloatModel, SemidefiniteProgram

__all__ = ["export_sdpa", "parse_sdpa"]


def export_sdpa(sdp: SemidefiniteProgram | FloatModel) -> str:
    if isinstance(sdp, SemidefiniteProgram):
        model = sdp.to_float_model(equality_as_rows=True)
    else:
        model = sdp
    lines = ['"maximize model: objective row stored negated (file minimizes)']
    lines.append(f"{model.m}")
    lines.append(f"{len(model.blocks)}")
    lines.append(" ".join(str(-b.size if b.diag else b.size) for b in model.blocks))
    lines.append(" ".join(_fmt(-v) for v in model.obj))
    entries = []
    for bno, blk in enumerate(model.blocks, start=1):
        for r, c, v in zip(blk.const_rows, blk.const_cols, blk.const_vals):
            if v != 0.0:
                entries.append((0, bno, int(r) + 1, int(c) + 1, float(v)))
        for j, r, c, v in zip(blk.var_idx, blk.rows, blk.cols, blk.vals):
            if v != 0.0:
                entries.append((int(j) + 1, bno, int(r) + 1, int(c) + 1, float(v)))
    entries.sort(key=lambda e: (e[0], e[1], e[2], e[3]))
    for matno, bno, i, j, v in entries:
        lines.append(f"{matno} {bno} {i} {j} {_fmt(v)}")
    return "\n".join(lines) + "\n"


def _fmt(v: float) -> str:
    return f"{v:.17e}"


def parse_sdpa(text: str) -> FloatModel:
    """Read a .dat-s stream back into a FloatModel (maximize orientation)."""
    lines = [
        ln
        for ln in (raw.strip() for raw in text.splitlines())
        if ln and not ln.startswith(('"', "*"))
    ]

    def numbers(line: str) -> list[float]:
        for ch in "{}(),":
            line = line.replace(ch, " ")
        return [float(tok) for tok in line.split()]

    m = int(numbers(lines[0])[0])
    nblocks = int(numbers(lines[1])[0])
    sizes = [int(v) for v in numbers(lines[2])]
    if len(sizes) != nblocks:
        raise ValueError("block size line does not match block count")
    c = numbers(lines[3])
    if len(c) != m:
        raise ValueError("objective length does not match variable count")
    raw_entries: list[list] = [[] for _ in range(nblocks)]
    for ln in lines[4:]:
        vals = numbers(ln)
        if len(vals) != 5:
            raise ValueError(f"bad entry line: {ln!r}")
        matno, bno, i, j, v = int(vals[0]), int(vals[1]), int(vals[2]), int(vals[3]), vals[4]
        if not 0 <= matno <= m or not 1 <= bno <= nblocks:
            raise ValueError(f"entry indices out of range: {ln!r}")
        raw_entries[bno - 1].append((matno, i - 1, j - 1, v))
    blocks = []
    for size, ents in zip(sizes, raw_entries):
        diag = size < 0
        rho = abs(size)
        vi, ri, ci, vv = [], [], [], []
        cr, cc, cv = [], [], []
        for matno, i, j, v in ents:
            r, col = (i, j) if i <= j else (j, i)
            if matno == 0:
                cr.append(r)
                cc.append(col)
                cv.append(v)
            else:
                vi.append(matno - 1)
                ri.append(r)
                ci.append(col)
                vv.append(v)
        blocks.append(
            FloatBlock(
                size=rho,
                diag=diag,
                var_idx=np.array(vi, dtype=np.int64),
                rows=np.array(ri, dtype=np.int64),
                cols=np.array(ci, dtype=np.int64),
                vals=np.array(vv, dtype=float),
                const_rows=np.array(cr, dtype=np.int64),
                const_cols=np.array(cc, dtype=np.int64),
                const_vals=np.array(cv, dtype=float),
            )
        )
    return FloatModel(
        m=m,
        obj=-np.array(c),
        blocks=blocks,
        eq_mat=np.zeros((0, m)),
        eq_rhs=np.zeros(0),
    )
