"""Human-auditable text export of linear programs, with exact coefficients.

Layout: a header, the variable list, the objective, then one line per row.
Rows are sorted by provenance tag (then original position) and every
coefficient is an exact rational, so the file doubles as an audit trail
for the models we solve.  ``parse_lp_text`` reads the format back.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .model import LinearProgram, LinRow

__all__ = ["export_lp_text", "parse_lp_text"]

_VAR_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _terms(coeffs, names) -> str:
    parts = []
    for c, name in zip(coeffs, names):
        if c == 0:
            continue
        sign = "+" if c > 0 else "-"
        mag = abs(Fraction(c))
        if mag == 1:
            parts.append(f"{sign} {name}")
        else:
            parts.append(f"{sign} {mag} {name}")
    return " ".join(parts) if parts else "0"


def export_lp_text(lp: LinearProgram) -> str:
    for name in lp.var_names:
        if not _VAR_RE.match(name):
            raise ValueError(f"variable name {name!r} not exportable")
    lines = [
        f"# linear program ({'maximize' if lp.maximize else 'minimize'}), "
        f"{lp.num_vars} nonnegative variables, {len(lp.rows)} rows",
        "vars: " + " ".join(lp.var_names),
        "objective: " + _terms(lp.objective, lp.var_names),
    ]
    order = sorted(range(len(lp.rows)), key=lambda i: (lp.rows[i].tag, i))
    for i in order:
        row = lp.rows[i]
        tag = row.tag if row.tag else "row"
        lines.append(
            f"{tag}: {_terms(row.coeffs, lp.var_names)} {row.sense} {Fraction(row.rhs)}"
        )
    return "\n".join(lines) + "\n"


def parse_lp_text(text: str) -> LinearProgram:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    maximize = True
    header = [ln for ln in lines if ln.startswith("#")]
    if header and "minimize" in header[0]:
        maximize = False
    body = [ln for ln in lines if not ln.startswith("#")]
    if not body or not body[0].startswith("vars:"):
        raise ValueError("missing vars line")
    var_names = body[0].split(":", 1)[1].split()
    index = {name: i for i, name in enumerate(var_names)}
    if not body[1].startswith("objective:"):
        raise ValueError("missing objective line")
    objective = _parse_terms(body[1].split(":", 1)[1], index)
    rows = []
    for ln in body[2:]:
        tag, rest = ln.split(":", 1)
        mt = re.search(r"(<=|>=|==)", rest)
        if not mt:
            raise ValueError(f"row without sense: {ln!r}")
        sense = mt.group(1)
        lhs, rhs = rest.split(sense)
        coeffs = _parse_terms(lhs, index)
        rows.append(
            LinRow(tuple(coeffs), sense, Fraction(rhs.strip()), tag.strip())
        )
    return LinearProgram(
        var_names=var_names, objective=objective, rows=rows, maximize=maximize
    )


def _parse_terms(expr: str, index: dict[str, int]) -> list[Fraction]:
    coeffs = [Fraction(0)] * len(index)
    tokens = expr.split()
    if tokens == ["0"]:
        return coeffs
    sign = Fraction(1)
    pending: Fraction | None = None
    for tok in tokens:
        if tok == "+":
            sign, pending = Fraction(1), None
        elif tok == "-":
            sign, pending = Fraction(-1), None
        elif _VAR_RE.match(tok):
            if tok not in index:
                raise ValueError(f"unknown variable {tok!r}")
            coeffs[index[tok]] += sign * (pending if pending is not None else 1)
            sign, pending = Fraction(1), None
        else:
            pending = Fraction(tok)
    return coeffs
