"""Exact rational Gaussian elimination and two-phase simplex (Bland's rule)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from rankgames.rational import ZERO, parse_rat


def _rat_matrix(rows) -> list[list[Fraction]]:
    return [[parse_rat(a) for a in row] for row in rows]


@dataclass(frozen=True)
class LinearSystem:
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        matrix = tuple(tuple(r) for r in _rat_matrix(self.matrix))
        rhs = tuple(parse_rat(b) for b in self.rhs)
        if len(matrix) != len(rhs):
            raise ValueError("row count of matrix and rhs differ")
        if matrix and any(len(r) != len(matrix[0]) for r in matrix):
            raise ValueError("ragged coefficient matrix")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "rhs", rhs)

    @property
    def num_vars(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0


@dataclass(frozen=True)
class SystemSolution:
    """``status`` is ``"unique"``, ``"underdetermined"`` or ``"none"``.

    For underdetermined systems ``x`` is the basic solution with all free
    variables set to zero.
    """

    status: str
    x: Optional[tuple[Fraction, ...]] = None
    rank: int = 0


def solve_system(system: LinearSystem, num_vars: int | None = None) -> SystemSolution:
    """Gauss-Jordan elimination with exact pivots."""
    n = system.num_vars if num_vars is None else num_vars
    rows = [list(r) + [b] for r, b in zip(system.matrix, system.rhs)]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [a / p for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    if any(all(a == 0 for a in row[:n]) and row[n] != 0 for row in rows[r:]):
        return SystemSolution("none", rank=r)
    x = [ZERO] * n
    for i, col in enumerate(pivots):
        x[col] = rows[i][n]
    status = "unique" if r == n else "underdetermined"
    return SystemSolution(status, tuple(x), rank=r)


@dataclass(frozen=True)
class LinearProgram:
    """``sense`` (min|max) ``objective . x`` subject to ``matrix[i] . x  rel[i]  rhs[i]``.

    ``relations`` holds ``"<="``, ``"="`` or ``">="``.  ``bounds`` holds one
    ``(lo, hi)`` pair per variable with ``None`` meaning unbounded; the
    default is ``(0, None)`` for every variable.
    """

    objective: tuple[Fraction, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    relations: tuple[str, ...]
    rhs: tuple[Fraction, ...]
    bounds: Optional[tuple] = None
    sense: str = "min"

    def __post_init__(self) -> None:
        obj = tuple(parse_rat(c) for c in self.objective)
        matrix = tuple(tuple(r) for r in _rat_matrix(self.matrix))
        rhs = tuple(parse_rat(b) for b in self.rhs)
        rel = tuple(self.relations)
        if not (len(matrix) == len(rhs) == len(rel)):
            raise ValueError("matrix, relations and rhs must have one entry per row")
        if any(len(r) != len(obj) for r in matrix):
            raise ValueError("constraint rows must match the objective length")
        if any(x not in ("<=", "=", ">=") for x in rel):
            raise ValueError("relations must be '<=', '=' or '>='")
        if self.sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        bounds = self.bounds
        if bounds is None:
            bounds = tuple((ZERO, None) for _ in obj)
        else:
            bounds = tuple(
                (None if lo is None else parse_rat(lo), None if hi is None else parse_rat(hi))
                for lo, hi in bounds
            )
            if len(bounds) != len(obj):
                raise ValueError("one (lo, hi) bound per variable")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "relations", rel)
        object.__setattr__(self, "bounds", bounds)

    def residuals_ok(self, x: Sequence[Fraction]) -> bool:
        """Exact feasibility check of a candidate point."""
        for (lo, hi), v in zip(self.bounds, x):
            if (lo is not None and v < lo) or (hi is not None and v > hi):
                return False
        for row, rel, b in zip(self.matrix, self.relations, self.rhs):
            lhs = sum((a * v for a, v in zip(row, x)), ZERO)
            if (rel == "<=" and lhs > b) or (rel == ">=" and lhs < b) or (rel == "=" and lhs != b):
                return False
        return True


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[Fraction] = None
    x: Optional[tuple[Fraction, ...]] = None
    pivots: int = 0


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.pivots = 0

    def pivot(self, r: int, col: int) -> None:
        row = self.rows[r]
        p = row[col]
        if p != 1:
            row = [a / p for a in row]
            self.rows[r] = row
        nz = [k for k, a in enumerate(row) if a != 0]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[col]
            if f != 0:
                for k in nz:
                    other[k] -= f * row[k]
        self.basis[r] = col
        self.pivots += 1

    def minimize(self, cost: Sequence[Fraction], allowed: Sequence[bool]) -> str:
        """Bland's-rule primal simplex from the current feasible basis."""
        ncols = len(cost)
        while True:
            cb = [cost[b] for b in self.basis]
            entering = None
            for j in range(ncols):
                if not allowed[j] or j in self.basis:
                    continue
                reduced = cost[j] - sum((c * row[j] for c, row in zip(cb, self.rows) if c != 0), ZERO)
                if reduced < 0:
                    entering = j
                    break
            if entering is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering)


def solve_lp(lp: LinearProgram) -> LPResult:
    """Exact optimum by two-phase simplex with Bland's anti-cycling rule."""
    # each original variable = const + sum(coef * y_col), y >= 0
    subst: list[tuple[Fraction, list[tuple[int, int]]]] = []
    ncol = 0
    extra_rows: list[tuple[list[Fraction], str, Fraction]] = []
    upper_rows = []
    for lo, hi in lp.bounds:
        if lo is not None:
            subst.append((lo, [(ncol, 1)]))
            if hi is not None:
                upper_rows.append((ncol, hi - lo))
            ncol += 1
        elif hi is not None:
            subst.append((hi, [(ncol, -1)]))
            ncol += 1
        else:
            subst.append((ZERO, [(ncol, 1), (ncol + 1, -1)]))
            ncol += 2
    for lo, hi in lp.bounds:
        if lo is not None and hi is not None and hi < lo:
            return LPResult("infeasible")

    def expand(row: Sequence[Fraction]) -> tuple[list[Fraction], Fraction]:
        out = [ZERO] * ncol
        const = ZERO
        for a, (c0, terms) in zip(row, subst):
            if a == 0:
                continue
            const += a * c0
            for col, sign in terms:
                out[col] += a * sign
        return out, const

    for row, rel, b in zip(lp.matrix, lp.relations, lp.rhs):
        coeffs, const = expand(row)
        extra_rows.append((coeffs, rel, b - const))
    for col, ub in upper_rows:
        coeffs = [ZERO] * ncol
        coeffs[col] = Fraction(1)
        extra_rows.append((coeffs, "<=", ub))

    m = len(extra_rows)
    nslack = sum(1 for _, rel, _ in extra_rows if rel != "=")
    total = ncol + nslack + m
    rows: list[list[Fraction]] = []
    s = ncol
    for i, (coeffs, rel, b) in enumerate(extra_rows):
        row = coeffs + [ZERO] * (nslack + m) + [b]
        if rel != "=":
            row[s] = Fraction(1) if rel == "<=" else Fraction(-1)
            s += 1
        if b < 0:
            row = [-a for a in row]
        row[ncol + nslack + i] = Fraction(1)
        rows.append(row)
    tab = _Tableau(rows, [ncol + nslack + i for i in range(m)])

    art_start = ncol + nslack
    phase1 = [ZERO] * art_start + [Fraction(1)] * m
    tab.minimize(phase1, [True] * total)
    if any(r[-1] != 0 for r, b in zip(tab.rows, tab.basis) if b >= art_start):
        return LPResult("infeasible", pivots=tab.pivots)
    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= art_start:
            col = next((j for j in range(art_start) if tab.rows[i][j] != 0), None)
            if col is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1

    sign = Fraction(-1) if lp.sense == "max" else Fraction(1)
    obj_cols, obj_const = expand([sign * c for c in lp.objective])
    cost = obj_cols + [ZERO] * (nslack + m)
    allowed = [True] * art_start + [False] * m
    if tab.minimize(cost, allowed) == "unbounded":
        return LPResult("unbounded", pivots=tab.pivots)
    y = [ZERO] * total
    for r, b in zip(tab.rows, tab.basis):
        y[b] = r[-1]
    x = []
    for c0, terms in subst:
        x.append(c0 + sum((sgn * y[col] for col, sgn in terms), ZERO))
    value = sum((c * v for c, v in zip(lp.objective, x)), ZERO)
    return LPResult("optimal", value, tuple(x), pivots=tab.pivots)
