"""Exact rational linear algebra: Gaussian elimination and a small simplex."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def solve_unique(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve ``a x = b`` exactly; None unless the solution exists and is unique.

    ``a`` may be non-square (more equations than unknowns is fine).
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in a[r]] + [Fraction(b[r])] for r in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            return None  # free variable
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][cols] != 0 for i in range(r, rows)):
        return None  # inconsistent
    return [m[i][cols] for i in range(cols)]


class LPResult:
    def __init__(self, status: str, value=None, x=None, y=None):
        self.status = status
        self.value = value
        self.x = x
        self.y = y

    def __repr__(self):
        return f"LPResult({self.status!r}, value={self.value})"


def maximize_standard(c: Sequence, a: Sequence[Sequence], b: Sequence) -> LPResult:
    """Maximize ``c x`` subject to ``a x = b``, ``x >= 0`` over the rationals.

    Two-phase tableau simplex with Bland's rule.  On optimality ``y`` holds
    the equality-row multipliers, so ``y a >= c`` and ``y b`` equals the
    optimum (the dual certificate).
    """
    m_rows = len(a)
    n = len(c)
    A = [[Fraction(x) for x in row] for row in a]
    B = [Fraction(x) for x in b]
    for i in range(m_rows):
        if B[i] < 0:
            A[i] = [-x for x in A[i]]
            B[i] = -B[i]
    # columns: n structural + m artificial
    T = [A[i] + [Fraction(int(i == j)) for j in range(m_rows)] + [B[i]] for i in range(m_rows)]
    basis = [n + i for i in range(m_rows)]
    width = n + m_rows

    def pivot(r, col):
        inv = 1 / T[r][col]
        T[r] = [x * inv for x in T[r]]
        for i in range(m_rows):
            if i != r and T[i][col] != 0:
                f = T[i][col]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        basis[r] = col

    def run(cost, allowed):
        # cost: list over all columns (maximize)
        while True:
            cb = [cost[j] for j in basis]
            enter = None
            for j in range(width):
                if j in allowed and j not in basis:
                    red = cost[j] - sum(cb[i] * T[i][j] for i in range(m_rows))
                    if red > 0:
                        enter = j
                        break
            if enter is None:
                return "optimal"
            best = None
            for i in range(m_rows):
                if T[i][enter] > 0:
                    ratio = T[i][-1] / T[i][enter]
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return "unbounded"
            pivot(best[1], enter)

    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m_rows
    run(phase1, set(range(width)))
    if sum(T[i][-1] for i in range(m_rows) if basis[i] >= n) != 0:
        return LPResult("infeasible")
    # drive remaining (zero-valued) artificials out of the basis where possible
    for i in range(m_rows):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                pivot(i, col)
    cost = [Fraction(x) for x in c] + [Fraction(0)] * m_rows
    status = run(cost, set(range(n)))
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][-1]
    value = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
    # multipliers from the basis: y B = c_B, solved on the original rows
    basic_cols = list(basis)
    orig = [[Fraction(v) for v in row] for row in a]
    signs = [(-1 if Fraction(b[i]) < 0 else 1) for i in range(m_rows)]
    bt = []
    rhs = []
    for j in basic_cols:
        if j < n:
            bt.append([orig[i][j] for i in range(m_rows)])
            rhs.append(Fraction(c[j]))
        else:
            k = j - n
            bt.append([Fraction(signs[k]) if i == k else Fraction(0) for i in range(m_rows)])
            rhs.append(Fraction(0))
    y = solve_unique(bt, rhs)
    return LPResult("optimal", value, x, y)
