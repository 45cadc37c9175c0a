"""Dense tableau simplex over exact rationals.

Solves  max c.y  subject to  A y <= b,  y >= 0  where every b entry is
nonnegative, so the all-slack basis is feasible and no phase 1 is needed.
Pivots use Dantzig's rule with a switch to Bland's least-index rule after a
fixed pivot budget, which guarantees termination on degenerate instances.
Kept deliberately independent of the network solver: different formulation,
different data structures, no shared code paths.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

_MAX_PIVOTS = 100_000


def simplex_max(objective: Sequence, rows: Sequence[tuple[Mapping[int, Fraction], Fraction]],
                num_vars: int, zero=Fraction(0)) -> tuple[Fraction, list]:
    """Return (optimal value, optimal y) for the LP described above.

    ``rows`` holds (sparse coefficient map, rhs) pairs; duplicate keys
    accumulate.  Raises if the LP is unbounded, which the callers' bounded
    polytopes rule out.
    """
    m = len(rows)
    width = num_vars + m + 1
    one = zero + 1

    tableau = []
    for r, (coeffs, rhs) in enumerate(rows):
        if rhs < zero:
            raise ValueError("simplex_max needs nonnegative right-hand sides")
        row = [zero] * width
        for j, c in coeffs.items():
            row[j] += c
        row[num_vars + r] = one
        row[-1] = rhs
        tableau.append(row)
    zrow = [zero] * width
    for j, c in enumerate(objective):
        zrow[j] = -c

    basis = list(range(num_vars, num_vars + m))
    dantzig_budget = 200 + 20 * m

    for pivot_count in range(_MAX_PIVOTS):
        col = -1
        if pivot_count < dantzig_budget:
            best = zero
            for j in range(width - 1):
                v = zrow[j]
                if v < best:
                    best = v
                    col = j
        else:
            for j in range(width - 1):
                if zrow[j] < zero:
                    col = j
                    break
        if col < 0:
            break

        row_i = -1
        best_ratio = None
        for i in range(m):
            a = tableau[i][col]
            if a > zero:
                ratio = tableau[i][-1] / a
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[row_i])):
                    best_ratio = ratio
                    row_i = i
        if row_i < 0:
            raise ArithmeticError("unbounded linear program")

        prow = tableau[row_i]
        piv = prow[col]
        if piv != one:
            inv = one / piv
            tableau[row_i] = prow = [v * inv for v in prow]
        for i in range(m):
            if i == row_i:
                continue
            trow = tableau[i]
            factor = trow[col]
            if factor:
                tableau[i] = [a - factor * b for a, b in zip(trow, prow)]
        factor = zrow[col]
        if factor:
            zrow = [a - factor * b for a, b in zip(zrow, prow)]
        basis[row_i] = col
    else:
        raise ArithmeticError("simplex failed to terminate within the pivot budget")

    solution = [zero] * num_vars
    for i, b in enumerate(basis):
        if b < num_vars:
            solution[b] = tableau[i][-1]
    return zrow[-1], solution
