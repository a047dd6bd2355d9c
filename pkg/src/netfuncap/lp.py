"""Dense-tableau simplex for small packing programs.

Maximizes c.x subject to A x <= b, x >= 0 with b >= 0, which covers the
Steiner packing programs this library solves (loads bounded by 1).  The
slack basis is immediately feasible, so no phase-1 is needed.  Bland's
rule keeps the pivot sequence deterministic and cycle-free; tree counts
at desk scale are tiny, so determinism matters more than speed here.
"""

from __future__ import annotations

import numpy as np

TOL = 1e-9


def simplex_maximize(c, A, b, tol: float = TOL):
    """Return (x, value) solving max c.x s.t. A x <= b, x >= 0.

    Raises ValueError on negative entries in b and RuntimeError if the
    program is unbounded (impossible for packing constraints).
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    if A.ndim != 2:
        raise ValueError("A must be a matrix")
    m, n = A.shape
    if b.shape != (m,) or c.shape != (n,):
        raise ValueError("inconsistent shapes")
    if np.any(b < -tol):
        raise ValueError("b must be nonnegative")

    # Tableau layout: columns = n structural + m slack + rhs.
    tab = np.zeros((m + 1, n + m + 1))
    tab[:m, :n] = A
    tab[:m, n : n + m] = np.eye(m)
    tab[:m, -1] = b
    tab[m, :n] = -c
    basis = list(range(n, n + m))

    while True:
        # Bland: entering = lowest-index column with negative reduced cost.
        entering = -1
        for j in range(n + m):
            if tab[m, j] < -tol:
                entering = j
                break
        if entering < 0:
            break
        # Ratio test; ties broken by smallest basic variable index (Bland).
        leaving, best = -1, None
        for i in range(m):
            if tab[i, entering] > tol:
                ratio = tab[i, -1] / tab[i, entering]
                if (
                    best is None
                    or ratio < best - tol
                    or (abs(ratio - best) <= tol and basis[i] < basis[leaving])
                ):
                    best, leaving = ratio, i
        if leaving < 0:
            raise RuntimeError("unbounded linear program")
        pivot = tab[leaving, entering]
        tab[leaving] /= pivot
        for i in range(m + 1):
            if i != leaving and abs(tab[i, entering]) > 0:
                tab[i] -= tab[i, entering] * tab[leaving]
        basis[leaving] = entering

    x = np.zeros(n)
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tab[i, -1]
    return x, float(tab[m, -1])
