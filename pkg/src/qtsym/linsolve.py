"""Fraction-free (Bareiss) linear solving over Q(q, t).

Rows are cleared to polynomial form, eliminated with exact divisions in
Q[q, t], and back-substituted in the fraction field.  Overdetermined but
consistent systems are accepted; inconsistency or rank deficiency raises.
"""

from __future__ import annotations

from .scalar import PolyQT, R1, RatQT, ScalarError, poly_gcd


class LinSolveError(ScalarError):
    pass


def _clear_row(row):
    """Scale a RatQT row to PolyQT entries (common denominator via lcm)."""
    den = None
    for c in row:
        if not c.is_poly():
            if den is None:
                den = c.den
            else:
                g = poly_gcd(den, c.den)
                den = den.divexact(g) * c.den
    if den is None:
        return [c.num for c in row]
    mult = RatQT(den)
    return [(c * mult).num for c in row]


def solve_ff(rows, rhs):
    """Solve A x = b with RatQT entries; A is m x n with m >= n.

    Returns the unique solution as a list of RatQT.  Raises LinSolveError
    if the system is rank-deficient or inconsistent.
    """
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    if any(len(r) != n for r in rows) or len(rhs) != m:
        raise LinSolveError("ragged system")
    if m < n:
        raise LinSolveError("underdetermined system")
    M = [_clear_row(list(r) + [b]) for r, b in zip(rows, rhs)]
    cols = n + 1
    prev = PolyQT.const(1)
    for k in range(n):
        piv = None
        best = None
        for i in range(k, m):
            e = M[i][k]
            if not e.is_zero():
                sz = len(e.terms)
                if best is None or sz < best:
                    best, piv = sz, i
                    if sz == 1:
                        break
        if piv is None:
            raise LinSolveError("vanishing system degenerate")
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        pk = M[k][k]
        for i in range(k + 1, m):
            mik = M[i][k]
            row = M[i]
            if mik.is_zero():
                for j in range(k + 1, cols):
                    row[j] = (pk * row[j]).divexact(prev)
            else:
                rowk = M[k]
                for j in range(k + 1, cols):
                    row[j] = (pk * row[j] - mik * rowk[j]).divexact(prev)
            row[k] = PolyQT.zero()
        prev = pk
    for i in range(n, m):
        if any(not e.is_zero() for e in M[i]):
            raise LinSolveError("inconsistent system")
    sol = [None] * n
    for i in range(n - 1, -1, -1):
        acc = RatQT(M[i][n])
        for j in range(i + 1, n):
            acc = acc - RatQT(M[i][j]) * sol[j]
        sol[i] = acc / RatQT(M[i][i])
    return sol
