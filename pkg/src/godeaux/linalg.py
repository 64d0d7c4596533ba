"""Small dense exact linear algebra over any field-like coefficients.

Entries must support +, -, *, /, == 0 comparison, and negation; Fraction and
NumberFieldElement both qualify.  Matrices are lists of row lists and are
never mutated in place by the callers' copies.
"""

from __future__ import annotations


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(1, k)), a[i][0] * b[0][j])
             for j in range(m)] for i in range(n)]


def mat_vec(a, v):
    return [sum((row[t] * v[t] for t in range(1, len(v))), row[0] * v[0]) for row in a]


def mat_pow(a, n: int, identity):
    result = identity
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        n >>= 1
    return result


def determinant(a, zero):
    """Gaussian elimination with exact division."""
    n = len(a)
    m = [row[:] for row in a]
    det = None
    sign = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != zero), None)
        if pivot is None:
            return zero
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        p = m[col][col]
        det = p if det is None else det * p
        for r in range(col + 1, n):
            if m[r][col] != zero:
                factor = m[r][col] / p
                m[r] = [m[r][j] - factor * m[col][j] for j in range(n)]
    if sign < 0:
        det = -det
    return det


def invert(a, zero, one):
    """Inverse by Gauss-Jordan; returns None when singular."""
    n = len(a)
    m = [row[:] + [one if i == j else zero for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != zero), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != zero:
                factor = m[r][col]
                m[r] = [m[r][j] - factor * m[col][j] for j in range(2 * n)]
    return [row[n:] for row in m]


class SolveResult:
    """Particular solution plus rank data for an exact linear system."""

    __slots__ = ("solution", "rank", "nullity")

    def __init__(self, solution, rank, nullity):
        self.solution = solution
        self.rank = rank
        self.nullity = nullity


class InconsistentSystem(ValueError):
    def __init__(self, rank, augmented_rank, unknowns):
        self.rank = rank
        self.augmented_rank = augmented_rank
        self.unknowns = unknowns
        super().__init__(
            f"inconsistent system: rank {rank}, augmented rank {augmented_rank}, "
            f"{unknowns} unknowns")


def solve(a, b, zero, one) -> SolveResult:
    """Solve a x = b exactly; raises :class:`InconsistentSystem` when unsolvable.

    For underdetermined consistent systems the free coordinates are set to
    zero and the nullity is reported.
    """
    rows, cols = len(a), len(a[0]) if a else 0
    m = [a[i][:] + [b[i]] for i in range(rows)]
    pivots = []
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][col] != zero), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][col]
        m[r] = [v / p for v in m[r]]
        for i in range(rows):
            if i != r and m[i][col] != zero:
                factor = m[i][col]
                m[i] = [m[i][j] - factor * m[r][j] for j in range(cols + 1)]
        pivots.append(col)
        r += 1
        if r == rows:
            break
    rank = len(pivots)
    for i in range(rank, rows):
        if m[i][cols] != zero:
            raise InconsistentSystem(rank, rank + 1, cols)
    solution = [zero] * cols
    for i, col in enumerate(pivots):
        solution[col] = m[i][cols]
    return SolveResult(solution, rank, cols - rank)


def symmetric_rank_one_root(m, zero):
    """Decompose a symmetric matrix as c * v v^T with a normalized pivot.

    Returns ``(c, coeffs)`` where the quadratic form of ``m`` equals
    c * (sum coeffs[j] x_j)^2 and the pivot coefficient is 1, or None when
    the matrix is zero or has rank >= 2 (some 2x2 minor survives).
    """
    n = len(m)
    if all(m[i][j] == zero for i in range(n) for j in range(n)):
        return None
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                for l in range(k + 1, n):
                    if m[i][k] * m[j][l] - m[i][l] * m[j][k] != zero:
                        return None
    pivot = next((k for k in range(n) if m[k][k] != zero), None)
    if pivot is None:
        # Symmetric rank one in characteristic zero forces a nonzero diagonal.
        return None
    c = m[pivot][pivot]
    coeffs = [m[pivot][j] / c for j in range(n)]
    return c, coeffs
