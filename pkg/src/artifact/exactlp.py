"""Exact rational linear programming and small integer linear algebra.

Everything here is Fraction-based; no floating point anywhere.  The
simplex is a plain two-phase tableau method with Bland's rule, adequate
for the desk-scale cone-membership and bounding problems in this
package.
"""

from fractions import Fraction

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


def _pivot(T, basis, row, col):
    piv = T[row][col]
    T[row] = [v / piv for v in T[row]]
    for i in range(len(T)):
        if i != row and T[i][col] != 0:
            f = T[i][col]
            T[i] = [a - f * b for a, b in zip(T[i], T[row])]
    basis[row] = col


def _run_simplex(T, basis):
    """Maximize; objective is the last row as reduced costs (pivot while
    some cost is positive).  Returns True, or False on unboundedness."""
    m = len(T) - 1
    while True:
        obj = T[-1]
        col = next((j for j in range(len(obj) - 1) if obj[j] > 0), None)
        if col is None:
            return True
        best = None
        for i in range(m):
            if T[i][col] > 0:
                ratio = T[i][-1] / T[i][col]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], col)


def lp_max(c, A, b):
    """Maximize c.x subject to A x <= b with x free (rational, exact).

    Returns (status, value) with value None unless status == 'optimal'.
    """
    m = len(A)
    n = len(c)
    # x = u - v with u, v >= 0; slacks s; artificials as needed.
    rows = []
    for i in range(m):
        ai = [Fraction(x) for x in A[i]]
        bi = Fraction(b[i])
        row = ai + [-x for x in ai]
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        rows.append((row, bi, Fraction(b[i]) < 0))
    nvar = 2 * n
    T = []
    basis = []
    nart = sum(1 for r in rows if r[2])
    ncols = nvar + m + nart + 1
    ak = 0
    for i, (row, bi, neg) in enumerate(rows):
        full = row + [Fraction(0)] * (m + nart) + [bi]
        full[nvar + i] = Fraction(-1) if neg else Fraction(1)
        if neg:
            full[nvar + m + ak] = Fraction(1)
            basis.append(nvar + m + ak)
            ak += 1
        else:
            basis.append(nvar + i)
        T.append(full)
    if nart:
        # Phase 1: maximize -(sum of artificials).
        obj = [Fraction(0)] * ncols
        for j in range(nvar + m, nvar + m + nart):
            obj[j] = Fraction(-1)
        T.append(obj)
        for i in range(m):
            if basis[i] >= nvar + m:
                T[-1] = [a + b2 for a, b2 in zip(T[-1], T[i])]
        _run_simplex(T, basis)
        if T[-1][-1] != 0:
            return INFEASIBLE, None
        T.pop()
        # Drive any artificial still in the basis out of it.
        for i in range(m):
            if basis[i] >= nvar + m:
                col = next((j for j in range(nvar + m) if T[i][j] != 0), None)
                if col is not None:
                    _pivot(T, basis, i, col)
        # Freeze artificial columns at zero.
        for i in range(len(T)):
            for j in range(nvar + m, nvar + m + nart):
                T[i][j] = Fraction(0)
    obj = [Fraction(0)] * ncols
    for j in range(n):
        obj[j] = Fraction(c[j])
        obj[n + j] = -Fraction(c[j])
    T.append(obj)
    for i in range(m):
        bj = basis[i]
        if T[-1][bj] != 0:
            f = T[-1][bj]
            T[-1] = [a - f * b2 for a, b2 in zip(T[-1], T[i])]
    ok = _run_simplex(T, basis)
    if not ok:
        return UNBOUNDED, None
    return OPTIMAL, -T[-1][-1]


def lp_feasible(A, b):
    """Is {x : A x <= b} non-empty?"""
    status, _ = lp_max([0] * len(A[0]), A, b)
    return status != INFEASIBLE


def cone_member(cols, target):
    """Is target a non-negative rational combination of the columns?"""
    if all(t == 0 for t in target):
        return True
    if not cols:
        return False
    r = len(target)
    m = len(cols)
    # lambda >= 0, sum lambda_j col_j = target -> LP in lambda.
    A = []
    b = []
    for i in range(r):
        A.append([cols[j][i] for j in range(m)])
        b.append(target[i])
        A.append([-cols[j][i] for j in range(m)])
        b.append(-target[i])
    for j in range(m):
        row = [0] * m
        row[j] = -1
        A.append(row)
        b.append(0)
    return lp_feasible(A, b)


def rank_of(rows):
    """Rank of an integer matrix (list of rows), exact."""
    mat = [[Fraction(x) for x in row] for row in rows]
    r = 0
    cols = len(mat[0]) if mat else 0
    for j in range(cols):
        piv = next((i for i in range(r, len(mat)) if mat[i][j] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        mat[r] = [v / mat[r][j] for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][j] != 0:
                f = mat[i][j]
                mat[i] = [a - f * bb for a, bb in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def det_int(rows):
    """Determinant of a square integer matrix (exact, fraction-free)."""
    n = len(rows)
    mat = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for j in range(n):
        piv = next((i for i in range(j, n) if mat[i][j] != 0), None)
        if piv is None:
            return 0
        if piv != j:
            mat[j], mat[piv] = mat[piv], mat[j]
            det = -det
        det *= mat[j][j]
        inv = 1 / mat[j][j]
        mat[j] = [v * inv for v in mat[j]]
        for i in range(j + 1, n):
            if mat[i][j] != 0:
                f = mat[i][j]
                mat[i] = [a - f * bb for a, bb in zip(mat[i], mat[j])]
    assert det.denominator == 1
    return int(det)


def solve_exact(cols, target):
    """Solve sum_j x_j col_j = target exactly; returns list of Fractions
    or None if inconsistent.  Requires the columns to be independent."""
    r = len(target)
    m = len(cols)
    aug = [[Fraction(cols[j][i]) for j in range(m)] + [Fraction(target[i])]
           for i in range(r)]
    pivots = []
    row = 0
    for j in range(m):
        piv = next((i for i in range(row, r) if aug[i][j] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        aug[row] = [v / aug[row][j] for v in aug[row]]
        for i in range(r):
            if i != row and aug[i][j] != 0:
                f = aug[i][j]
                aug[i] = [a - f * bb for a, bb in zip(aug[i], aug[row])]
        pivots.append(j)
        row += 1
    for i in range(row, r):
        if aug[i][-1] != 0:
            return None
    if len(pivots) < m:
        raise ValueError("columns are not independent")
    x = [Fraction(0)] * m
    for i, j in enumerate(pivots):
        x[j] = aug[i][-1]
    return x
