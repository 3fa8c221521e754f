"""Exact integer and rational matrix utilities: Smith and Hermite normal
forms with transforms, determinants, inverses, F_p kernels and congruence
diagonalization. Matrices are lists of lists (rows); sizes here never exceed
a few dozen, so the straightforward algorithms are plenty.
"""

from __future__ import annotations

from fractions import Fraction


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows, mid, cols = len(a), len(b), len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(mid)) for j in range(cols)]
            for i in range(rows)]


def mat_vec(a, v):
    return [sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a))]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_eq(a, b) -> bool:
    return all(Fraction(x) == Fraction(y) for ra, rb in zip(a, b)
               for x, y in zip(ra, rb))


def congruence(u, s):
    """u^T s u for rational matrices."""
    return mat_mul(transpose(u), mat_mul(s, u))


def det_fraction(a) -> Fraction:
    """Determinant via fraction-free-ish Gaussian elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                factor = m[r][c] * inv
                for j in range(c, n):
                    m[r][j] -= factor * m[c][j]
    return det


def inv_fraction(a):
    """Exact inverse of a nonsingular rational matrix."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(i == j) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                factor = m[r][c]
                m[r] = [x - factor * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def smith_normal_form(a):
    """Smith normal form of an integer matrix: returns (d, u, v) with
    u a v = d, u and v unimodular, d diagonal with d[i] | d[i+1] >= 0."""
    m = [list(map(int, row)) for row in a]
    rows, cols = len(m), len(m[0])
    u, v = identity(rows), identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        for k in range(cols):
            m[dst][k] += q * m[src][k]
        for k in range(rows):
            u[dst][k] += q * u[src][k]

    def add_col(src, dst, q):
        for row in m:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # find a pivot of minimal absolute value in the trailing block
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < best):
                    best, piv = abs(m[i][j]), (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    add_row(t, i, -q)
                    if m[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    add_col(t, j, -q)
                    if m[t][j]:
                        swap_cols(t, j)
                        dirty = True
        if m[t][t] < 0:
            negate_row(t)
        # enforce divisibility of later diagonal entries
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(bad, t, 1)
            continue
        t += 1
    return m, u, v


def elementary_divisors(a) -> list[int]:
    d, _, _ = smith_normal_form(a)
    n = min(len(d), len(d[0]))
    return [d[i][i] for i in range(n)]


def hnf_basis(a):
    """Column-style Hermite normal form of the lattice spanned by the columns
    of an integer matrix with full row rank: returns the unique
    lower-triangular square basis h with positive diagonal and
    0 <= h[i][j] < h[i][i] for j < i."""
    m = [list(map(int, row)) for row in a]
    rows = len(m)
    cols = len(m[0])
    for i in range(rows):
        c = i
        while True:
            piv = None
            for j in range(c, cols):
                if m[i][j] != 0:
                    if piv is None or abs(m[i][j]) < abs(m[i][piv]):
                        piv = j
            if piv is None:
                raise ValueError("matrix does not have full row rank")
            if piv != c:
                for row in m:
                    row[c], row[piv] = row[piv], row[c]
            done = True
            for j in range(c + 1, cols):
                if m[i][j]:
                    q = m[i][j] // m[i][c]
                    for row in m:
                        row[j] -= q * row[c]
                    if m[i][j]:
                        done = False
            if done:
                break
        if m[i][c] < 0:
            for row in m:
                row[c] = -row[c]
    h = [[m[i][j] for j in range(rows)] for i in range(rows)]
    # reduce columns left of each diagonal entry
    for i in range(rows):
        for j in range(i):
            q = h[i][j] // h[i][i]
            if q:
                for r in range(i, rows):
                    h[r][j] -= q * h[r][i]
    return h


def kernel_mod_p(a, p: int):
    """Basis of the kernel of an integer matrix acting on F_p^n (column
    vectors), as integer vectors with entries in [0, p)."""
    rows = len(a)
    cols = len(a[0])
    m = [[x % p for x in row] for row in a]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * cols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-m[i][fc]) % p
        basis.append(vec)
    return basis


def diagonalize_symmetric(b):
    """Congruence-diagonalize a nondegenerate symmetric rational matrix;
    returns the list of diagonal entries (nonzero Fractions)."""
    n = len(b)
    m = [[Fraction(x) for x in row] for row in b]
    out = []
    for k in range(n):
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if j is not None:
                m[k], m[j] = m[j], m[k]
                for row in m:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j is None:
                    raise ValueError("degenerate symmetric matrix")
                for t in range(n):
                    m[k][t] += m[j][t]
                for t in range(n):
                    m[t][k] += m[t][j]
        d = m[k][k]
        out.append(d)
        row_k = list(m[k])
        for i in range(k + 1, n):
            f = m[i][k] / d
            if f:
                for j in range(k + 1, n):
                    m[i][j] -= f * row_k[j]
        for i in range(k + 1, n):
            m[k][i] = m[i][k] = Fraction(0)
    return out
