import random
from fractions import Fraction

import pytest

from jacobilift.intmat import (
    det_fraction,
    diagonalize_symmetric,
    elementary_divisors,
    hnf_basis,
    identity,
    inv_fraction,
    kernel_mod_p,
    mat_eq,
    mat_mul,
    smith_normal_form,
    transpose,
)


def rand_matrix(rng, rows, cols, lo=-6, hi=6):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def rand_unimodular(rng, n, steps=12):
    u = identity(n)
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        q = rng.randint(-3, 3)
        for k in range(n):
            u[i][k] += q * u[j][k]
    return u


def test_smith_properties_random():
    rng = random.Random(23)
    for _ in range(60):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        a = rand_matrix(rng, rows, cols)
        d, u, v = smith_normal_form(a)
        assert mat_eq(mat_mul(u, mat_mul(a, v)), d)
        assert abs(det_fraction(u)) == 1
        assert abs(det_fraction(v)) == 1
        diag = [d[i][i] for i in range(min(rows, cols))]
        for i in range(len(diag) - 1):
            if diag[i + 1]:
                assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert d[i][j] == 0


def test_elementary_divisors_known():
    assert elementary_divisors([[2, 0], [0, 3]]) == [1, 6]
    assert elementary_divisors([[2, 1], [1, 2]]) == [1, 3]
    assert elementary_divisors([[4]]) == [4]


def test_hnf_canonical_under_column_moves():
    rng = random.Random(31)
    for _ in range(40):
        n = rng.randint(1, 4)
        while True:
            a = rand_matrix(rng, n, n)
            if det_fraction(a) != 0:
                break
        h1 = hnf_basis(a)
        # column-scramble: same lattice, same HNF
        u = rand_unimodular(rng, n)
        a2 = mat_mul(a, u)
        assert hnf_basis(a2) == h1
        # lower triangular with reduced entries
        for i in range(n):
            assert h1[i][i] > 0
            for j in range(n):
                if j > i:
                    assert h1[i][j] == 0
                elif j < i:
                    assert 0 <= h1[i][j] < h1[i][i]


def test_inverse_and_det():
    rng = random.Random(37)
    for _ in range(30):
        n = rng.randint(1, 4)
        a = rand_matrix(rng, n, n)
        if det_fraction(a) == 0:
            continue
        inv = inv_fraction(a)
        assert mat_eq(mat_mul(a, inv), identity(n))
    with pytest.raises(ZeroDivisionError):
        inv_fraction([[1, 1], [1, 1]])


def test_kernel_mod_p():
    a = [[2, 1, 0], [1, 2, 0], [0, 0, 2]]
    ker = kernel_mod_p(a, 3)
    assert len(ker) == 1
    v = ker[0]
    assert all(x % 3 == 0 for x in
               [sum(a[i][j] * v[j] for j in range(3)) for i in range(3)])
    assert kernel_mod_p([[1, 0], [0, 1]], 5) == []


def test_diagonalize_symmetric_congruence():
    rng = random.Random(41)
    for _ in range(40):
        n = rng.randint(1, 5)
        while True:
            b = rand_matrix(rng, n, n, -4, 4)
            for i in range(n):
                for j in range(i):
                    b[i][j] = b[j][i]
            if det_fraction(b) != 0:
                break
        diag = diagonalize_symmetric(b)
        assert len(diag) == n
        assert all(d != 0 for d in diag)
        # determinant matches up to a rational square
        prod = Fraction(1)
        for d in diag:
            prod *= Fraction(d)
        ratio = prod / det_fraction(b)
        assert ratio > 0
        num, den = ratio.numerator, ratio.denominator
        import math
        assert math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den


def test_diagonalize_zero_diagonal_start():
    b = [[0, 1], [1, 0]]
    diag = diagonalize_symmetric(b)
    assert len(diag) == 2
    prod = Fraction(diag[0]) * Fraction(diag[1])
    assert prod < 0  # hyperbolic plane has determinant -1 mod squares
