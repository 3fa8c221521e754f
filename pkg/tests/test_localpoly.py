from fractions import Fraction

import pytest

from jacobilift.exact import HPN, LaurentPoly, laurent_from_fractions, ord_p, split_exponent
from jacobilift.lattice import CATALOG, EvenLattice
from jacobilift.localpoly import (
    B_S_poly,
    F_tilde,
    PAIR_TABLE_KEYS,
    fp_closed_maximal,
    ftilde_expected,
    gamma_poly,
    gamma_poly_exact,
    h_poly,
    l_S_case_poly,
    l_S_poly,
    l_poly,
    lambda_poly,
    pair_table_poly,
    rho_poly,
)

A1 = CATALOG["A1"]
A2 = CATALOG["A2"]
D4 = CATALOG["D4"]
E8 = CATALOG["E8"]
L6 = EvenLattice.from_rows([[6]], "scaled-A1-6")

X = LaurentPoly.X


def test_l_poly_basics():
    for sign in (1, -1):
        assert l_poly(0, sign) == LaurentPoly.one()
        assert l_poly(-1, sign) == LaurentPoly.zero()
        assert l_poly(-3, sign) == LaurentPoly.zero()
    assert l_poly(2, 1) == laurent_from_fractions({2: 1, 0: 1, -2: 1})
    assert l_poly(2, -1) == laurent_from_fractions({2: 1, 0: -1, -2: 1})
    assert l_poly(1, -1) == laurent_from_fractions({1: -1, -1: 1})


def test_l_poly_three_term_recurrence():
    for sign in (1, -1):
        for e in range(2, 13):
            lhs = l_poly(e, sign)
            rhs = (X(1, sign) + X(-1)) * l_poly(e - 1, sign) \
                - l_poly(e - 2, sign).scale(sign)
            assert lhs == rhs


def test_l_poly_reciprocity():
    for sign in (1, -1):
        for e in range(13):
            assert l_poly(e, sign).reciprocal() == \
                l_poly(e, sign).scale(sign**e)


def test_h_poly():
    assert h_poly(0, -1) == LaurentPoly.zero()
    assert h_poly(0, 1) == LaurentPoly.one()
    assert h_poly(-2, 1) == LaurentPoly.zero()
    assert h_poly(3, -1) == laurent_from_fractions({3: -1, -3: 1})


def test_lambda_examples():
    # unit argument at an odd prime: the single term 1
    assert lambda_poly(3, 2, 0) == LaurentPoly.one()
    assert lambda_poly(5, 3, 1) == LaurentPoly.one()
    # 3 mod 4 unit at p = 2 with even twist: ramified with split exponent -1
    assert lambda_poly(2, 3, 0) == LaurentPoly.zero()
    assert lambda_poly(2, 5, 1) == LaurentPoly.zero()  # -5 = 3 mod 8
    assert lambda_poly(2, 7, 1) == LaurentPoly.one()   # -7 = 1 mod 8: square
    # valuation 2 with square unit class: X + 1/X - p^(-1/2)
    got = lambda_poly(3, 9, 0)
    expected = X(1) + X(-1) - LaurentPoly.const(HPN.half_pow(3, -1))
    assert got == expected


def test_lambda_vanishing_iff_negative_split_exponent():
    for p in (2, 3, 5):
        for k in (0, 1):
            for unit in (1, 2, 3, 5, 7, 11):
                if unit % p == 0:
                    continue
                for v in range(5):
                    a = unit * p**v
                    f = split_exponent(a, p, k)
                    assert (lambda_poly(p, a, k) == LaurentPoly.zero()) \
                        == (f < 0)


def test_l_S_poly_cases():
    # rank-1 lattice: every prime has radical 0, factor = lambda
    for p in (2, 3):
        for N in (3, 4, 8, 12):
            assert l_S_poly(A1, p, N, 1) == lambda_poly(p, N, 1)
    # unimodular even rank: factor = l(ord, +1)
    for p in (2, 3):
        for N in (1, 2, 4, 9):
            assert l_S_poly(E8, p, N, 0) == l_poly(ord_p(N, p), 1)
    # radical-1 even rank gives the two-sided h kernel
    kA2 = 1
    got = l_S_poly(A2, 3, 3, kA2)
    assert got == h_poly(1, 1) or got == h_poly(1, -1)
    # split-lattice comparison at a good prime: l(ord, xi)
    assert l_S_poly(A2, 2, 4, kA2) == l_poly(2, -1)


def test_l_S_case_poly_rejects_bad_input():
    with pytest.raises(ValueError):
        l_S_case_poly(3, 1, 1, 9, 0)  # missing eta
    with pytest.raises(ValueError):
        l_S_case_poly(3, 0, 0, 9, 0)  # missing xi
    with pytest.raises(ValueError):
        l_S_case_poly(3, 0, 3, 9, 0)
    with pytest.raises(ValueError):
        l_S_case_poly(3, 1, 0, 0, 0)


def test_B_poly_cases():
    assert B_S_poly(A1, 5) == LaurentPoly.one()
    got = B_S_poly(L6, 3)  # radical 1, odd rank: 1 + eta p^(1/2) X
    assert got == LaurentPoly.one() + X(1, HPN.half_pow(3, 1))
    got = B_S_poly(D4, 2)  # radical 2, even rank, xi = 1
    one = LaurentPoly.one()
    assert got == (one - X(1, 2)) * (one - X(1, 1))
    # radical 1, even rank: 1
    assert B_S_poly(A2, 3) == LaurentPoly.one()


def test_rho_poly_cases():
    one = LaurentPoly.one()
    assert rho_poly(D4, 2) == one
    assert rho_poly(L6, 3) == one - X(1, HPN.half_pow(3, -1))
    assert rho_poly(A2, 2) == one - X(1, Fraction(-1, 2))
    assert rho_poly(A1, 3) == one - X(2, Fraction(1, 3))


def test_gamma_poly():
    one = LaurentPoly.one()
    num, den = gamma_poly(3, 1, 0)
    assert num == one - X(1, 1) and den == one
    num, den = gamma_poly(3, 2, 0)
    assert num == (one - X(1, 1)) * (one - X(2, 9)) and den == one
    num, den = gamma_poly(3, 3, 0)
    assert num == (one - X(1, 1)) * (one - X(2, 9)) and den == one
    num, den = gamma_poly(2, 2, -1)
    assert den == one + X(1, 2)
    g = gamma_poly_exact(2, 2, 1)
    assert g == (one - X(1, 1)) * (one + X(1, 2))


def test_fp_closed_shapes():
    one = LaurentPoly.one()
    # odd rank, radical 1 at p=3 for the norm-3 rank-1 lattice
    got = fp_closed_maximal(L6, 3)
    assert got == (one - X(1, 1)) * (one + X(1, 3))
    # even rank radical 1: (1-X) prod_{j<=n/2} (1 - p^2j X^2)
    got = fp_closed_maximal(A2, 3)
    assert got == (one - X(1, 1)) * (one - X(2, 9))
    # even rank radical 0 at a good prime: extra linear factor
    got = fp_closed_maximal(A2, 2)
    assert got == (one - X(1, 1)) * (one + X(1, -2))
    got = fp_closed_maximal(E8, 3)
    expected = (one - X(1, 1)) * (one + X(1, 81))
    for j in (1, 2, 3):
        expected = expected * (one - X(2, 3 ** (2 * j)))
    assert got == expected


def test_F_tilde_normalization():
    one = LaurentPoly.one()
    assert F_tilde(one, 2, 3, 2) == one  # split exponent 0
    # rank 1, h = (a): exponent is ord_p(a)
    F = one - X(1, Fraction(9))  # placeholder polynomial
    got = F_tilde(F, 1, 2 * 9, 3)
    assert got.valuation() == -2
    assert got.coeff(-2) == HPN.rat(1)
    # even size: half-power substitution X -> p^(-3/2) X
    F = one + X(1, Fraction(8))
    got = F_tilde(F, 2, 4, 2, k=1)
    assert got == (one + X(1, HPN.half_pow(2, 3))).shift(
        -split_exponent(4, 2, 1))
    with pytest.raises(ValueError):
        F_tilde(X(-1, 1), 2, 4, 2)


def test_pair_table_examples():
    p = 3
    assert pair_table_poly(0, 0, 1, 0, 2, p) == l_poly(4)
    got = pair_table_poly(1, 0, 0, 0, 1, p)
    assert got == l_poly(1) - l_poly(0).scale(HPN.half_pow(p, -1))
    got = pair_table_poly(3, 2, 2, 2, 0, p)
    assert got == l_poly(1) + l_poly(0).scale(
        HPN.half_pow(p, -1) + HPN.half_pow(p, 1))
    with pytest.raises(ValueError):
        pair_table_poly(1, 2, 0, 0, 1, p)
    with pytest.raises(ValueError):
        pair_table_poly(0, 0, 1, 0, -1, p)


# mapping from the overform invariants to the square-class sign of the
# twisted discriminant argument, and from kernel dimension to signs
_SIGMA = {(0, 0): 1, (2, 0): -1, (2, 1): 0, (2, 2): -1, (4, 2): 1}
_XI = {(0, 0): 1, (2, 0): -1, (2, 2): -1, (4, 2): 1}
_NONRES = {3: 2, 5: 2, 7: 3}


def _arg_with_classes(p: int, fexp: int, sigma: int) -> int:
    """Positive integer with split exponent fexp (at k = 0) and square-class
    sign sigma."""
    if p == 2:
        if sigma == 1:
            return 4**fexp
        if sigma == -1:
            return 4**fexp * 5
        return 4 ** (fexp + 1) * 3
    if sigma == 1:
        return p ** (2 * fexp)
    if sigma == -1:
        return p ** (2 * fexp) * _NONRES[p]
    return p ** (2 * fexp + 1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_pair_table_matches_case_polynomials(p):
    """Every table row equals the per-prime case polynomial evaluated at an
    argument with the bookkeeping exponents of the (form, overform) pair."""
    for key in PAIR_TABLE_KEYS:
        n0, d0, n0p, d0p = key
        for f in range(5):
            row = pair_table_poly(n0, d0, n0p, d0p, f, p)
            if n0 % 2:
                # odd rank: split exponent f + floor(d0p/2), sign from the
                # overform square class, eta from the kernel dimension
                sigma = _SIGMA[(n0p, d0p)]
                a = _arg_with_classes(p, f + d0p // 2, sigma)
                assert split_exponent(a, p, 0) == f + d0p // 2
                got = l_S_case_poly(p, 1, d0, a, 0, eta=2 - n0)
            else:
                ordn = 2 * f - d0 // 2 + d0p
                a = p**ordn
                if d0 == 1:
                    got = l_S_case_poly(p, 0, 1, a, 0, h_sign=2 - n0p)
                else:
                    got = l_S_case_poly(p, 0, d0, a, 0, xi=_XI[(n0, d0)])
            assert got == row, (key, f, p)


def test_ftilde_expected_shapes():
    # odd rank delegates to the case polynomial
    assert ftilde_expected(A1, 2, 3, 1) == l_S_poly(A1, 2, 3, 1)
    # even rank with radical 2 carries the extra (1/X - xi X) factor
    got = ftilde_expected(D4, 2, 2, 0)
    extra = X(-1, 1) - X(1, 1)
    assert got == l_S_poly(D4, 2, 2, 0) * extra
    assert ftilde_expected(A2, 3, 3, 1) == l_S_poly(A2, 3, 3, 1)
