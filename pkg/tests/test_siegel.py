import random
from fractions import Fraction

import pytest

from jacobilift.exact import HPN, LaurentPoly, laurent_from_fractions
from jacobilift.intmat import congruence, identity
from jacobilift.lattice import CATALOG, EvenLattice
from jacobilift.localpoly import fp_closed_maximal, gamma_poly
from jacobilift.siegel import (
    F_tilde_oracle,
    HalfIntegralMatrix,
    OracleBudgetError,
    SiegelOracleError,
    bordered_half_matrix,
    extract_F,
    factor_degree_bound,
    nu,
    siegel_eis_arith,
    siegel_series_enumerate,
    siegel_series_poly,
    xi_of_matrix,
)

A1 = CATALOG["A1"]
A1A1 = CATALOG["A1+A1"]
A2 = CATALOG["A2"]
D4 = CATALOG["D4"]

X = LaurentPoly.X
ONE = LaurentPoly.one()


def H(rows):
    return HalfIntegralMatrix.from_entries(rows)


def test_half_integral_validation():
    H([[1, Fraction(1, 2)], [Fraction(1, 2), 1]])
    with pytest.raises(ValueError):
        H([[Fraction(1, 2)]])
    with pytest.raises(ValueError):
        H([[1, Fraction(1, 3)], [Fraction(1, 3), 1]])
    with pytest.raises(ValueError):
        H([[1, 0], [1, 1]])


def test_nu_examples():
    assert nu([[1]], 3) == 1
    assert nu([[Fraction(1, 3)]], 3) == 3
    assert nu([[Fraction(1, 3), 0], [0, Fraction(1, 9)]], 3) == 27
    assert nu([[Fraction(1, 2), 0], [0, 1]], 2) == 2
    assert nu([[0]], 5) == 1


def test_nu_invariance_under_congruence():
    rng = random.Random(55)
    for _ in range(30):
        n = rng.randint(1, 3)
        p = rng.choice([2, 3])
        denom = p ** rng.randint(0, 2)
        a = [[Fraction(rng.randint(-4, 4), denom) for _ in range(n)]
             for _ in range(n)]
        for i in range(n):
            for j in range(i):
                a[i][j] = a[j][i]
        base = nu(a, p)
        u = identity(n)
        for _ in range(6):
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                q = rng.randint(-2, 2)
                for t in range(n):
                    u[i][t] += q * u[j][t]
        assert nu(congruence(u, a), p) == base


def test_rank_one_series():
    # h = (1): single nontrivial coset level, 1 - X
    got = siegel_series_poly(H([[1]]), 3, mode="enumerate", K=3)
    assert got == ONE - X(1, 1)
    assert siegel_series_poly(H([[1]]), 3) == ONE - X(1, 1)
    # h = (p u): degree two, factor of degree one
    got = siegel_series_poly(H([[3]]), 3)
    assert got == (ONE - X(1, 1)) * (ONE + X(1, 3))
    F = extract_F(H([[3]]), 3)
    assert F == ONE + X(1, 3)
    # general valuation e: (1-X)(1 + pX + ... + (pX)^e)
    for e in range(4):
        got = siegel_series_poly(H([[2**e]]), 2)
        expected = (ONE - X(1, 1)) * laurent_from_fractions(
            {j: 2**j for j in range(e + 1)})
        assert got == expected


@pytest.mark.parametrize("p", [2, 3])
def test_enumerate_vs_lattice_small(p):
    # the two oracle strategies agree coefficientwise; the direct character
    # sum is run with a small denominator bound K and compared on the prefix
    # of coefficients it determines exactly (t <= K)
    mats = [
        [[1]], [[2]], [[4]],
        [[1, 0], [0, 1]],
        [[1, Fraction(1, 2)], [Fraction(1, 2), 1]],
        [[1, 0], [0, 2]],
        [[2, Fraction(1, 2)], [Fraction(1, 2), 1]],
        [[1, Fraction(1, 2)], [Fraction(1, 2), 3]],
    ]
    for rows in mats:
        h = H(rows)
        cutoff = 4 if p == 2 else 3
        direct = siegel_series_enumerate(h, p, cutoff, budget=10**7,
                                         check_tail=False)
        auto = siegel_series_poly(h, p)
        assert auto.truncate(cutoff) == direct, rows
        full = siegel_series_poly(h, p, mode="lattice")
        assert full == auto, rows


def test_enumerate_with_adequate_cutoff_matches_exactly():
    # with the full default cutoff the direct sum reproduces the whole
    # polynomial including the vanishing-tail assertion
    for rows, p in (([[1]], 3), ([[2]], 2), ([[4]], 2), ([[3]], 3),
                    ([[1, Fraction(1, 2)], [Fraction(1, 2), 1]], 2)):
        h = H(rows)
        direct = siegel_series_enumerate(h, p, ord_p_det(h, p) + h.ell + 2,
                                         budget=10**8)
        assert direct == siegel_series_poly(h, p)


def ord_p_det(h, p):
    from jacobilift.exact import ord_p

    return ord_p(h.det2h(), p)


def test_enumerate_budget_guard():
    with pytest.raises(OracleBudgetError):
        siegel_series_enumerate(H([[1, 0], [0, 1]]), 2, 10, budget=10**6)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("name", ["A1", "A1+A1", "A2", "D4"])
def test_closed_form_matches_oracle(name, p):
    S = CATALOG[name]
    h = HalfIntegralMatrix.from_even(S.rows())
    got = siegel_series_poly(h, p)
    assert got == fp_closed_maximal(S, p)
    if S.n <= 2:
        # the full-depth enumeration is affordable for small rank
        full = siegel_series_poly(h, p, mode="lattice")
        assert full == got


def test_gamma_divisibility_and_constant_term():
    mats = [
        [[1]], [[6]], [[1, 0], [0, 1]], [[2, 1], [1, 2]],
        [[1, Fraction(1, 2)], [Fraction(1, 2), 2]],
        [[2, 0, Fraction(1, 2)], [0, 1, 0], [Fraction(1, 2), 0, 1]],
    ]
    for rows in mats:
        h = H(rows)
        for p in (2, 3):
            F = extract_F(h, p)
            assert F.coeff(0) == HPN.rat(1)
            assert (not F) or F.valuation() >= 0


def test_unimodular_factor_is_one():
    assert extract_F(H([[1]]), 3) == ONE
    assert extract_F(H([[1, 0], [0, 1]]), 5) == ONE


def test_factor_degree_bound():
    assert factor_degree_bound(H([[3]]), 3) == 1
    assert factor_degree_bound(H([[1, 0], [0, 1]]), 2) == 0
    h = HalfIntegralMatrix.from_even(D4.rows())
    assert factor_degree_bound(h, 2) == 2


def test_ftilde_is_self_reciprocal():
    mats = [[[1]], [[4]], [[1, 0], [0, 1]], [[1, 0], [0, 4]],
            [[2, 1], [1, 2]], [[1, Fraction(1, 2)], [Fraction(1, 2), 1]]]
    for rows in mats:
        h = H(rows)
        for p in (2, 3):
            ft = F_tilde_oracle(h, p)
            assert ft.is_symmetric(), (rows, p)


def test_bordered_half_matrix():
    h = bordered_half_matrix(A1, 1, (Fraction(1, 2),))
    assert h.twice == ((2, 1), (1, 2))
    assert h.det2h() == 3


def test_eis_arith_rank1_divisor_sums():
    # ratios of rank-1 coefficients recover sigma_{kappa-1}
    for kappa in (4, 6):
        base = siegel_eis_arith(H([[1]]), kappa)
        for c in range(2, 13):
            val = siegel_eis_arith(H([[c]]), kappa)
            ratio = (val * base.inverse()).rational()
            from jacobilift.exact import sigma

            assert ratio == sigma(kappa - 1, c)


def test_eis_arith_rejects():
    with pytest.raises(ValueError):
        siegel_eis_arith(H([[1]]), 5)
    big = HalfIntegralMatrix.from_even(identity(4) and
                                       [[2, 0, 0, 0], [0, 2, 0, 0],
                                        [0, 0, 2, 0], [0, 0, 0, 2]])
    with pytest.raises(ValueError):
        siegel_eis_arith(big, 10)


def test_xi_of_matrix():
    h = H([[1, Fraction(1, 2)], [Fraction(1, 2), 1]])  # det 2h = 3
    assert xi_of_matrix(h, 3) == 0
    assert xi_of_matrix(h, 2) == -1  # -3 = 5 mod 8
    with pytest.raises(ValueError):
        xi_of_matrix(H([[2]]), 2)
