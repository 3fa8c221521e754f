"""Local polynomial families attached to a maximal even lattice: the
reciprocal kernels l and h, the square-class polynomial lambda, the per-prime
lift factor, the Euler numerator/denominator polynomials, Siegel-series
normalizers, the closed maximal Siegel polynomial, and the lookup table for
a form paired with its maximal overform.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import (
    HPN,
    LaurentPoly,
    ord_p,
    padic_symbol,
    split_exponent,
    square_class_sign_signed,
)
from .lattice import EvenLattice, chi_S_local, global_data, local_data


def l_poly(e: int, sign: int = 1) -> LaurentPoly:
    """Reciprocal geometric kernel sum_{i=0..e} sign^(e-i) X^(e-2i); zero for
    e < 0."""
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    if e < 0:
        return LaurentPoly.zero()
    return LaurentPoly({e - 2 * i: HPN.rat(sign ** ((e - i) % 2))
                        for i in range(e + 1)})


def h_poly(e: int, sign: int) -> LaurentPoly:
    """sign * X^e + X^-e for e > 0, (1 + sign)/2 for e = 0, zero for e < 0."""
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    if e < 0:
        return LaurentPoly.zero()
    if e == 0:
        return LaurentPoly.const(Fraction(1 + sign, 2))
    return LaurentPoly({e: HPN.rat(sign), -e: HPN.rat(1)})


def lambda_poly(p: int, a: Fraction | int, k: int) -> LaurentPoly:
    """l_f - s p^(-1/2) l_(f-1) where f is the split exponent of a at p and
    s the square-class sign of (-1)^k a; vanishes exactly when f < 0."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("nonzero argument required")
    f = split_exponent(a, p, k)
    s = square_class_sign_signed(a, p, k)
    out = l_poly(f)
    if s:
        out = out - l_poly(f - 1).scale(HPN.half_pow(p, -1) * s)
    return out


def l_S_case_poly(p: int, parity: int, s: int, a: Fraction | int, k: int, *,
                  eta: int | None = None, xi: int | None = None,
                  h_sign: int | None = None) -> LaurentPoly:
    """The per-prime lift factor from raw case data: parity of the rank,
    radical dimension s, discriminant argument a, and the relevant sign
    (eta for odd rank, xi or the h-subscript sign for even rank)."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("nonzero argument required")
    if s not in (0, 1, 2):
        raise ValueError("radical dimension must be 0, 1 or 2")
    if parity % 2:
        if s == 0:
            return lambda_poly(p, a, k)
        if s == 1:
            if eta not in (1, -1):
                raise ValueError("odd-rank radical-1 case needs eta")
            return lambda_poly(p, a, k) + \
                lambda_poly(p, a / p**2, k).scale(HPN.half_pow(p, 1) * eta)
        sym = padic_symbol(Fraction(a, p**2) * (-1) ** (k % 2), p)
        out = lambda_poly(p, a, k)
        if sym:
            out = out - lambda_poly(p, a / p**2, k).scale(
                HPN.half_pow(p, 1) * sym)
        return out - lambda_poly(p, a / p**4, k).scale(p)
    # even rank: the argument enters through its valuation only
    e = ord_p(a, p)
    if s == 0:
        if xi not in (1, -1):
            raise ValueError("even-rank radical-0 case needs xi")
        return l_poly(e, xi)
    if s == 1:
        if h_sign not in (1, -1):
            raise ValueError("even-rank radical-1 case needs the h sign")
        return h_poly(e, h_sign)
    if xi not in (1, -1):
        raise ValueError("even-rank radical-2 case needs xi")
    return l_poly(e, xi) - l_poly(e - 2, xi).scale(xi * p)


def l_S_poly(S: EvenLattice, p: int, a: Fraction | int, k: int) -> LaurentPoly:
    """Per-prime lift factor of a maximal even lattice at the discriminant
    argument a."""
    ld = local_data(S, p)
    gd = global_data(S)
    if gd.parity:
        return l_S_case_poly(p, 1, ld.s_p, a, k, eta=ld.eta_p)
    if ld.s_p == 1:
        hs = ld.eta_p_half * chi_S_local(
            S, p, Fraction(a) * gd.d_S * (-1) ** (k % 2))
        return l_S_case_poly(p, 0, 1, a, k, h_sign=hs)
    return l_S_case_poly(p, 0, ld.s_p, a, k, xi=ld.xi_p)


def B_S_poly(S: EvenLattice, p: int) -> LaurentPoly:
    """Euler denominator polynomial of the lift L-factor comparison."""
    ld = local_data(S, p)
    parity = S.n % 2
    if ld.s_p == 0 or (ld.s_p == 1 and parity == 0):
        return LaurentPoly.one()
    if ld.s_p == 1:
        return LaurentPoly.one() + LaurentPoly.X(
            1, HPN.half_pow(p, 1) * ld.eta_p)
    if parity:
        return LaurentPoly.one() - LaurentPoly.X(2, p)
    xi = ld.xi_p
    one = LaurentPoly.one()
    return (one - LaurentPoly.X(1, xi * p)) * (one - LaurentPoly.X(1, xi))


def rho_poly(S: EvenLattice, p: int) -> LaurentPoly:
    """Normalizing polynomial of the local Whittaker factor."""
    ld = local_data(S, p)
    parity = S.n % 2
    one = LaurentPoly.one()
    if ld.s_p == 2:
        return one
    if parity:
        if ld.s_p == 0:
            return one - LaurentPoly.X(2, Fraction(1, p))
        return one - LaurentPoly.X(1, HPN.half_pow(p, -1) * ld.eta_p)
    return one - LaurentPoly.X(1, Fraction(ld.xi_p, p))


def gamma_poly(p: int, ell: int, xi_h: int) -> tuple[LaurentPoly, LaurentPoly]:
    """Normalizing rational function of the Siegel series of an ell-rowed
    half-integral matrix: (numerator, denominator); xi_h is the square-class
    sign of the signed determinant (only used for even ell)."""
    if ell < 1:
        raise ValueError("ell must be positive")
    one = LaurentPoly.one()
    num = one - LaurentPoly.X(1, 1)
    if ell % 2 == 0:
        for j in range(1, ell // 2 + 1):
            num = num * (one - LaurentPoly.X(2, Fraction(p) ** (2 * j)))
        if xi_h not in (-1, 0, 1):
            raise ValueError("xi_h must be -1, 0 or 1")
        den = one - LaurentPoly.X(1, xi_h * Fraction(p) ** (ell // 2)) \
            if xi_h else one
        return num, den
    for j in range(1, (ell - 1) // 2 + 1):
        num = num * (one - LaurentPoly.X(2, Fraction(p) ** (2 * j)))
    return num, one


def gamma_poly_exact(p: int, ell: int, xi_h: int) -> LaurentPoly:
    num, den = gamma_poly(p, ell, xi_h)
    return num.divide_exact(den)


def fp_closed_maximal(S: EvenLattice, p: int) -> LaurentPoly:
    """Closed form of the Siegel series polynomial of half the Gram matrix of
    a maximal even lattice."""
    ld = local_data(S, p)
    n, s = S.n, ld.s_p
    one = LaurentPoly.one()
    out = one - LaurentPoly.X(1, 1)
    if n % 2:
        if s == 1:
            out = out * (one + LaurentPoly.X(
                1, Fraction(p) ** ((n + 1) // 2) * ld.eta_p))
            top = (n - 1) // 2
        else:
            top = (n + s - 1) // 2
    else:
        if s == 1:
            top = n // 2
        else:
            sign = (-1) ** (s // 2) * ld.xi_p
            out = out * (one + LaurentPoly.X(
                1, Fraction(p) ** ((n + s) // 2) * sign))
            top = (n + s) // 2 - 1
    for j in range(1, top + 1):
        out = out * (one - LaurentPoly.X(2, Fraction(p) ** (2 * j)))
    return out


def F_tilde(F: LaurentPoly, ell: int, det2h: int, p: int,
            k: int | None = None) -> LaurentPoly:
    """Reciprocal normalization of the Siegel factor polynomial: shift by the
    split exponent of det(2h) (even ell) or the valuation of det(2h)/2 (odd
    ell) after the half-power substitution."""
    if F and F.valuation() < 0:
        raise ValueError("Siegel factor must be a polynomial")
    if k is None:
        k = (ell + 1) // 2  # parity matching the evenness constraint
    scale = HPN.half_pow(p, -(ell + 1))
    if ell % 2 == 0:
        exp = split_exponent(det2h, p, k)
        return F.subs_scaled(scale).shift(-exp)
    exp = ord_p(Fraction(det2h, 2), p)
    return F.subs_scaled(scale).subs_square().shift(-exp)


def ftilde_expected(S: EvenLattice, p: int, N: int, k: int) -> LaurentPoly:
    """The lift-side prediction for the normalized Siegel factor of a
    bordered matrix with discriminant index N."""
    gd = global_data(S)
    if gd.parity:
        return l_S_poly(S, p, N, k)
    ld = local_data(S, p)
    if ld.s_p != 2:
        return l_S_poly(S, p, N, k)
    extra = LaurentPoly.X(-1, 1) - LaurentPoly.X(1, ld.xi_p)
    return l_S_poly(S, p, N, k) * extra


# ---------------------------------------------------------------------------
# the (kernel, radical) pair table for a form and its maximal overform
# ---------------------------------------------------------------------------

def _hp(p, j):
    return HPN.half_pow(p, j)


def pair_table_poly(n0: int, d0: int, n0p: int, d0p: int, f: int,
                    p: int) -> LaurentPoly:
    """Normalized local integral for the pair (anisotropic-kernel dimension,
    radical dimension) of a maximal form and of its maximal overform; rows
    not arising from maximal lattices are rejected."""
    if f < 0:
        raise ValueError("f must be nonnegative")
    l = l_poly
    h = h_poly
    key = (n0, d0, n0p, d0p)
    table = {
        (0, 0, 1, 0): lambda: l(2 * f),
        (0, 0, 1, 1): lambda: l(2 * f + 1),
        (1, 0, 0, 0): lambda: l(f) - l(f - 1).scale(_hp(p, -1)),
        (1, 0, 2, 0): lambda: l(f) + l(f - 1).scale(_hp(p, -1)),
        (1, 0, 2, 1): lambda: l(f),
        (1, 1, 0, 0): lambda: l(f) - l(f - 1).scale(_hp(p, -1))
        + (l(f - 1) - l(f - 2).scale(_hp(p, -1))).scale(_hp(p, 1)),
        (1, 1, 2, 1): lambda: l(f) + l(f - 1).scale(_hp(p, 1)),
        (1, 1, 2, 2): lambda: l(f + 1) + l(f).scale(_hp(p, -1))
        + (l(f) + l(f - 1).scale(_hp(p, -1))).scale(_hp(p, 1)),
        (2, 0, 1, 0): lambda: l(2 * f, -1),
        (2, 0, 3, 1): lambda: l(2 * f + 1, -1),
        (2, 1, 1, 0): lambda: h(2 * f, 1),
        (2, 1, 1, 1): lambda: h(2 * f + 1, 1),
        (2, 1, 3, 1): lambda: h(2 * f + 1, -1),
        (2, 1, 3, 2): lambda: h(2 * f + 2, -1),
        (2, 2, 1, 1): lambda: l(2 * f, -1) + l(2 * f - 2, -1).scale(p),
        (2, 2, 3, 2): lambda: l(2 * f + 1, -1) + l(2 * f - 1, -1).scale(p),
        (3, 1, 2, 0): lambda: l(f) + l(f - 1).scale(_hp(p, -1))
        - (l(f - 1) + l(f - 2).scale(_hp(p, -1))).scale(_hp(p, 1)),
        (3, 1, 2, 1): lambda: l(f) - l(f - 1).scale(_hp(p, 1)),
        (3, 1, 4, 2): lambda: l(f + 1) - l(f).scale(_hp(p, -1))
        - (l(f) - l(f - 1).scale(_hp(p, -1))).scale(_hp(p, 1)),
        (3, 2, 2, 1): lambda: l(f) - l(f - 2).scale(p),
        (3, 2, 2, 2): lambda: (
            l(f + 1) + l(f).scale(_hp(p, -1))
            - (l(f - 1) + l(f - 2).scale(_hp(p, -1))).scale(p)
            if f > 0 else
            l(1) + l(0).scale(_hp(p, -1) + _hp(p, 1))),
        (3, 2, 4, 2): lambda: (
            l(f + 1) - l(f).scale(_hp(p, -1))
            - (l(f - 1) - l(f - 2).scale(_hp(p, -1))).scale(p)
            if f > 0 else
            l(1) - l(0).scale(_hp(p, -1) + _hp(p, 1))),
        (4, 2, 3, 1): lambda: l(2 * f) - l(2 * f - 2).scale(p),
        (4, 2, 3, 2): lambda: l(2 * f + 1) - l(2 * f - 1).scale(p),
    }
    if key not in table:
        raise ValueError("pair %r does not arise from a maximal lattice" % (key,))
    return table[key]()


PAIR_TABLE_KEYS = (
    (0, 0, 1, 0), (0, 0, 1, 1), (1, 0, 0, 0), (1, 0, 2, 0), (1, 0, 2, 1),
    (1, 1, 0, 0), (1, 1, 2, 1), (1, 1, 2, 2), (2, 0, 1, 0), (2, 0, 3, 1),
    (2, 1, 1, 0), (2, 1, 1, 1), (2, 1, 3, 1), (2, 1, 3, 2), (2, 2, 1, 1),
    (2, 2, 3, 2), (3, 1, 2, 0), (3, 1, 2, 1), (3, 1, 4, 2), (3, 2, 2, 1),
    (3, 2, 2, 2), (3, 2, 4, 2), (4, 2, 3, 1), (4, 2, 3, 2),
)
