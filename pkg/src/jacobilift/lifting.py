"""Lifting coefficient formulas: from a level-1-or-small-level eigenform
and its plus-space partner to the single-coefficient function of a
Maass-type Jacobi form, the local closed evaluations at special Satake
points, the twisted-eigenform combinations for even rank, the divisor-sum
lift to the orthogonal-group Maass space, and the degree-2 consistency
driver against the Siegel-series oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .exact import (
    HPN,
    LaurentPoly,
    factorize,
    fundamental_split,
    ord_p,
    padic_symbol,
    split_exponent,
    square_class_sign_signed,
)
from .halfint import HalfIntForm, cusp_plus_eigenbasis, eigenform_level1
from .jacobi import JacobiMCoeffs, assemble_table, jm_membership
from .lattice import (
    EvenLattice,
    chi_S_local,
    disc_group,
    global_data,
    local_data,
    a_S_local_factor,
)
from .localpoly import l_S_poly
from .siegel import F_tilde_oracle, bordered_half_matrix


# ---------------------------------------------------------------------------
# eigen data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenData:
    """Hecke eigenform given through its coefficient sequence; the weight is
    2k in the odd-rank setting and k in the even-rank setting."""

    weight: int
    level: int
    coeffs: tuple
    nebentypus_disc: int = 1

    @staticmethod
    def from_level1(weight: int, prec: int) -> "EigenData":
        f = eigenform_level1(weight, prec)
        return EigenData(weight, 1, tuple(f.coeffs))

    def c(self, m: int):
        if m < 1 or m >= len(self.coeffs):
            raise KeyError("coefficient %d is not materialized" % m)
        return self.coeffs[m]

    @property
    def prec(self) -> int:
        return len(self.coeffs) - 1


def l_values(e_max: int, t, xi: int = 1, one=None):
    """[l_0(x), ..., l_{e_max}(x)] through the recurrence
    l_j = t l_{j-1} - xi l_{j-2} with t = xi x + 1/x; generic over the
    coefficient ring of t."""
    one = HPN.rat(1) if one is None else one
    if e_max < 0:
        return []
    vals = [one]
    if e_max >= 1:
        vals.append(t * one)
    for _ in range(2, e_max + 1):
        vals.append(t * vals[-1] - xi * vals[-2])
    return vals


def satake_odd(S: EvenLattice, p: int, N, k: int,
               f: EigenData) -> HPN:
    """Value of the per-prime lift factor at the Satake point of a weight-2k
    eigenform: polynomial evaluation at the pinned root for ramified p,
    trace recurrences otherwise.  N may be a positive rational (the factor
    vanishes when the local split data is out of range)."""
    if Fraction(N) <= 0:
        raise ValueError("index must be positive")
    poly = l_S_poly(S, p, N, k)
    if f.level % p == 0:
        alpha = HPN.rat(f.c(p)) * HPN.half_pow(p, 1 - 2 * k)
        return poly.evaluate(alpha)
    t = HPN.rat(f.c(p)) * HPN.half_pow(p, 1 - 2 * k)
    return poly.evaluate_symmetric(t)


def count_ramified_nonzero(bd: int, N: int, k: int) -> int:
    """Number of primes of bd at which the square-class sign of (-1)^k N is
    nonzero."""
    return sum(1 for p in factorize(bd)
               if square_class_sign_signed(N, p, k) != 0)


@dataclass(frozen=True)
class LiftInputOdd:
    """Input data of the odd-rank lift: the lattice, the weight parameter,
    the eigenform at level b*d with the matching involution signs, and its
    plus-space partner."""

    S: EvenLattice
    k: int
    f: EigenData
    g: HalfIntForm
    b: int = 1
    d: int = 1

    def __post_init__(self):
        gd = global_data(self.S)
        if gd.parity != 1:
            raise ValueError("odd-rank input requires odd rank")
        kappa = self.k + (self.S.n + 1) // 2
        if kappa % 2:
            raise ValueError("Jacobi weight %d is odd" % kappa)
        if gd.b_S % self.b or gd.d_S % self.d:
            raise ValueError("b, d must divide the radical products")
        if self.f.level != self.b * self.d:
            raise ValueError("eigenform level must be b*d")
        if self.f.weight != 2 * self.k:
            raise ValueError("eigenform weight must be 2k")
        for p in factorize(self.b):
            eta = local_data(self.S, p).eta_p
            if self.f.c(p) != -eta * p ** (self.k - 1):
                raise ValueError(
                    "involution sign mismatch at p=%d: c(p)=%s" % (p, self.f.c(p)))
        for p in factorize(self.d):
            if self.f.c(p) ** 2 != p ** (2 * self.k - 2):
                raise ValueError("coefficient at p=%d is not +-p^(k-1)" % p)

    @property
    def kappa(self) -> int:
        return self.k + (self.S.n + 1) // 2


def lift_coeff_odd(inp: LiftInputOdd, N: int) -> Fraction:
    """Lifted coefficient at the (odd-rank) discriminant index N:
    2^(-ram count) c_g(square-free kernel) (square part)^(k-1/2) times the
    product of local factor values at the Satake points; all half powers
    must cancel."""
    if N < 1:
        raise ValueError("index must be positive")
    S, k, f = inp.S, inp.k, inp.f
    gd = global_data(S)
    dN, fN = fundamental_split(N, k)
    cg = inp.g.coeff(dN)
    if cg == 0 and dN > inp.g.prec:
        raise KeyError("plus-space coefficient %d not materialized" % dN)
    val = HPN.rat(Fraction(cg)) * HPN.half_pow(fN, 2 * k - 1)
    primes = set(factorize(N)) | {p for p, s in gd.s_classes if s > 0} | {2} \
        | set(factorize(inp.b * inp.d))
    for p in sorted(primes):
        val = val * satake_odd(S, p, N, k, f)
    bcount = count_ramified_nonzero(inp.b * inp.d, N, k)
    val = val * HPN.rat(Fraction(1, 2**bcount))
    return val.rational()


def lift_assemble_odd(inp: LiftInputOdd, a_max: int):
    """Materialize the coefficient function on every index needed up to
    a_max and assemble the Fourier table; membership in the
    single-coefficient-function space is asserted."""
    S = inp.S
    gd = global_data(S)
    dg = disc_group(S)
    values: dict[int, Fraction] = {0: Fraction(0)}
    for nrm in dg.norms:
        for a in range(0, a_max + 1):
            if Fraction(a) < nrm:
                continue
            D = int(gd.D_S * (Fraction(a) - nrm))
            delta = gd.delta_S * D
            if delta and delta not in values:
                values[delta] = lift_coeff_odd(inp, delta)
    phi = JacobiMCoeffs(S, inp.kappa, values, kind="cusp")
    table = assemble_table(phi, a_max)
    if not jm_membership(table):
        raise ArithmeticError("assembled table is not index-determined")
    return phi, table


# ---------------------------------------------------------------------------
# even rank: evaluation helpers and twisted combinations
# ---------------------------------------------------------------------------

def satake_even_eval(S: EvenLattice, p: int, N: int, k: int,
                     alpha: HPN) -> HPN:
    """Per-prime lift factor at an explicitly materialized point."""
    return l_S_poly(S, p, N, k).evaluate(alpha)


def satake_even_trace(S: EvenLattice, p: int, N: int, k: int, t,
                      one=None):
    """Per-prime lift factor for an unramified even-rank eigenform given
    through t = xi alpha + 1/alpha (generic ring); p must have radical
    dimension 0 or 2."""
    ld = local_data(S, p)
    one = HPN.rat(1) if one is None else one
    e = ord_p(N, p)
    xi = ld.xi_p
    vals = l_values(e, t, xi, one)
    if ld.s_p == 0:
        return vals[e] if e >= 0 else one - one
    if ld.s_p != 2:
        raise ValueError("trace evaluation needs radical dimension 0 or 2")
    out = vals[e] if e >= 0 else one - one
    if e - 2 >= 0:
        out = out - vals[e - 2] * (xi * p)
    return out


def lift_coeff_even_eval(S: EvenLattice, N: int, k: int,
                         alpha_of_p) -> HPN:
    """N^((k-1)/2) times the product of local factors evaluated at the
    supplied points (a callable p -> value)."""
    gd = global_data(S)
    if gd.parity:
        raise ValueError("even-rank lift on an odd-rank lattice")
    out = HPN.half_pow(N, k - 1)
    primes = set(factorize(N)) | {p for p, s in gd.s_classes if s > 0}
    for p in sorted(primes):
        out = out * satake_even_eval(S, p, N, k, alpha_of_p(p))
    return out


# -- twisted eigenform combinations ----------------------------------------

@dataclass(frozen=True)
class EvenEigenData:
    """Even-rank eigenform model: multiplicative coefficients in a ring with
    a designated conjugation, nebentypus attached to the lattice."""

    S: EvenLattice
    k: int
    level_d: int  # the divisor d of d_S; full level is fdisc_S * d
    coeffs: tuple
    conj: object = None  # callable value -> conjugate value

    def c(self, m: int):
        return self.coeffs[m]

    def cbar(self, m: int):
        if self.conj is None:
            return self.coeffs[m]
        return self.conj(self.coeffs[m])


def _prime_power_part(m: int, p: int) -> int:
    out = 1
    while m % p == 0:
        m //= p
        out *= p
    return out


def f_P_coeffs(fe: EvenEigenData, P, m_max: int) -> list:
    """Coefficients of the partial involution twist over the prime set P
    inside the ramified classes: conjugate the P-parts and twist by the
    local characters at P."""
    S = fe.S
    gd = global_data(S)
    ram = set(gd.class_primes(1))
    P = set(P)
    if not P <= ram | set(gd.class_primes(2)):
        raise ValueError("twist set must consist of radical primes")
    P_ram = P & ram
    out = [None] * (m_max + 1)
    out[0] = fe.c(0) if 0 < len(fe.coeffs) else None
    for m in range(1, m_max + 1):
        m_P = 1
        m_P_other = 1
        rest = 1
        for p in factorize(m):
            part = _prime_power_part(m, p)
            if p in P_ram:
                m_P *= part
            elif p in ram:
                m_P_other *= part
            else:
                rest *= part
        val = fe.c(m_P_other * rest) * fe.cbar(m_P)
        for p in P_ram:
            val = val * chi_S_local(S, p, m)
        out[m] = val
    return out


def f_sim_coeffs(fe: EvenEigenData, m_max: int) -> list:
    """Coefficients of the signed sum of the twists over all subsets of the
    ramified primes, in closed product form."""
    S = fe.S
    gd = global_data(S)
    k = fe.k
    ram = gd.class_primes(1)
    d_quot = gd.d_S // fe.level_d
    out = [None] * (m_max + 1)
    for m in range(1, m_max + 1):
        val = None
        rest = m
        for p in ram:
            part = _prime_power_part(m, p)
            rest //= part
            sign = local_data(S, p).eta_p_half * chi_S_local(
                S, p, (-1) ** (k % 2) * d_quot * gd.d_S * m)
            term = fe.c(part) + sign * fe.cbar(part)
            val = term if val is None else val * term
        tail = fe.c(rest)
        val = tail if val is None else val * tail
        out[m] = val
    return out


def f_sim_from_sum(fe: EvenEigenData, m_max: int) -> list:
    """The same combination assembled literally as the subset sum (used to
    cross-check the closed product form)."""
    from itertools import combinations

    S = fe.S
    gd = global_data(S)
    k = fe.k
    ram = gd.class_primes(1)
    d_quot = gd.d_S // fe.level_d
    total = None
    for r in range(len(ram) + 1):
        for P in combinations(ram, r):
            coeffs = f_P_coeffs(fe, P, m_max)
            sign = 1
            for p in P:
                sign *= local_data(S, p).eta_p_half
            chival = 1
            for p in P:
                from .lattice import chi_S_p_value

                chival *= chi_S_p_value(S, p, (-1) ** (k % 2) * d_quot)
            scaled = [None] + [coeffs[m] * sign * chival
                               for m in range(1, m_max + 1)]
            if total is None:
                total = scaled
            else:
                total = [None] + [total[m] + scaled[m]
                                  for m in range(1, m_max + 1)]
    return total


def q_op_even(coeffs: list, p: int, k: int, xi_p: int, m_max: int) -> list:
    """Integral-weight kernel operator c(m) -> c(p m) - xi p^k c(m / p)."""
    out = [None] * (m_max + 1)
    for m in range(1, m_max + 1):
        val = coeffs[p * m]
        if m % p == 0:
            val = val - xi_p * p**k * coeffs[m // p]
        out[m] = val
    return out


def f_star_coeffs(fe: EvenEigenData, m_max: int) -> list:
    """Twisted combination pushed to the full level through the kernel
    operators at the radical-2 primes away from the eigenform level."""
    S = fe.S
    gd = global_data(S)
    quot = gd.d_S // fe.level_d
    cur_max = m_max
    for p in factorize(quot):
        cur_max *= p
    coeffs = f_sim_coeffs(fe, cur_max)
    for p in factorize(quot):
        cur_max //= p
        xi = local_data(S, p).xi_p
        coeffs = q_op_even(coeffs, p, fe.k, xi, cur_max)
    return coeffs[: m_max + 1]


def f_sim_vanishes(fe: EvenEigenData, m_max: int) -> bool:
    sims = f_sim_coeffs(fe, m_max)
    return all(not sims[m] for m in range(1, m_max + 1))


# ---------------------------------------------------------------------------
# orthogonal-group Maass lift
# ---------------------------------------------------------------------------

def epsilon_eta(S: EvenLattice, eta) -> int:
    """Content of a vector of the extended lattice Z e + dual(S) + Z f,
    given as (a, alpha, b): the largest integer dividing it inside that
    lattice (the middle component is measured in dual coordinates)."""
    a, alpha, b = eta
    if not S.in_dual(alpha):
        raise ValueError("middle component must lie in the dual lattice")
    v = [sum(Fraction(S.gram[i][j]) * Fraction(alpha[j]) for j in range(S.n))
         for i in range(S.n)]
    ints = [int(a), int(b)] + [int(x) for x in v]
    if all(x == 0 for x in ints):
        raise ValueError("content of the zero vector")
    out = 0
    for x in ints:
        out = gcd(out, abs(x))
    return out


def eta_disc_index(S: EvenLattice, eta) -> int:
    """D_S (a b - S[alpha]/2) for eta = (a, alpha, b)."""
    a, alpha, b = eta
    gd = global_data(S)
    val = gd.D_S * (Fraction(a) * Fraction(b) - S.norm(alpha))
    if val.denominator != 1:
        raise ArithmeticError("index of eta is not integral")
    return int(val)


def in_positive_cone(S: EvenLattice, eta) -> bool:
    a, alpha, b = eta
    return a + b > 0 and Fraction(a) * Fraction(b) - S.norm(alpha) > 0


def maass_lift(c, kappa: int, S: EvenLattice, eta) -> Fraction:
    """Divisor-sum coefficient of the orthogonal-group lift:
    sum over divisors e of the content of eta of e^(kappa-1) c(D_eta / e^2);
    c is a callable on nonnegative indices."""
    if not in_positive_cone(S, eta):
        raise ValueError("eta must lie in the positive cone")
    eps = epsilon_eta(S, eta)
    D = eta_disc_index(S, eta)
    out = Fraction(0)
    for e in range(1, eps + 1):
        if eps % e == 0:
            if D % (e * e):
                raise ArithmeticError("index not divisible by the square")
            out += Fraction(e) ** (kappa - 1) * Fraction(c(D // (e * e)))
    return out


def maass_table(c, kappa: int, S: EvenLattice, bound: int):
    """Lift coefficients for all eta = (a, alpha, b) in the positive cone
    with max(a, b) <= bound and alpha over the coset representatives."""
    dg = disc_group(S)
    out = []
    for a in range(0, bound + 1):
        for b in range(0, bound + 1):
            for idx, mu in enumerate(dg.reps):
                eta = (a, mu, b)
                if in_positive_cone(S, eta):
                    out.append(((a, idx, b), maass_lift(c, kappa, S, eta)))
    return out


def maass_display_odd(inp: LiftInputOdd, eta) -> HPN:
    """Odd-rank orthogonal lift coefficient with the literally stated
    content-divisor weight n/2 and shifted local arguments.  This is a
    documented normalization variant; the divisor-sum relation of the
    isomorphism (kappa - 1 weight, shifted square-free kernels) is the one
    the consistency suite pins, so this value is returned as an exact
    half-power number without a rationality assertion."""
    S, k = inp.S, inp.k
    gd = global_data(S)
    eps = epsilon_eta(S, eta)
    N = gd.delta_S * eta_disc_index(S, eta)
    dN, fN = fundamental_split(N, k)
    bcount = count_ramified_nonzero(inp.b * inp.d, N, k)
    base = HPN.rat(Fraction(inp.g.coeff(dN), 2**bcount)) \
        * HPN.half_pow(fN, 2 * k - 1)
    out = HPN.rat(0)
    for e in range(1, eps + 1):
        if eps % e == 0:
            term = base * HPN.half_pow(e, S.n)
            arg = Fraction(N, e * e)
            primes = set(factorize(N)) | {2} \
                | {p for p, s in gd.s_classes if s > 0} \
                | set(factorize(inp.b * inp.d))
            for p in sorted(primes):
                term = term * satake_odd(S, p, arg, k, inp.f)
            out = out + term
    return out


def maass_display_even(S: EvenLattice, k: int, eta, alpha_of_p) -> HPN:
    """Even-rank orthogonal lift coefficient with the literally stated
    weights (content-divisor weight n/2 and index power k - 1/2)."""
    gd = global_data(S)
    eps = epsilon_eta(S, eta)
    N = eta_disc_index(S, eta)
    out = HPN.rat(0)
    for e in range(1, eps + 1):
        if eps % e == 0:
            term = HPN.half_pow(e, S.n) * HPN.half_pow(N, 2 * k - 1)
            arg = Fraction(N, e * e)
            primes = set(factorize(N)) | {p for p, s in gd.s_classes if s > 0}
            for p in sorted(primes):
                term = term * l_S_poly(S, p, arg, k).evaluate(alpha_of_p(p))
            out = out + term
    return out


# ---------------------------------------------------------------------------
# degree-2 consistency driver
# ---------------------------------------------------------------------------

def degree2_consistency(k: int, bound: int, prec: int | None = None):
    """For the scalar lattice, compare the lift coefficients against the
    Siegel-series route: coefficient of the rank-2 matrix bordered from
    (a, r/2) equals the plus-space value at its squarefree kernel times the
    normalized Siegel factors evaluated at the Satake points.  Returns the
    list of compared entries; raises on any mismatch."""
    from .lattice import CATALOG

    S = CATALOG["A1"]
    prec = prec if prec is not None else 16 * bound + 16
    f = EigenData.from_level1(2 * k, max(50, bound * 4))
    g = cusp_plus_eigenbasis(k, prec)[0]
    inp = LiftInputOdd(S, k, f, g)
    from math import isqrt

    rows = []
    for a in range(1, bound + 1):
        for r in range(0, isqrt(4 * a) + 1):
            if r * r >= 4 * a:
                continue
            alpha = (Fraction(r, 2),)
            disc = 4 * a - r * r
            lift_val = lift_coeff_odd(inp, disc)
            h = bordered_half_matrix(S, a, alpha)
            dN, fN = fundamental_split(disc, k)
            val = HPN.rat(Fraction(g.coeff(dN))) * HPN.half_pow(fN, 2 * k - 1)
            for p in factorize(disc):
                ft = F_tilde_oracle(h, p, k=k)
                if not ft.is_symmetric():
                    raise ArithmeticError("normalized factor is not "
                                          "self-reciprocal at p=%d" % p)
                t = HPN.rat(f.c(p)) * HPN.half_pow(p, 1 - 2 * k)
                val = val * ft.evaluate_symmetric(t)
            siegel_val = val.rational()
            if siegel_val != lift_val:
                raise ArithmeticError(
                    "mismatch at (a, r) = (%d, %d): %s vs %s"
                    % (a, r, lift_val, siegel_val))
            rows.append(((a, r), lift_val))
    return rows
