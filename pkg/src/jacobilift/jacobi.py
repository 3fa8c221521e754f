"""Jacobi form Fourier data: single-coefficient-function containers, the
theta-component bookkeeping, Eisenstein coefficients via the local factor
product, and the coefficientwise Euler-product identity checker for Hecke
eigenforms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import (
    HPN,
    LaurentPoly,
    QSeries,
    dirichlet_L_minus,
    factorize,
    fundamental_discriminant,
    fundamental_split,
    kronecker_disc,
    moebius,
)
from .intmat import det_fraction
from .lattice import (
    EvenLattice,
    LatticeError,
    bordered_lattice,
    disc_group,
    global_data,
    is_maximal,
    local_data,
)
from .localpoly import B_S_poly, l_S_poly


# ---------------------------------------------------------------------------
# discriminant indices
# ---------------------------------------------------------------------------

def disc_index(S: EvenLattice, a: int, alpha) -> tuple[int, int | None]:
    """(D, Delta) for the pair (a, alpha): D = D_S (a - S[alpha]/2), and for
    odd rank Delta = det of the bordered matrix (asserted equal to
    delta_S * D)."""
    if not S.in_dual(alpha):
        raise LatticeError("dual-vector", "alpha is not in the dual lattice")
    gd = global_data(S)
    val = gd.D_S * (Fraction(a) - S.norm(alpha))
    if val.denominator != 1:
        raise ArithmeticError("discriminant index is not integral")
    D = int(val)
    if gd.parity == 0:
        return D, None
    delta = int(det_fraction(bordered_lattice(S, a, alpha).rows()))
    if delta != gd.delta_S * D:
        raise ArithmeticError("bordered determinant disagrees with the index")
    return D, delta


# ---------------------------------------------------------------------------
# containers
# ---------------------------------------------------------------------------

@dataclass
class JacobiMCoeffs:
    """Jacobi form whose coefficients depend only on the discriminant index:
    values are keyed by Delta = delta_S * D for odd rank and by D for even
    rank."""

    lattice: EvenLattice
    kappa: int
    values: dict[int, Fraction] = field(default_factory=dict)
    kind: str = "cusp"

    def __post_init__(self):
        if self.kappa % 2:
            raise ValueError("Jacobi weight must be even for this space")

    def index_of(self, a: int, alpha) -> int:
        D, delta = disc_index(self.lattice, a, alpha)
        return delta if global_data(self.lattice).parity else D

    def value(self, N: int):
        if N not in self.values:
            raise KeyError("coefficient at index %d is not materialized" % N)
        return self.values[N]


@dataclass(frozen=True)
class JacobiFourierTable:
    lattice: EvenLattice
    a_max: int
    entries: tuple  # ((a, coset_index), value) pairs, deterministic order

    def as_dict(self) -> dict:
        return dict(self.entries)

    def value(self, a: int, idx: int):
        d = self.as_dict()
        return d[(a, idx)]


@dataclass(frozen=True)
class ThetaDecomp:
    lattice: EvenLattice
    a_max: int
    components: tuple[QSeries, ...]  # one per dual coset, den = D_S


def assemble_table(m: JacobiMCoeffs, a_max: int) -> JacobiFourierTable:
    """Entry (a, mu) = c(index of (a, mu)) for every dual coset and a up to
    a_max, including the boundary pairs of index zero."""
    S = m.lattice
    dg = disc_group(S)
    gd = global_data(S)
    entries = []
    for idx, (mu, nrm) in enumerate(zip(dg.reps, dg.norms)):
        for a in range(0, a_max + 1):
            if Fraction(a) < nrm:
                continue
            val = gd.D_S * (a - nrm)
            key = int(val) * (gd.delta_S if gd.parity else 1)
            entries.append(((a, idx), m.value(key)))
    return JacobiFourierTable(S, a_max, tuple(entries))


def theta_decompose(t: JacobiFourierTable) -> ThetaDecomp:
    """Per-coset series in q^(1/D_S); the exponent of the entry (a, mu) is
    the integer D_S (a - S[mu]/2)."""
    S = t.lattice
    dg = disc_group(S)
    gd = global_data(S)
    comps = []
    table = t.as_dict()
    for idx, nrm in enumerate(dg.norms):
        jmax_frac = gd.D_S * (Fraction(t.a_max) - nrm)
        if jmax_frac < 0:
            comps.append(QSeries([0], den=gd.D_S, prec=0))
            continue
        jmax = int(jmax_frac)
        coeffs = [0] * (jmax + 1)
        for a in range(0, t.a_max + 1):
            val = gd.D_S * (Fraction(a) - nrm)
            if val < 0 or val.denominator != 1:
                continue
            coeffs[int(val)] = table[(a, idx)]
        comps.append(QSeries(coeffs, den=gd.D_S, prec=jmax))
    return ThetaDecomp(S, t.a_max, tuple(comps))


def reassemble(td: ThetaDecomp) -> JacobiFourierTable:
    S = td.lattice
    dg = disc_group(S)
    gd = global_data(S)
    entries = []
    for idx, nrm in enumerate(dg.norms):
        comp = td.components[idx]
        for a in range(0, td.a_max + 1):
            if Fraction(a) < nrm:
                continue
            val = gd.D_S * (a - nrm)
            entries.append(((a, idx), comp.get(int(val), 0)))
    return JacobiFourierTable(S, td.a_max, tuple(entries))


def jm_membership(t: JacobiFourierTable) -> bool:
    """The entry values factor through the discriminant index."""
    S = t.lattice
    dg = disc_group(S)
    gd = global_data(S)
    seen: dict[int, object] = {}
    for (a, idx), val in t.entries:
        key = int(gd.D_S * (Fraction(a) - dg.norms[idx]))
        if key in seen:
            if Fraction(seen[key]) != Fraction(val):
                return False
        else:
            seen[key] = val
    return True


# ---------------------------------------------------------------------------
# Eisenstein coefficients
# ---------------------------------------------------------------------------

def eisenstein_A(S: EvenLattice, kappa: int, N: int,
                 check_trivial_factor: bool = False) -> Fraction:
    """Coefficient function of the Jacobi Eisenstein series at discriminant
    index N (up to its global normalizing constant, which is never fixed):
    an L-value times the finite product of local factor evaluations at the
    half-power point; the result is asserted rational."""
    gd = global_data(S)
    k = kappa - (S.n + 1) // 2
    if kappa % 2:
        raise ValueError("weight must be even")
    if k < 2:
        raise ValueError("parameter weight too small")
    if N < 1:
        raise ValueError("index must be positive")
    primes = sorted(set(factorize(N)) | {p for p, s in gd.s_classes} | {2})
    if check_trivial_factor:
        q = 2
        while q in primes or N % q == 0:
            q += 1
        extra = l_S_poly(S, q, N, k).evaluate(
            HPN.half_pow(q, 2 * k - 1 if gd.parity else k - 1))
        if extra != HPN.rat(1):
            raise ArithmeticError("factor away from the support is not 1")
    if gd.parity:
        arg = gd.delta_S * N
        disc = fundamental_discriminant((-1) ** (k % 2) * arg)
        _, f = fundamental_split(arg, k)
        out = HPN.rat(dirichlet_L_minus(k, disc)) * HPN.half_pow(f, 2 * k - 1)
        for p in primes:
            out = out * l_S_poly(S, p, arg, k).evaluate(
                HPN.half_pow(p, 2 * k - 1))
    else:
        out = HPN.half_pow(N, k - 1)
        for p in primes:
            out = out * l_S_poly(S, p, N, k).evaluate(
                HPN.half_pow(p, k - 1))
    return out.rational()


def eis_jacobi_coeffs(S: EvenLattice, kappa: int, n_max: int) -> JacobiMCoeffs:
    """Eisenstein coefficient container with all indices up to n_max
    materialized (odd rank: indexed by Delta = delta_S * D)."""
    gd = global_data(S)
    mult = gd.delta_S if gd.parity else 1
    values: dict[int, Fraction] = {0: Fraction(0)}
    for N in range(1, n_max // mult + 1):
        values[mult * N] = eisenstein_A(S, kappa, N)
    return JacobiMCoeffs(S, kappa, values, kind="eisenstein")


# ---------------------------------------------------------------------------
# Dirichlet-coefficient helpers and the Euler identity
# ---------------------------------------------------------------------------

def dirichlet_mul(a: dict[int, HPN], b: dict[int, HPN],
                  m_max: int) -> dict[int, HPN]:
    out: dict[int, HPN] = {}
    for m1, v1 in a.items():
        if m1 > m_max:
            continue
        for m2, v2 in b.items():
            m = m1 * m2
            if m <= m_max:
                out[m] = out.get(m, HPN.rat(0)) + v1 * v2
    return out


def euler_factor_series(den_coeffs: list, p: int, m_max: int) -> dict[int, HPN]:
    """Dirichlet coefficients supported on powers of p of the inverse of the
    polynomial with the given coefficients in p^-s."""
    order = 0
    while p ** (order + 1) <= m_max:
        order += 1
    poly = LaurentPoly({i: c for i, c in enumerate(den_coeffs)})
    inv = poly.series_inverse(order)
    return {p**e: inv.coeff(e) for e in range(order + 1)}


def euler_identity_check(phi: JacobiMCoeffs, L_params: dict[int, list],
                         a: int, alpha, m_max: int,
                         perturb: tuple[int, HPN] | None = None) -> bool:
    """Coefficientwise Dirichlet-series identity satisfied by Hecke
    eigenforms: the scaled diagonal coefficients c(a m^2, alpha m) against
    the eigenform L-series with its boundary factor removed.

    L_params maps each prime to the coefficient list of the denominator of
    the local L-factor in p^-s.  The optional perturbation (m0, delta) adds
    delta to the left-hand coefficient at m0, for sensitivity tests."""
    S = phi.lattice
    gd = global_data(S)
    k = phi.kappa - (S.n + 1) // 2
    S_ext = bordered_lattice(S, a, alpha)
    if not is_maximal(S_ext):
        raise LatticeError("maximal", "the bordered lattice must be maximal")
    D, delta = disc_index(S, a, alpha)
    base_index = delta if gd.parity else D

    primes = [p for p in range(2, m_max + 1) if len(factorize(p)) == 1
              and list(factorize(p).values()) == [1]]

    # left side: c(a m^2, alpha m) m^(-(k - 1/2)) (odd) or m^(-(k-1)) (even),
    # times the ratio of the extension/base Euler polynomials
    lhs = {}
    for m in range(1, m_max + 1):
        c = HPN.rat(phi.value(m * m * base_index))
        if gd.parity:
            c = c * HPN.half_pow(m, 1 - 2 * k)
        else:
            c = c * HPN.rat(Fraction(1, m ** (k - 1)))
        lhs[m] = c
    if perturb is not None:
        m0, deltav = perturb
        lhs[m0] = lhs[m0] + deltav
    for p in primes:
        bt = B_S_poly(S_ext, p).subs_scaled(HPN.half_pow(p, -1))
        bs = B_S_poly(S, p)
        order = 0
        while p ** (order + 1) <= m_max:
            order += 1
        ratio = (bt * bs.series_inverse(order)).truncate(order)
        fac = {p**e: ratio.coeff(e) for e in range(order + 1)
               if ratio.coeff(e)}
        lhs = dirichlet_mul(lhs, fac, m_max)

    # right side: c(a, alpha) L(phi, s) / boundary factor
    rhs = {1: HPN.rat(phi.value(base_index))}
    for p in primes:
        if p not in L_params:
            raise KeyError("missing local L-parameters at p=%d" % p)
        rhs = dirichlet_mul(rhs, euler_factor_series(L_params[p], p, m_max),
                            m_max)
    if gd.parity:
        disc = fundamental_discriminant((-1) ** (((S.n + 1) // 2) % 2) * delta)
        inv_l = {1: HPN.rat(1)}
        for p in primes:
            chi = kronecker_disc(disc, p)
            coeffs = {1: HPN.rat(1)}
            if chi:
                coeffs[p] = HPN.half_pow(p, -1) * (-chi)
            inv_l = dirichlet_mul(inv_l, coeffs, m_max)
        rhs = dirichlet_mul(rhs, inv_l, m_max)
    else:
        inv_zeta2 = {j * j: HPN.rat(moebius(j))
                     for j in range(1, m_max + 1) if j * j <= m_max
                     and moebius(j)}
        rhs = dirichlet_mul(rhs, inv_zeta2, m_max)

    for m in range(1, m_max + 1):
        if lhs.get(m, HPN.rat(0)) != rhs.get(m, HPN.rat(0)):
            return False
    return True
