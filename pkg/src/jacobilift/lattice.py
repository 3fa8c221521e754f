"""Invariants of maximal even positive definite lattices: discriminant
groups, local radical dimensions, normalized Hasse signs, square-class
characters, and the coset counting function with its local product form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    factorize,
    fundamental_discriminant,
    hilbert_symbol,
    is_padic_square,
    kronecker_disc,
    kronecker_symbol,
    ord_p,
)
from .intmat import (
    det_fraction,
    diagonalize_symmetric,
    inv_fraction,
    kernel_mod_p,
    mat_vec,
    smith_normal_form,
)


class LatticeError(ValueError):
    """Raised when a matrix violates an even-lattice invariant."""

    def __init__(self, invariant: str, message: str):
        self.invariant = invariant
        super().__init__("%s: %s" % (invariant, message))


@dataclass(frozen=True)
class EvenLattice:
    """Positive definite even integral Gram matrix."""

    gram: tuple[tuple[int, ...], ...]
    name: str | None = None

    @staticmethod
    def from_rows(rows, name: str | None = None) -> "EvenLattice":
        gram = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise LatticeError("square", "Gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError("symmetric", "entry (%d,%d)" % (i, j))
        if any(gram[i][i] % 2 for i in range(n)):
            raise LatticeError("even-diagonal", "odd diagonal entry")
        for m in range(1, n + 1):
            minor = [row[:m] for row in gram[:m]]
            if det_fraction(minor) <= 0:
                raise LatticeError("positive-definite",
                                   "leading minor of size %d" % m)
        return EvenLattice(gram, name)

    @property
    def n(self) -> int:
        return len(self.gram)

    def det(self) -> int:
        d = det_fraction(self.gram)
        return int(d)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.gram]

    def quad(self, x) -> Fraction:
        """S[x] = x^T S x."""
        n = self.n
        return sum(Fraction(x[i]) * self.gram[i][j] * Fraction(x[j])
                   for i in range(n) for j in range(n))

    def bilin(self, x, y) -> Fraction:
        n = self.n
        return sum(Fraction(x[i]) * self.gram[i][j] * Fraction(y[j])
                   for i in range(n) for j in range(n))

    def norm(self, x) -> Fraction:
        """S[x]/2."""
        return self.quad(x) / 2

    def in_dual(self, x) -> bool:
        return all(v.denominator == 1 for v in
                   (sum(Fraction(self.gram[i][j]) * Fraction(x[j])
                        for j in range(self.n)) for i in range(self.n)))

    def __repr__(self):
        return "EvenLattice(%s)" % (self.name or self.gram,)


def _block(*sizes_and_grams):
    rows = []
    total = sum(len(g) for g in sizes_and_grams)
    offset = 0
    for g in sizes_and_grams:
        for r in g:
            rows.append([0] * offset + list(r) + [0] * (total - offset - len(r)))
        offset += len(g)
    return rows


_A1 = [[2]]
_A2 = [[2, 1], [1, 2]]
_D4 = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
_E8 = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, -1],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, -1, 0, 0, 0, 0, 2],
]

CATALOG = {
    "A1": EvenLattice.from_rows(_A1, "A1"),
    "A1+A1": EvenLattice.from_rows(_block(_A1, _A1), "A1+A1"),
    "A2": EvenLattice.from_rows(_A2, "A2"),
    "D4": EvenLattice.from_rows(_D4, "D4"),
    "E8": EvenLattice.from_rows(_E8, "E8"),
}


# ---------------------------------------------------------------------------
# discriminant group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscGroup:
    reps: tuple[tuple[Fraction, ...], ...]
    orders: tuple[int, ...]
    norms: tuple[Fraction, ...]  # S[mu]/2 for each representative


_disc_cache: dict = {}


def disc_group(S: EvenLattice) -> DiscGroup:
    """Coset representatives for the dual quotient, ordered deterministically
    (lexicographic over the elementary-divisor box), reduced to [0,1)^n."""
    key = S.gram
    if key in _disc_cache:
        return _disc_cache[key]
    d, _, v = smith_normal_form(S.rows())
    n = S.n
    divs = [d[i][i] for i in range(n)]
    reps = []
    norms = []

    def lex(prefix, i):
        if i == n:
            yield list(prefix)
            return
        for c in range(divs[i]):
            yield from lex(prefix + [c], i + 1)

    vmat = [[Fraction(x) for x in row] for row in v]
    for c in lex([], 0):
        w = [Fraction(c[i], divs[i]) for i in range(n)]
        mu = mat_vec(vmat, w)
        mu = [x - x.__floor__() for x in mu]
        reps.append(tuple(mu))
        norms.append(S.norm(mu))
    out = DiscGroup(tuple(reps), tuple(divs), tuple(norms))
    if len(reps) != S.det():
        raise LatticeError("disc-group", "size mismatch with det")
    if any(not S.in_dual(mu) for mu in reps):
        raise LatticeError("disc-group", "representative outside the dual")
    _disc_cache[key] = out
    return out


def is_maximal(S: EvenLattice) -> bool:
    """No nonzero dual coset has integral norm (adjoining one would give a
    strictly larger even lattice)."""
    dg = disc_group(S)
    for mu, nrm in zip(dg.reps, dg.norms):
        if any(x != 0 for x in mu) and nrm.denominator == 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Hasse sign normalized by the anisotropic kernel
# ---------------------------------------------------------------------------

def _isotropic(r: int, d: Fraction, eps: int, p: int) -> bool:
    if r <= 1:
        return False
    if r == 2:
        return is_padic_square(-d, p)
    if r == 3:
        return eps == hilbert_symbol(-1, -d, p)
    if r == 4:
        return (not is_padic_square(d, p)) or eps == hilbert_symbol(-1, -1, p)
    return True


def witt_invariants(B, p: int) -> tuple[int, int, Fraction, int]:
    """(witt_index, kernel_dim, kernel_det_class, kernel_hasse) of a
    nondegenerate symmetric rational matrix over Q_p."""
    diag = diagonalize_symmetric(B)
    r = len(diag)
    d = Fraction(1)
    for x in diag:
        d *= x
    eps = 1
    for i in range(r):
        for j in range(i + 1, r):
            eps *= hilbert_symbol(diag[i], diag[j], p)
    r0, d0, e0 = r, d, eps
    nu = 0
    while _isotropic(r0, d0, e0, p):
        d0 = -d0
        e0 = e0 * hilbert_symbol(-1, d0, p)
        r0 -= 2
        nu += 1
    return nu, r0, d0, e0


_eta_cache: dict = {}


def eta_general(B, p: int) -> int:
    """Hasse sign normalized so it only depends on the anisotropic kernel:
    odd rank: kernel dimension is 2 - eta; even rank with trivial square-class
    character: split (+1) or quaternionic (-1); even rank otherwise: the sign
    distinguishing the two scalings of the norm form of the quadratic
    extension attached to the determinant."""
    key = (tuple(tuple(Fraction(x) for x in row) for row in B), p)
    if key in _eta_cache:
        return _eta_cache[key]
    nu, r0, d0, e0 = witt_invariants(B, p)
    r = r0 + 2 * nu
    if r % 2:
        eta = 1 if r0 == 1 else -1
    elif r0 == 0:
        eta = 1
    elif r0 == 4:
        eta = -1
    else:
        eta = e0
    _eta_cache[key] = eta
    return eta


def scaled_gram(S: EvenLattice, factor: Fraction):
    return [[Fraction(x) * factor for x in row] for row in S.gram]


# ---------------------------------------------------------------------------
# local data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalData:
    p: int
    s_p: int
    eta_p: int
    eta_p_half: int
    xi_p: int | None  # character value at p for even rank, else None
    cls: str  # "S0", "S1", "S2"


def radical_dimension(S: EvenLattice, p: int) -> int:
    """Dimension of the radical of the reduction-mod-p quadratic form
    x -> S[x]/2."""
    ker = kernel_mod_p(S.rows(), p)
    if p != 2:
        return len(ker)
    # on the bilinear kernel mod 2 the map x -> S[x]/2 mod 2 is linear;
    # check well-definedness under change of lift and additivity explicitly
    vals = []
    for v in ker:
        w = [x % 2 for x in v]
        q = (int(S.quad(w)) // 2) % 2
        w2 = list(w)
        if w2:
            w2[0] += 2  # alternative lift
            if (int(S.quad(w2)) // 2) % 2 != q:
                raise LatticeError("mod-2-form", "lift dependence detected")
        vals.append(q)
    for i in range(len(ker)):
        for j in range(i + 1, len(ker)):
            w = [(a + b) % 2 for a, b in zip(ker[i], ker[j])]
            if (int(S.quad(w)) // 2) % 2 != (vals[i] + vals[j]) % 2:
                raise LatticeError("mod-2-form", "non-additive on the radical")
    rank = 1 if any(vals) else 0
    return len(ker) - rank


_local_cache: dict = {}


def local_data(S: EvenLattice, p: int) -> LocalData:
    key = (S.gram, p)
    if key in _local_cache:
        return _local_cache[key]
    if not is_maximal(S):
        raise LatticeError("maximal", "lattice admits a larger even lattice")
    s = radical_dimension(S, p)
    if s > 2:
        raise LatticeError("radical", "radical dimension %d > 2" % s)
    eta = eta_general(S.rows(), p)
    eta_half = eta_general(scaled_gram(S, Fraction(1, 2)), p)
    xi = None
    if S.n % 2 == 0:
        xi = chi_S_value(S, p)
    out = LocalData(p=p, s_p=s, eta_p=eta, eta_p_half=eta_half, xi_p=xi,
                    cls="S%d" % s)
    _local_cache[key] = out
    return out


# ---------------------------------------------------------------------------
# global data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GlobalData:
    n: int
    det: int
    parity: int  # n mod 2
    s_classes: tuple[tuple[int, int], ...]  # (p, s_p) for p | det
    b_S: int
    lambda_S: int
    delta_S: int
    d_S: int
    D_S: int
    fdisc_S: int | None  # |disc| of the discriminant field (even rank)
    chi_disc: int | None  # signed fundamental discriminant defining chi

    def s_p(self, p: int) -> int:
        for q, s in self.s_classes:
            if q == p:
                return s
        return 0

    def class_primes(self, s: int) -> list[int]:
        return [p for p, sp in self.s_classes if sp == s]


_global_cache: dict = {}


def global_data(S: EvenLattice) -> GlobalData:
    key = S.gram
    if key in _global_cache:
        return _global_cache[key]
    n = S.n
    det = S.det()
    primes = sorted(set(factorize(det)) | {2})
    s_classes = tuple((p, local_data(S, p).s_p) for p in primes)
    d_S = 1
    b_S = 1
    lambda_S = 1
    for p, s in s_classes:
        if s == 2:
            d_S *= p
            if p != 2:
                lambda_S *= p
        elif s == 1:
            b_S *= p
    if n % 2:
        delta_S = 2 * d_S if d_S % 2 == 0 else d_S
        D_S = 4 * b_S * lambda_S
        if D_S * delta_S != 2 * det:
            raise LatticeError("determinant-relation",
                               "D_S * delta_S != 2 det S")
        gd = GlobalData(n=n, det=det, parity=1, s_classes=s_classes, b_S=b_S,
                        lambda_S=lambda_S, delta_S=delta_S, d_S=d_S, D_S=D_S,
                        fdisc_S=None, chi_disc=None)
    else:
        disc0 = (-1) ** (n // 2) * det
        chi_disc = fundamental_discriminant(disc0)
        fdisc = abs(chi_disc)
        D_S = fdisc * d_S
        if D_S * d_S != det:
            raise LatticeError("determinant-relation", "D_S * d_S != det S")
        if set(factorize(fdisc)) != {p for p, s in s_classes if s == 1}:
            raise LatticeError("ramified-primes",
                               "radical-1 primes differ from the field "
                               "discriminant support")
        gd = GlobalData(n=n, det=det, parity=0, s_classes=s_classes, b_S=b_S,
                        lambda_S=lambda_S, delta_S=d_S, d_S=d_S, D_S=D_S,
                        fdisc_S=fdisc, chi_disc=chi_disc)
    _global_cache[key] = gd
    return gd


# ---------------------------------------------------------------------------
# quadratic characters attached to an even-rank lattice
# ---------------------------------------------------------------------------

def chi_S_value(S: EvenLattice, m: int) -> int:
    """Primitive quadratic character of the discriminant field, at m."""
    if S.n % 2:
        raise LatticeError("parity", "character defined for even rank only")
    disc0 = (-1) ** (S.n // 2) * S.det()
    d = fundamental_discriminant(disc0)
    if d == 1:
        return 1
    mm = m % abs(d)
    if mm == 0:
        return 0
    return kronecker_disc(d, mm)


def chi_S_p_value(S: EvenLattice, p: int, m: int) -> int:
    """p-primary Dirichlet component of the character: vanishes when p | m,
    otherwise evaluates the character on the integer congruent to m at p and
    to 1 away from p."""
    if S.n % 2:
        raise LatticeError("parity", "character defined for even rank only")
    if m % p == 0:
        return 0
    disc0 = (-1) ** (S.n // 2) * S.det()
    chi_disc = fundamental_discriminant(disc0)
    fdisc = abs(chi_disc)
    if fdisc == 1 or fdisc % p:
        return 1
    e = ord_p(fdisc, p)
    q = p**e
    rest = fdisc // q
    # CRT: m' = m mod q, m' = 1 mod rest
    if rest == 1:
        mp = m % q or q
    else:
        mp = ((m % q) * rest * pow(rest, -1, q) + q * pow(q, -1, rest)) % fdisc
    return kronecker_disc(chi_disc, mp)


def chi_S_local(S: EvenLattice, p: int, m) -> int:
    """Local quadratic character at p of the discriminant extension,
    evaluated on a nonzero rational (Hilbert symbol against the signed
    determinant)."""
    if S.n % 2:
        raise LatticeError("parity", "character defined for even rank only")
    disc0 = (-1) ** (S.n // 2) * S.det()
    return hilbert_symbol(m, disc0, p)


# ---------------------------------------------------------------------------
# coset counting
# ---------------------------------------------------------------------------

def _in_plus_class(m: int, k: int) -> bool:
    """Residue test (-1)^k m = 0, 1 mod 4."""
    return ((-1) ** (k % 2) * m) % 4 in (0, 1)


def a_S_direct(S: EvenLattice, ell: int) -> int:
    """Count dual cosets mu with ell = -D_S S[mu]/2 mod D_S."""
    gd = global_data(S)
    dg = disc_group(S)
    count = 0
    for nrm in dg.norms:
        val = gd.D_S * nrm
        if val.denominator != 1:
            raise LatticeError("norm-denominator", "D_S * norm not integral")
        if (ell + int(val)) % gd.D_S == 0:
            count += 1
    return count


def a_S_local_factor(S: EvenLattice, p: int, ell: int, k: int) -> int:
    """Local factor of the coset count at p."""
    gd = global_data(S)
    ld = local_data(S, p)
    s = ld.s_p
    if gd.parity == 1:
        lam_ell = gd.lambda_S * ell
        if p != 2:
            if s == 0:
                return 1
            if s == 1:
                sym = kronecker_symbol((-1) ** (k % 2) * lam_ell, p)
                return 1 + ld.eta_p * sym
            return p * (1 if ell % p else 0) + 1
        if s == 0:
            return 1 if _in_plus_class(lam_ell, k) else 0
        if s == 1:
            if not _in_plus_class(lam_ell, k):
                return 0
            sym = kronecker_symbol((-1) ** (k % 2) * lam_ell, 2)
            return 1 + ld.eta_p * sym
        return 1 if _in_plus_class(lam_ell, k) else 3
    # even rank
    if s == 0:
        return 1
    if s == 1:
        return 1 + ld.eta_p_half * chi_S_p_value(S, p,
                                                 (-1) ** (k % 2) * gd.d_S * ell)
    return p * (1 if ell % p else 0) + 1


def a_S_local(S: EvenLattice, ell: int, k: int) -> int:
    gd = global_data(S)
    primes = {p for p, s in gd.s_classes if s > 0}
    if gd.parity == 1:
        primes.add(2)
    out = 1
    for p in sorted(primes):
        out *= a_S_local_factor(S, p, ell, k)
    return out


def a_S_count(S: EvenLattice, ell: int, k: int, mode: str = "both") -> int:
    """Coset count; `mode` is one of direct / local / both (both asserts the
    product formula)."""
    if mode == "direct":
        return a_S_direct(S, ell)
    if mode == "local":
        return a_S_local(S, ell, k)
    direct = a_S_direct(S, ell)
    local = a_S_local(S, ell, k)
    if direct != local:
        raise ArithmeticError(
            "coset count mismatch at ell=%d: direct=%d local=%d"
            % (ell, direct, local))
    return direct


def consistent_weight_parity(S: EvenLattice) -> int:
    """The parity of the integer weight parameter forced by evenness of the
    Jacobi weight: k = (n+1)//2 mod 2."""
    n = S.n
    return ((n + 1) // 2) % 2


# ---------------------------------------------------------------------------
# bordered extension
# ---------------------------------------------------------------------------

def bordered_lattice(S: EvenLattice, a: int, alpha) -> EvenLattice:
    """Gram matrix of rank n+1 obtained by adjoining a vector of norm a
    pairing with the base lattice through a dual vector alpha."""
    if not S.in_dual(alpha):
        raise LatticeError("dual-vector", "alpha is not in the dual lattice")
    n = S.n
    s_alpha = [sum(Fraction(S.gram[i][j]) * Fraction(alpha[j])
                   for j in range(n)) for i in range(n)]
    rows = []
    for i in range(n):
        rows.append(list(S.gram[i]) + [int(s_alpha[i])])
    rows.append([int(x) for x in s_alpha] + [2 * a])
    return EvenLattice.from_rows(rows)


def short_dual_vectors(S: EvenLattice, norm_bound: Fraction):
    """All dual vectors alpha with S[alpha]/2 <= norm_bound, by exact
    square-completion enumeration (includes 0 and both signs)."""
    n = S.n
    m = inv_fraction(S.rows())  # Gram of the dual in v-coordinates
    # complete squares: Q(v) = sum_i d_i (v_i + sum_{j>i} c_ij v_j)^2
    d = []
    c = [[Fraction(0)] * n for _ in range(n)]
    work = [row[:] for row in m]
    for i in range(n):
        di = work[i][i]
        d.append(di)
        for j in range(i + 1, n):
            c[i][j] = work[i][j] / di
        for r in range(i + 1, n):
            for s in range(i + 1, n):
                work[r][s] -= work[r][i] * work[i][s] / di
    bound = 2 * Fraction(norm_bound)
    sinv = m
    results = []

    from math import isqrt

    def rec(i, tail, remaining):
        # tail holds v_{i+1..n-1}; remaining budget for indices <= i
        if i < 0:
            results.append(list(tail))
            return
        shift = sum(c[i][j] * tail[j - i - 1] for j in range(i + 1, n))
        # scan integers v_i with d[i] (v_i + shift)^2 <= remaining
        lim = remaining / d[i]
        top = isqrt(int(lim)) + 2
        lo = -top - int(abs(shift)) - 1
        hi = top + int(abs(shift)) + 2
        for vi in range(lo, hi):
            val = d[i] * (vi + shift) ** 2
            if val <= remaining:
                rec(i - 1, [vi] + tail, remaining - val)

    rec(n - 1, [], bound)
    out = []
    for v in results:
        alpha = mat_vec(sinv, [Fraction(x) for x in v])
        out.append(tuple(alpha))
    return out
