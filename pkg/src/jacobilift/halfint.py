"""Exact q-expansions of level-1 integral weight forms and level-4
half-integral weight forms: plus space projection, the theta/weight-2
monomial basis, Hecke action at coefficient level, the sign-pattern
operators, and the Cohen Eisenstein numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .exact import (
    QSeries,
    default_prec,
    dirichlet_L_minus,
    divisors,
    fundamental_discriminant,
    fundamental_split,
    kronecker_disc,
    kronecker_symbol,
    moebius,
    sigma,
    zeta_minus,
)


def dim_mod_level1(w: int) -> int:
    """Dimension of level-1 modular forms of even weight w >= 0."""
    if w < 0 or w % 2:
        return 0
    if w % 12 == 2:
        return w // 12
    return w // 12 + 1


def dim_cusp_level1(w: int) -> int:
    return max(dim_mod_level1(w) - 1, 0) if w >= 4 else 0


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def theta_series(prec: int | None = None) -> QSeries:
    """1 + 2 sum_{m>=1} q^(m^2)."""
    prec = default_prec() if prec is None else prec
    coeffs = [0] * (prec + 1)
    coeffs[0] = 1
    m = 1
    while m * m <= prec:
        coeffs[m * m] = 2
        m += 1
    return QSeries(coeffs)


def weight2_series(prec: int | None = None) -> QSeries:
    """sum over odd n of sigma_1(n) q^n (the weight-2 generator at level 4)."""
    prec = default_prec() if prec is None else prec
    coeffs = [0] * (prec + 1)
    for n in range(1, prec + 1, 2):
        coeffs[n] = sigma(1, n)
    return QSeries(coeffs)


def eisenstein_level1(w: int, prec: int | None = None) -> QSeries:
    """Normalized level-1 Eisenstein series E_w = 1 - (2w/B_w) sum sigma q^n
    for w in {4, 6}; larger weights via monomials in E4, E6."""
    prec = default_prec() if prec is None else prec
    if w == 0:
        return QSeries([1], prec=prec)
    if w == 4:
        return QSeries([1] + [240 * sigma(3, n) for n in range(1, prec + 1)])
    if w == 6:
        return QSeries([1] + [-504 * sigma(5, n) for n in range(1, prec + 1)])
    if w == 8:
        return eisenstein_level1(4, prec) ** 2
    if w == 10:
        return eisenstein_level1(4, prec) * eisenstein_level1(6, prec)
    if w == 14:
        return eisenstein_level1(4, prec) ** 2 * eisenstein_level1(6, prec)
    raise ValueError("unsupported Eisenstein weight %d" % w)


def delta_series(prec: int | None = None) -> QSeries:
    """q prod (1-q^n)^24, via the pentagonal number expansion."""
    prec = default_prec() if prec is None else prec
    euler = [0] * (prec + 1)
    j = 0
    while True:
        e1 = j * (3 * j - 1) // 2
        e2 = j * (3 * j + 1) // 2
        if e1 > prec and e2 > prec:
            break
        s = -1 if j % 2 else 1
        if e1 <= prec:
            euler[e1] += s
        if j and e2 <= prec:
            euler[e2] += s
        j += 1
    phi = QSeries(euler)
    return (phi**24).shift(1)


def standard_series(name: str, prec: int | None = None) -> QSeries:
    prec = default_prec() if prec is None else prec
    table = {
        "theta": lambda: theta_series(prec),
        "F": lambda: weight2_series(prec),
        "E4": lambda: eisenstein_level1(4, prec),
        "E6": lambda: eisenstein_level1(6, prec),
        "delta": lambda: delta_series(prec),
    }
    if name not in table:
        raise ValueError("unknown series %r" % name)
    return table[name]()


def eigenform_level1(w: int, prec: int | None = None) -> QSeries:
    """The normalized cusp eigenform of level 1 for the one-dimensional
    weights (12, 16, 18, 20, 22, 26)."""
    prec = default_prec() if prec is None else prec
    if dim_cusp_level1(w) != 1:
        raise ValueError("level-1 cusp space of weight %d is not a line" % w)
    return delta_series(prec) * eisenstein_level1(w - 12, prec)


# ---------------------------------------------------------------------------
# plus space machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfIntForm:
    """Weight k + 1/2 form given through its integral q-expansion."""

    k: int
    level: int
    series: QSeries
    plus_flag: bool = False

    def coeff(self, m: int):
        return self.series.get(m, 0)

    @property
    def prec(self) -> int:
        return self.series.prec


def in_plus_class(m: int, k: int) -> bool:
    """(-1)^k m = 0, 1 mod 4 (and m >= 0)."""
    return m >= 0 and ((-1) ** (k % 2) * m) % 4 in (0, 1)


def plus_project(g, k: int):
    """Zero all coefficients outside the plus-supported residue classes."""
    if isinstance(g, HalfIntForm):
        return HalfIntForm(g.k, g.level, plus_project(g.series, k), True)
    coeffs = [c if in_plus_class(m, k) else 0
              for m, c in enumerate(g.coeffs)]
    return QSeries(coeffs, den=g.den, prec=g.prec)


def U_op(a: int, g: QSeries) -> QSeries:
    """Coefficient reindexing c(m) -> c(a m); truncation drops to prec // a."""
    if a < 1:
        raise ValueError("U operator needs a positive index")
    n = g.prec // a
    return QSeries([g.coeffs[a * m] for m in range(n + 1)], den=g.den, prec=n)


def U_k_op(a2: int, g: QSeries, k: int) -> QSeries:
    """U(a^2) followed by the plus projection."""
    r = isqrt(a2)
    if r * r != a2:
        raise ValueError("U_k operator expects a square index")
    return plus_project(U_op(a2, g), k)


def halfint_basis(k: int, prec: int | None = None) -> list[QSeries]:
    """Monomials theta^a F^b with a + 4b = 2k + 1 spanning weight k + 1/2 at
    level 4."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    prec = default_prec() if prec is None else prec
    th = theta_series(prec)
    f = weight2_series(prec)
    out = []
    fb = QSeries([1], prec=prec)
    for b in range(0, (2 * k + 1) // 4 + 1):
        a = 2 * k + 1 - 4 * b
        out.append(th**a * fb)
        fb = fb * f
    return out


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    return basis


def plus_space_basis(k: int, prec: int | None = None,
                     cusp: bool = False) -> list[HalfIntForm]:
    """Level-4 plus space (optionally cusp) forms from the monomial basis by
    exact linear algebra; output normalized so the first nonzero coefficient
    is 1."""
    prec = default_prec() if prec is None else prec
    basis = halfint_basis(k, prec)
    ncols = len(basis)
    rows = []
    if cusp:
        rows.append([b.coeffs[0] for b in basis])
    for m in range(prec + 1):
        if not in_plus_class(m, k):
            rows.append([b.coeffs[m] for b in basis])
    sols = _nullspace(rows, ncols)
    out = []
    for vec in sols:
        coeffs = [sum(vec[j] * basis[j].coeffs[m] for j in range(ncols))
                  for m in range(prec + 1)]
        first = next((c for c in coeffs if c != 0), None)
        if first is not None:
            coeffs = [c / first for c in coeffs]
        out.append(HalfIntForm(k, 4, QSeries(coeffs), True))
    return out


def cusp_plus_eigenbasis(k: int, prec: int | None = None) -> list[HalfIntForm]:
    """Cusp forms in the level-4 plus space; the dimension is pinned against
    the level-1 cusp dimension in weight 2k."""
    prec = default_prec() if prec is None else prec
    out = plus_space_basis(k, prec, cusp=True)
    expected = dim_cusp_level1(2 * k)
    if len(out) != expected:
        raise ArithmeticError(
            "plus-space cusp dimension %d does not match the weight-%d "
            "level-1 cusp dimension %d" % (len(out), 2 * k, expected))
    return out


# ---------------------------------------------------------------------------
# Hecke action and sign-pattern operators
# ---------------------------------------------------------------------------

def hecke_halfint(p: int, g: HalfIntForm, k: int | None = None) -> HalfIntForm:
    """Coefficientwise Hecke action on a plus-space form:
    c(m) -> c(p^2 m) + ((-1)^k m | p) p^(k-1) c(m) + p^(2k-1) c(m / p^2),
    composed with the plus projection (only relevant at p = 2, where the
    operator is the rescaled index-4 reindexing followed by the projector)."""
    k = g.k if k is None else k
    s = g.series
    n = s.prec // (p * p)
    out = []
    for m in range(n + 1):
        if g.plus_flag and not in_plus_class(m, k):
            out.append(0)
            continue
        val = s.coeffs[p * p * m]
        sym = kronecker_symbol((-1) ** (k % 2) * m, p) if m else 0
        if sym:
            val += sym * p ** (k - 1) * s.coeffs[m]
        if m % (p * p) == 0:
            val += p ** (2 * k - 1) * s.coeffs[m // (p * p)]
        out.append(val)
    return HalfIntForm(g.k, g.level, QSeries(out), g.plus_flag)


def hecke_eigenvalue(p: int, g: HalfIntForm, k: int | None = None):
    """Eigenvalue ratio at the first nonzero coefficient; asserts the full
    eigen relation to the available precision."""
    tg = hecke_halfint(p, g, k)
    m0 = next((m for m in range(tg.prec + 1) if g.coeff(m) != 0), None)
    if m0 is None:
        raise ValueError("zero form has no eigenvalue")
    lam = Fraction(tg.coeff(m0)) / Fraction(g.coeff(m0))
    for m in range(tg.prec + 1):
        if Fraction(tg.coeff(m)) != lam * Fraction(g.coeff(m)):
            raise ArithmeticError("not an eigenform at p=%d (m=%d)" % (p, m))
    return lam


def P_op(p: int, g: HalfIntForm, k: int, eta_p: int) -> HalfIntForm:
    """Sign-pattern projector to level 4p:
    c(m) -> (1 + eta ((-1)^k m | p)) (c(m) + eta p^k c(m / p^2))."""
    if eta_p not in (1, -1):
        raise ValueError("eta must be +-1")
    s = g.series
    out = []
    for m in range(s.prec + 1):
        sym = kronecker_symbol((-1) ** (k % 2) * m, p) if m else 0
        factor = 1 + eta_p * sym
        if factor == 0:
            out.append(0)
            continue
        val = s.coeffs[m]
        if m % (p * p) == 0:
            val += eta_p * p**k * s.coeffs[m // (p * p)]
        out.append(factor * val)
    return HalfIntForm(g.k, g.level * p, QSeries(out), g.plus_flag)


def Q_op(ell: int, g: HalfIntForm, k: int) -> HalfIntForm:
    """Level-raising kernel operator to level 4*ell:
    c(m) -> c(ell^2 m) - ell^k ((-1)^k m | ell) c(m) - ell^(2k) c(m / ell^2),
    restricted to the plus-supported classes."""
    s = g.series
    n = s.prec // (ell * ell)
    out = []
    for m in range(n + 1):
        if not in_plus_class(m, k):
            out.append(0)
            continue
        val = s.coeffs[ell * ell * m]
        sym = kronecker_symbol((-1) ** (k % 2) * m, ell) if m else 0
        if sym:
            val -= sym * ell**k * s.coeffs[m]
        if m % (ell * ell) == 0:
            val -= ell ** (2 * k) * s.coeffs[m // (ell * ell)]
        out.append(val)
    return HalfIntForm(g.k, g.level * ell, QSeries(out), g.plus_flag)


def condition_sign_check(g: HalfIntForm, q: int, eta: int, k: int) -> bool:
    """All stored coefficients vanish on the residue classes with
    ((-1)^k m | q) = -eta."""
    for m in range(g.prec + 1):
        if g.coeff(m) and m:
            if kronecker_symbol((-1) ** (k % 2) * m, q) == -eta:
                return False
    return True


# ---------------------------------------------------------------------------
# Cohen Eisenstein numbers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CohenSeries:
    k: int
    values: tuple[Fraction, ...]

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]

    @property
    def prec(self) -> int:
        return len(self.values) - 1

    def as_form(self) -> HalfIntForm:
        return HalfIntForm(self.k, 4, QSeries(list(self.values)), True)


def cohen_value(k: int, n: int) -> Fraction:
    """H(k, n): the n-th coefficient of the weight k + 1/2 Eisenstein series
    in the plus space, through the quadratic L-value at 1 - k."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return zeta_minus(2 * k)
    if not in_plus_class(n, k):
        return Fraction(0)
    disc = fundamental_discriminant((-1) ** (k % 2) * n)
    _, f = fundamental_split(n, k)
    if f.denominator != 1:
        raise ArithmeticError("plus-supported index with fractional square part")
    f = f.numerator
    acc = Fraction(0)
    for d in divisors(f):
        md = moebius(d)
        if md:
            acc += md * kronecker_disc(disc, d) * d ** (k - 1) \
                * sigma(2 * k - 1, f // d)
    return dirichlet_L_minus(k, disc) * acc


def cohen_eisenstein(k: int, prec: int | None = None) -> CohenSeries:
    prec = default_prec() if prec is None else prec
    return CohenSeries(k, tuple(cohen_value(k, n) for n in range(prec + 1)))


# ---------------------------------------------------------------------------
# eigen sign pattern report
# ---------------------------------------------------------------------------

def eigen_sign_checks(g: HalfIntForm, f_coeffs, p: int, eps: int,
                      k: int) -> dict[str, bool]:
    """Report which of the coefficient-level sign conditions hold, to the
    available precision: the integral-weight coefficient pin
    c_f(p) = eps p^(k-1); the half-integral scaling
    c_g(p^2 m) = eps p^(k-1) c_g(m); and the vanishing of c_g on the classes
    where the square-class sign of (-1)^k m equals eps."""
    from .exact import square_class_sign_signed

    out = {}
    out["coefficient_pin"] = (len(f_coeffs) > p
                              and Fraction(f_coeffs[p]) == eps * p ** (k - 1))
    ok = True
    for m in range(1, g.prec // (p * p) + 1):
        if Fraction(g.coeff(p * p * m)) != eps * p ** (k - 1) * Fraction(g.coeff(m)):
            ok = False
            break
    out["scaling"] = ok
    ok = True
    for m in range(1, g.prec + 1):
        if g.coeff(m) and square_class_sign_signed(m, p, k) == eps:
            ok = False
            break
    out["vanishing"] = ok
    return out
