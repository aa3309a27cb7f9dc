"""The computable side of the one-level-density machinery:

* the smooth bump Phi_X (1 on the shrinking inner interval of (1, 2)),
* its lattice transform Phi~(t) = int int Phi(N(x + y w)) e~(-t(x + y w)) dx dy,
* the two-dimensional Poisson summation identity

      sum_{(c,6)=1} (c/n)_6 Phi(N(c)/X)
        = sum_{(m) | 6} mu(m) (m/n)_6 X/(N(m) N(n))
              sum_k g_6(k, n) Phi~( sqrt(N(k) X / (N(m) N(n))) ),

  checked numerically with both sides computed independently, and
* the prime sums S_M, S_R weighting (72c/pi)_6 against log N(pi)/sqrt(N(pi))
  and a test function phi^, computed both directly and through the recast
  (Poisson-dual) quadruple sum.

Transform evaluation: for w = -t(x + y w), (w - conj(w))/sqrt(-3) = -t y, so
the defining integral reduces to a plain Fourier integral in y; in polar
coordinates it is the Hankel form

    Phi~(t) = (2 pi / sqrt(3)) int_1^2 Phi(u) J_0( (4 pi/sqrt(3)) t sqrt(u) ) du,

which is the production path (a single smooth quadrature).  Both reductions
are validated against the defining double integral in the test suite.

Unit-orbit cancellation: summing any of the lattice sums above over the six
associates u k multiplies the summand by (u/n)_6, and sum_u (u/n)_6 = 0
unless (-w/n)_6 = 1, i.e. unless N(n) == 1 (mod 36).  Both sides of the
Poisson identity therefore vanish identically for every other modulus, and
the Poisson-dual prime sum only receives contributions from primes with
N(pi) == 1 (mod 36); the direct sums are computed without this shortcut, so
the agreement checks exercise it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, sqrt
from typing import Callable, Optional

import numpy as np
from scipy.special import j0

from .eisenstein import (
    Eisenstein,
    ONE,
    ONE_MINUS_OMEGA,
    TWO,
    enumerate_eprimary,
    eprimary_primes,
    factor,
    residue_system,
)
from .gauss import (
    _UNIT_PHASES,
    _chunked_sum,
    gauss_sum,
    gauss_sum_table,
    sextic_exponent_table,
)
from .symbols import sextic_symbol

_TWO_PI = 2 * math.pi
_HANKEL_FREQ = 4 * math.pi / sqrt(3.0)
_AREA_PER_NORM = _TWO_PI / sqrt(3.0)  # lattice points per unit of norm

# squarefree ideal divisors of (6): representatives and Moebius values
SIX_DIVISORS = (
    (ONE, 1),
    (TWO, -1),
    (ONE_MINUS_OMEGA, -1),
    (TWO * ONE_MINUS_OMEGA, 1),
)


# -- lattice enumeration ----------------------------------------------------


@lru_cache(maxsize=16)
def lattice_coords(bound: int, include_origin: bool = False):
    """(y1, y2, norm) int64 arrays over lattice points with norm <= bound."""
    bmax = isqrt(4 * bound // 3)
    chunks1 = []
    chunks2 = []
    for b in range(-bmax, bmax + 1):
        disc = 4 * bound - 3 * b * b
        if disc < 0:
            continue
        s = isqrt(disc)
        lo = -((s - b) // 2)
        hi = (s + b) // 2
        a = np.arange(lo, hi + 1, dtype=np.int64)
        chunks1.append(a)
        chunks2.append(np.full(a.shape, b, dtype=np.int64))
    y1 = np.concatenate(chunks1)
    y2 = np.concatenate(chunks2)
    n = y1 * y1 - y1 * y2 + y2 * y2
    keep = n <= bound
    if not include_origin:
        keep &= n > 0
    return y1[keep], y2[keep], n[keep]


def lattice_coprime_six(lo: float, hi: float):
    """(y1, y2, norm) over lattice points with lo < norm < hi and (c, 6) = 1
    (equivalently: odd norm not divisible by 3)."""
    y1, y2, n = lattice_coords(int(math.ceil(hi)))
    keep = (n.astype(float) > lo) & (n.astype(float) < hi) & (n % 2 == 1) & (n % 3 != 0)
    return y1[keep], y2[keep], n[keep]


@lru_cache(maxsize=16)
def lattice_sector_coords(bound: int):
    """(y1, y2, norm) over one representative per unit orbit: the sector
    {a >= 1, 0 <= b < a} meets every orbit {u k : u unit, k != 0} exactly
    once (the orbit count identity is asserted in the tests)."""
    y1, y2, n = lattice_coords(bound)
    keep = (y1 >= 1) & (y2 >= 0) & (y2 < y1)
    return y1[keep], y2[keep], n[keep]


# -- the bump and the test function ----------------------------------------


def _smoothstep(v: np.ndarray) -> np.ndarray:
    """C^infinity step: 0 for v <= 0, 1 for v >= 1, exp(-1/v)-glued between."""
    v = np.asarray(v, dtype=float)
    out = np.zeros_like(v)
    out[v >= 1] = 1.0
    mid = (v > 0) & (v < 1)
    x = v[mid]
    fa = np.exp(-1.0 / x)
    fb = np.exp(-1.0 / (1.0 - x))
    out[mid] = fa / (fa + fb)
    return out


@dataclass(frozen=True)
class BumpSpec:
    """A smooth bump supported on (1, 2), equal to 1 on (1 + 1/U, 2 - 1/U)
    (empty for U < 2), with derivative growth Phi^(j) = O(U^j)."""

    X: float
    U: float
    evaluator: Callable[[np.ndarray], np.ndarray]

    def __call__(self, t) -> np.ndarray:
        return self.evaluator(np.asarray(t, dtype=float))


def make_bump(X: float) -> BumpSpec:
    """The bump for scale X >= 16, with U = log log X."""
    if X < 16:
        raise ValueError("bump scale X must be at least 16")
    u = math.log(math.log(X))

    def evaluator(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return _smoothstep(u * (t - 1.0)) * _smoothstep(u * (2.0 - t))

    return BumpSpec(X=float(X), U=u, evaluator=evaluator)


@dataclass(frozen=True)
class TestFunctionSpec:
    """An even test-function transform phi^ supported in
    (-support_halfwidth, support_halfwidth)."""

    support_halfwidth: float
    fourier_evaluator: Callable[[np.ndarray], np.ndarray]

    def __call__(self, u) -> np.ndarray:
        return self.fourier_evaluator(np.asarray(u, dtype=float))


def default_test_function() -> TestFunctionSpec:
    """phi^(u) = exp(-1/(1-u^2)) on (-1, 1); halfwidth 1 < 45/43."""

    def fourier(u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        out = np.zeros_like(u)
        mid = np.abs(u) < 1.0
        out[mid] = np.exp(-1.0 / (1.0 - u[mid] ** 2))
        return out

    return TestFunctionSpec(support_halfwidth=1.0, fourier_evaluator=fourier)


# -- the transform ----------------------------------------------------------


def _gl_nodes(n: int, lo: float, hi: float):
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def phi_tilde(bump: BumpSpec, t, nodes: Optional[int] = None) -> np.ndarray:
    """Phi~(t) for t >= 0 (scalar or array), by the Hankel form.

    The node count tracks the Bessel oscillation across the support, about
    0.48 t cycles, so fixed Gauss-Legendre is accurate to ~1e-12 here.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t_arr < 0):
        raise ValueError("phi_tilde needs t >= 0")
    if nodes is None:
        nodes = max(96, int(8 * float(t_arr.max(initial=0.0))) + 64)
    u, w = _gl_nodes(nodes, 1.0, 2.0)
    phi_u = bump(u) * w
    vals = j0(_HANKEL_FREQ * np.sqrt(u)[None, :] * t_arr[:, None]) @ phi_u
    vals = _AREA_PER_NORM * vals
    return vals if np.ndim(t) else float(vals[0])


def phi_tilde_reduced(bump: BumpSpec, t: float, nodes: int = 400) -> float:
    """Phi~(t) through the e(-t y) reduction: integrate Phi over x first and
    then take the one-dimensional cosine transform in y."""
    ymax = sqrt(8.0 / 3.0)  # 3 y^2 / 4 < 2 on the support
    y, wy = _gl_nodes(nodes, 0.0, ymax)
    out = 0.0
    for yi, wi in zip(y, wy):
        wshift = 0.75 * yi * yi
        span = 2.0 - wshift
        if span <= 0:
            continue
        x, wx = _gl_nodes(nodes, -sqrt(span), sqrt(span))
        inner = float(np.dot(bump(x * x + wshift), wx))
        out += 2.0 * math.cos(_TWO_PI * t * yi) * inner * wi
    return out


def phi_tilde_defining(bump: BumpSpec, t: float, nodes: int = 260) -> complex:
    """The defining double integral with the full complex additive character
    e~(-t(x + y w)) evaluated through its definition (no reduction); the
    imaginary part must vanish for t >= 0."""
    x, wx = _gl_nodes(nodes, -2.0, 2.0)
    y, wy = _gl_nodes(nodes, -2.0, 2.0)
    xx, yy = np.meshgrid(x, y, indexing="ij")
    norms = xx * xx - xx * yy + yy * yy
    wgrid = np.outer(wx, wy)
    # z = -t(x + y w); (z - conj z)/sqrt(-3) computed with complex arithmetic
    omega = complex(-0.5, sqrt(3.0) / 2)
    z = -t * (xx + yy * omega)
    phase = (z - np.conj(z)) / (1j * sqrt(3.0))
    vals = bump(norms) * np.exp(2j * math.pi * phase) * wgrid
    return complex(vals.sum())


class PhiTildeTable:
    """A dense uniform-grid interpolant of Phi~ on [0, t_max], and the fitted
    decay envelopes C_j = max_t |Phi~(t)| t^j / U^(j-1) over t in [1, t_max].

    Linear interpolation on the default grid is accurate to ~1e-7 absolute
    (validated in the tests); evaluations beyond t_max return 0 and must be
    covered by the caller's tail estimate.
    """

    def __init__(self, bump: BumpSpec, t_max: float = 60.0, step: float = 0.004):
        self.bump = bump
        self.t_max = float(t_max)
        self.grid = np.arange(0.0, t_max + step, step)
        nodes = max(96, int(8 * t_max) + 64)
        vals = np.empty_like(self.grid)
        chunk = 4096
        for i in range(0, len(self.grid), chunk):
            vals[i : i + chunk] = phi_tilde(bump, self.grid[i : i + chunk], nodes=nodes)
        self.values = vals
        self._envelope = np.abs(vals)

    def __call__(self, t: np.ndarray) -> np.ndarray:
        return np.interp(np.asarray(t, dtype=float), self.grid, self.values, right=0.0)

    def decay_constant(self, j: int) -> float:
        """C_j with |Phi~(t)| <= C_j U^(j-1) t^(-j) on the fitted range."""
        mask = self.grid >= 1.0
        t = self.grid[mask]
        return float(np.max(self._envelope[mask] * t ** j)) / self.bump.U ** (j - 1)

    def _beyond_grid(self, j: int) -> float:
        """Envelope integral 2 int_{t_max}^inf t |Phi~| dt via the C_j fit."""
        cj = self.decay_constant(j)
        return 2.0 * cj * self.bump.U ** (j - 1) * self.t_max ** (2 - j) / (j - 2)

    def tail_abs_sum(self, b_scale: float, k_cut: float) -> float:
        """Bound for sum over lattice k with N(k) > k_cut of
        |Phi~(sqrt(N(k)/b_scale))|: the lattice count per unit norm is
        2 pi / sqrt(3), so the sum is at most

            (2 pi/sqrt(3)) b_scale [ 2 int_{t_cut}^{t_max} t |Phi~(t)| dt
                                     + min_j 2 C_j U^(j-1) t_max^(2-j)/(j-2) ],

        with the on-grid part integrated from the tabulated envelope."""
        t_cut = sqrt(k_cut / b_scale)
        if t_cut >= self.t_max:
            t_cut = self.t_max
        mask = self.grid >= t_cut
        on_grid = 2.0 * float(np.trapz(self.grid[mask] * self._envelope[mask], self.grid[mask]))
        beyond = min(self._beyond_grid(j) for j in (3, 4, 5, 6, 8))
        return _AREA_PER_NORM * b_scale * (on_grid + beyond)

    def best_tail(self, b_scale: float, k_cut: float) -> float:
        return self.tail_abs_sum(b_scale, k_cut)


def unit_symbol_sum(n: Eisenstein) -> int:
    """sum over the six units u of (u/n)_6: 6 if N(n) == 1 (mod 36), else 0."""
    return 6 if n.norm() % 36 == 1 else 0


# -- Poisson summation check ------------------------------------------------


@dataclass(frozen=True)
class PoissonResult:
    n: Eisenstein
    x_scale: float
    lhs: complex
    rhs: complex
    tail: float
    fp_floor: float

    @property
    def diff(self) -> float:
        return abs(self.lhs - self.rhs)

    def holds(self, rtol: float = 1e-5) -> bool:
        return self.diff <= max(rtol * abs(self.lhs), self.tail + self.fp_floor)


def poisson_check(
    n: Eisenstein,
    x_scale: float,
    bump: Optional[BumpSpec] = None,
    t_cut: float = 26.0,
    table: Optional[PhiTildeTable] = None,
) -> PoissonResult:
    """Both sides of the Poisson identity for an E-primary modulus n.

    The left side is the direct lattice sum over the support of the bump; the
    right side truncates each k-sum at N(k) <= t_cut^2 * N(m) N(n) / X with a
    decay-based tail estimate.  For N(n) != 1 (mod 36) both sides vanish by
    unit-orbit cancellation and the check degenerates to a floating-point
    zero test (the fp_floor).
    """
    if n.norm() % 6 != 1:
        raise ValueError(f"{n} must be coprime to 6")
    bump = bump or make_bump(max(x_scale, 16.0))
    if table is None:
        table = _shared_table(bump)

    # left side: direct lattice sum
    y1, y2, norms = lattice_coprime_six(x_scale, 2.0 * x_scale)
    rs = residue_system(n)
    k_exp = sextic_exponent_table(n)[rs.index_of(y1, y2)].astype(np.int64)
    chi = np.where(k_exp < 0, 0j, _UNIT_PHASES[k_exp % 6])
    weights = bump(norms / x_scale)
    lhs = _chunked_sum(chi * weights)
    fp_floor = 1e-12 * float(np.sum(np.abs(weights))) + 1e-12

    # right side: dual sums over the squarefree ideal divisors of 6
    gtable = gauss_sum_table(n)
    gmax = float(np.max(np.abs(gtable)))
    rhs = 0j
    tail = 0.0
    nn = n.norm()
    for m, mu_m in SIX_DIVISORS:
        sym = sextic_symbol(m, n) if not n.is_unit() else None
        sym_z = 1j * 0 + (1.0 if sym is None else sym.to_complex())
        if sym_z == 0:
            continue
        b_scale = m.norm() * nn / x_scale
        k_cut = int(math.ceil(t_cut * t_cut * b_scale))
        ky1, ky2, knorm = lattice_coords(k_cut, include_origin=True)
        g_vals = gtable[rs.index_of(ky1, ky2)]
        phi_vals = table(np.sqrt(knorm.astype(float) / b_scale))
        coef = mu_m * sym_z * x_scale / (m.norm() * nn)
        rhs += coef * _chunked_sum(g_vals * phi_vals)
        tail += abs(coef) * gmax * table.best_tail(b_scale, k_cut)
        fp_floor += abs(coef) * gmax * 1e-12 * len(knorm)
    return PoissonResult(
        n=n, x_scale=x_scale, lhs=lhs, rhs=complex(rhs), tail=tail, fp_floor=fp_floor
    )


@lru_cache(maxsize=4)
def _shared_table_for(x: float, t_max: float) -> PhiTildeTable:
    return PhiTildeTable(make_bump(x), t_max=t_max)


def _shared_table(bump: BumpSpec, t_max: float = 60.0) -> PhiTildeTable:
    return _shared_table_for(bump.X, t_max)


# -- prime sums -------------------------------------------------------------


def _square_divisor_terms(c_fact) -> list[tuple[int, int]]:
    """(norm(l), mu(l)) over the squarefree ideals l with l^2 | c."""
    base = [(1, 1)]
    for pi, e in c_fact.primes:
        if e >= 2:
            q = pi.norm()
            base = base + [(nl * q, -ml) for nl, ml in base]
    return base


def _mz_rz(c_fact, z_bound: float) -> tuple[int, int]:
    """M_Z(c) = sum_{l^2 | c, N(l) <= Z} mu(l) and the complementary R_Z(c)."""
    mz = rz = 0
    for nl, ml in _square_divisor_terms(c_fact):
        if nl <= z_bound:
            mz += ml
        else:
            rz += ml
    return mz, rz


@dataclass(frozen=True)
class PrimeSumResult:
    s_m: complex
    s_r: complex
    prime_count: int
    c_count: int


def prime_sum_direct(
    x_scale: float,
    y_bound: float,
    test_fn: Optional[TestFunctionSpec] = None,
    bump: Optional[BumpSpec] = None,
    z_bound: Optional[float] = None,
) -> PrimeSumResult:
    """S_M and S_R by the defining triple sums: lattice c with (c, 6) = 1,
    E-primary primes pi with N(pi) <= Y, weights
    log N(pi)/sqrt(N(pi)) * phi^(log N(pi)/log X) and the symbol (72c/pi)_6.

    Z defaults to log^5 X (at desk scales Z^2 > 2X, making R_Z identically
    zero -- squares l^2 | c with N(l) > Z cannot fit below N(c) < 2X).
    """
    test_fn = test_fn or default_test_function()
    bump = bump or make_bump(max(x_scale, 16.0))
    if z_bound is None:
        z_bound = math.log(x_scale) ** 5

    y1, y2, norms = lattice_coprime_six(x_scale, 2.0 * x_scale)
    weights = bump(norms / x_scale)
    mz = np.empty(len(norms), dtype=np.int64)
    rz = np.empty(len(norms), dtype=np.int64)
    for i in range(len(norms)):
        f = factor(Eisenstein(int(y1[i]), int(y2[i])))
        mz[i], rz[i] = _mz_rz(f, z_bound)

    log_x = math.log(x_scale)
    s_m = 0j
    s_r = 0j
    primes = eprimary_primes(int(y_bound))
    c72_1 = 72 * y1
    c72_2 = 72 * y2
    for pi in primes:
        q = pi.norm()
        coeff = math.log(q) / sqrt(q) * float(test_fn(math.log(q) / log_x))
        if coeff == 0.0:
            continue
        rs = residue_system(pi)
        k_exp = sextic_exponent_table(pi)[rs.index_of(c72_1, c72_2)].astype(np.int64)
        chi = np.where(k_exp < 0, 0j, _UNIT_PHASES[k_exp % 6])
        s_m += coeff * _chunked_sum(chi * (mz * weights))
        s_r += coeff * _chunked_sum(chi * (rz * weights))
    return PrimeSumResult(
        s_m=complex(s_m), s_r=complex(s_r), prime_count=len(primes), c_count=len(norms)
    )


@dataclass(frozen=True)
class DualSumResult:
    s_m: complex
    tail: float
    blocks: int
    skipped_blocks: int


def prime_sum_dual(
    x_scale: float,
    y_bound: float,
    test_fn: Optional[TestFunctionSpec] = None,
    bump: Optional[BumpSpec] = None,
    z_bound: Optional[float] = None,
    t_cut: float = 22.0,
    table: Optional[PhiTildeTable] = None,
) -> DualSumResult:
    """S_M through the recast quadruple sum

        X sum_{N(l) <= Z} mu(l)/N(l)^2 sum_{(m)|6} mu(m)/N(m) sum_{k != 0}
          sum_{N(pi) <= Y} log N(pi)/N(pi)^(3/2) conj((72^5 k m^5 l^4 / pi)_6)
          g_6(pi) phi^(log N(pi)/log X) Phi~( sqrt(N(k) X / (N(m l^2 pi))) ).

    The l-sum is truncated at min(Z, sqrt(2X)) exactly: for N(l)^2 > 2X the
    corresponding direct-side c-sum is empty, so those dual terms vanish
    identically.  Primes with N(pi) != 1 (mod 36) contribute exactly zero by
    unit-orbit cancellation and are skipped; every retained k-sum is truncated
    at N(k) <= t_cut^2 * N(m l^2 pi)/X with its tail estimate accumulated.
    """
    test_fn = test_fn or default_test_function()
    bump = bump or make_bump(max(x_scale, 16.0))
    if z_bound is None:
        z_bound = math.log(x_scale) ** 5
    if table is None:
        table = _shared_table(bump)
    z_eff = min(z_bound, sqrt(2.0 * x_scale))
    log_x = math.log(x_scale)

    ls = [
        l
        for l in enumerate_eprimary(int(z_eff))
        if l.is_unit() or factor(l).is_squarefree()
    ]
    primes = eprimary_primes(int(y_bound))

    total = 0j
    tail = 0.0
    blocks = 0
    skipped = 0
    for pi in primes:
        q = pi.norm()
        coeff_pi = math.log(q) / q ** 1.5 * float(test_fn(math.log(q) / log_x))
        if coeff_pi == 0.0:
            continue
        if unit_symbol_sum(pi) == 0:
            skipped += 1
            continue
        g6 = gauss_sum(6, ONE, pi).z
        rs = residue_system(pi)
        exp_table = sextic_exponent_table(pi)
        # one lattice pass per prime at the largest k range any block needs;
        # for the retained primes every unit symbol is 1, so one orbit
        # representative carries its whole orbit (factor 6)
        b_max = max(m.norm() * l.norm() ** 2 for m, _ in SIX_DIVISORS for l in ls) * q / x_scale
        k_cap = int(math.ceil(t_cut * t_cut * b_max))
        ky1, ky2, knorm = lattice_sector_coords(k_cap)
        k_exp = exp_table[rs.index_of(ky1, ky2)].astype(np.int64)
        chi_bar = 6.0 * np.where(k_exp >= 0, np.conj(_UNIT_PHASES[k_exp % 6]), 0j)
        order = np.argsort(knorm, kind="stable")
        chi_bar = chi_bar[order]
        knorm_sorted = knorm[order]
        sqrt_norm = np.sqrt(knorm_sorted.astype(float))

        for l in ls:
            from_l = 1 if l.is_unit() else (1 if len(factor(l).primes) % 2 == 0 else -1)
            if pi.divides(l ** 4) and not l.is_unit():
                continue  # symbol vanishes: pi | l
            for m, mu_m in SIX_DIVISORS:
                blocks += 1
                b_scale = m.norm() * l.norm() ** 2 * q / x_scale
                k_cut = t_cut * t_cut * b_scale
                hi = int(np.searchsorted(knorm_sorted, k_cut, side="right"))
                lead = (72 ** 5) * m ** 5 * l ** 4
                k_lead = exp_table[rs.index_of(*_coords_mod(lead, pi))]
                if k_lead < 0:
                    continue
                sym_const = complex(np.conj(_UNIT_PHASES[int(k_lead)]))
                coef = (
                    x_scale
                    * from_l
                    / l.norm() ** 2
                    * mu_m
                    / m.norm()
                    * coeff_pi
                    * sym_const
                    * g6
                )
                phi_vals = table(sqrt_norm[:hi] / sqrt(b_scale))
                total += coef * _chunked_sum(chi_bar[:hi] * phi_vals)
                tail += abs(coef) * table.best_tail(b_scale, k_cut)
    return DualSumResult(s_m=complex(total), tail=tail, blocks=blocks, skipped_blocks=skipped)


def _coords_mod(x: Eisenstein, modulus: Eisenstein) -> tuple[int, int]:
    r = x % modulus
    return r.a, r.b
