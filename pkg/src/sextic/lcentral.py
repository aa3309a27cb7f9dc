"""Central values L(1/2, chi_c) by the approximate functional equation.

For squarefree c == 1 (mod 36) the sextic residue symbol chi_c = (./c)_6 is a
primitive Hecke character mod (c) of trivial infinite type, and

    L(1/2, chi_c) = sum_A chi_c(A) N(A)^(-1/2) V(2 pi N(A) / x)
                  + (g_6(c)/sqrt(N(c))) *
                    sum_A conj(chi_c)(A) N(A)^(-1/2) V(2 pi N(A) x / (3 N(c)))

for any x > 0, with smoothing V(xi) = erfc(sqrt(xi)) (the inverse Mellin
transform of Gamma(s + 1/2)/(Gamma(1/2) s) at the central point).

Ideals are enumerated through their unique generators 2^r1 (1-w)^r2 a with a
E-primary, and the character is evaluated honestly on generators:

    chi_c(A) = chi_c(2)^r1 * chi_c(1-w)^r2 * chi_c(a).

On this family chi_c(1-w) = 1 always, while chi_c(2) = (2/N(c))_Z is -1
whenever N(c) == 5 (mod 8) (e.g. c = 1 + 36w, N(c) = 1261).  Dropping the
r1-dependence would silently evaluate a different L-function there; the
x-independence of the two-sum expression above detects this immediately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.special import erfc, loggamma

from .eisenstein import (
    Eisenstein,
    ONE,
    ONE_MINUS_OMEGA,
    TWO,
    enumerate_eprimary,
    moebius,
    residue_system,
)
from .gauss import ComplexValue, _UNIT_PHASES, _chunked_sum, gauss_sum, sextic_exponent_table
from .symbols import SymbolValue, sextic_symbol

_TWO_PI = 2 * math.pi
_EPS = np.finfo(float).eps


def smoothing_v(xi: float) -> float:
    """V(xi) = erfc(sqrt(xi)) for xi > 0.

    V(xi) -> 1 as xi -> 0+ and V decays like e^(-xi); the closed form is
    validated against smoothing_v_contour in the test suite before anything
    is built on it.
    """
    if xi <= 0:
        raise ValueError("smoothing_v needs xi > 0")
    return float(erfc(math.sqrt(xi)))


def smoothing_v_contour(xi: float, half_width: float = 60.0, nodes: int = 4000) -> float:
    """Independent oracle: numerical Mellin-Barnes integral
    (1/2 pi i) int_(2) Gamma(s + 1/2)/Gamma(1/2) xi^(-s)/s ds
    along s = 2 + i t, |t| <= half_width, by Gauss-Legendre quadrature."""
    t, w = np.polynomial.legendre.leggauss(nodes)
    t = t * half_width
    w = w * half_width
    s = 2.0 + 1j * t
    integrand = np.exp(loggamma(s + 0.5) - loggamma(0.5)) * xi ** (-s) / s
    return float(np.real(np.sum(w * integrand)) / (2 * math.pi))


@dataclass(frozen=True)
class IdealTerm:
    """A nonzero ideal via its unique generator 2^r1 (1-w)^r2 a, a E-primary."""

    r1: int
    r2: int
    a: Eisenstein
    norm: int


@lru_cache(maxsize=8)
def _ideal_arrays(max_norm: int):
    """Vectorized ideal enumeration: arrays (norm, r1, r2, a1, a2) over all
    nonzero ideals of norm <= max_norm, sorted by (norm, r1, r2, a)."""
    eprim = enumerate_eprimary(max_norm)
    rows: list[tuple[int, int, int, int, int]] = []
    r1 = 0
    while 4 ** r1 <= max_norm:
        r2 = 0
        while 4 ** r1 * 3 ** r2 <= max_norm:
            scale = 4 ** r1 * 3 ** r2
            cap = max_norm // scale
            for a in eprim:
                if a.norm() > cap:
                    break
                rows.append((scale * a.norm(), r1, r2, a.a, a.b))
            r2 += 1
        r1 += 1
    rows.sort()
    arr = np.array(rows, dtype=np.int64).reshape(-1, 5)
    return arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3], arr[:, 4]


def ideal_terms(max_norm: int) -> list[IdealTerm]:
    """All nonzero ideals of norm <= max_norm, sorted by (norm, r1, r2, a)."""
    norms, r1, r2, a1, a2 = _ideal_arrays(max_norm)
    return [
        IdealTerm(int(r1[i]), int(r2[i]), Eisenstein(int(a1[i]), int(a2[i])), int(norms[i]))
        for i in range(len(norms))
    ]


def _require_admissible(c: Eisenstein) -> None:
    if (c.a - 1) % 36 != 0 or c.b % 36 != 0:
        raise ValueError(f"{c} is not congruent to 1 mod 36")
    if moebius(c) == 0:
        raise ValueError(f"{c} is not squarefree")


class IdealCharacter:
    """chi_c evaluated on ideals through their canonical generators, with a
    precomputed symbol table over the residue classes mod c."""

    __slots__ = ("c", "at_two", "at_one_minus_omega", "_rs", "_table")

    def __init__(self, c: Eisenstein) -> None:
        _require_admissible(c)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "at_two", sextic_symbol(TWO, c))
        object.__setattr__(self, "at_one_minus_omega", sextic_symbol(ONE_MINUS_OMEGA, c))
        object.__setattr__(self, "_rs", residue_system(c))
        object.__setattr__(self, "_table", sextic_exponent_table(c))

    def __setattr__(self, name, value):
        raise AttributeError("IdealCharacter is immutable")

    def exponents(self, y1: np.ndarray, y2: np.ndarray) -> np.ndarray:
        """Exponent array for (a/c)_6 at a = y1 + y2*w, -1 where it vanishes."""
        return self._table[self._rs.index_of(y1, y2)]

    def on_ideal(self, term: IdealTerm) -> SymbolValue:
        k = int(self.exponents(np.int64(term.a.a), np.int64(term.a.b)))
        val = SymbolValue(None if k < 0 else k)
        return val * self.at_two ** term.r1 * self.at_one_minus_omega ** term.r2


def chi_c_on_ideal(c: Eisenstein, term: IdealTerm) -> SymbolValue:
    """chi_c of the ideal 2^r1 (1-w)^r2 (a) for squarefree c == 1 (mod 36)."""
    return IdealCharacter(c).on_ideal(term)


@dataclass(frozen=True)
class CentralValueResult:
    value: ComplexValue
    x_used: float
    terms_first: int
    terms_second: int


def _cutoff_norm(scale: float, tol: float) -> int:
    """Smallest M with the analytic tail bound of sum_{N(A) > M} N^(-1/2)
    V(2 pi N / scale) below tol: the tail is at most
    c0 * M^(-1/2) * (scale / 2 pi) * exp(-2 pi M / scale) using V <= e^(-xi)."""
    c0 = math.sqrt(3.0) * math.pi / 9 * 2  # ideal density, doubled for safety
    m = max(4, int(scale / _TWO_PI))
    while c0 * (scale / _TWO_PI) * math.exp(-_TWO_PI * m / scale) / math.sqrt(m) > tol:
        m = int(m * 1.3) + 1
    return m


def l_central(
    c: Eisenstein, x: Optional[float] = None, tol: float = 1e-9
) -> CentralValueResult:
    """L(1/2, chi_c) for squarefree c == 1 (mod 36), N(c) > 1.

    The default x = sqrt(3 N(c)) balances the two sums; the result must not
    depend on x (that invariance is the module's self-test).  Each sum is
    truncated where its analytic tail bound drops below tol/4, and the tail
    bounds are folded into the error budget of the returned value.
    """
    _require_admissible(c)
    nc = c.norm()
    if nc <= 1:
        raise ValueError("the principal character c = 1 is excluded")
    if x is None:
        x = math.sqrt(3.0 * nc)
    if x <= 0:
        raise ValueError("x must be positive")
    chi = IdealCharacter(c)
    dual_scale = 3.0 * nc / x
    m1 = _cutoff_norm(x, tol / 4)
    m2 = _cutoff_norm(dual_scale, tol / 4)

    norms, r1, r2, a1, a2 = _ideal_arrays(max(m1, m2))
    k = chi.exponents(a1, a2).astype(np.int64)
    k2 = chi.at_two.k or 0
    krho = chi.at_one_minus_omega.k or 0
    vals = np.where(k < 0, 0j, _UNIT_PHASES[(k + k2 * r1 + krho * r2) % 6])
    inv_sqrt = 1.0 / np.sqrt(norms.astype(float))

    mask1 = norms <= m1
    mask2 = norms <= m2
    v1 = erfc(np.sqrt(_TWO_PI * norms[mask1] / x))
    v2 = erfc(np.sqrt(_TWO_PI * norms[mask2] / dual_scale))
    s1 = _chunked_sum(vals[mask1] * inv_sqrt[mask1] * v1)
    s2 = _chunked_sum(np.conj(vals[mask2]) * inv_sqrt[mask2] * v2)
    n1 = int(np.count_nonzero(mask1))
    n2 = int(np.count_nonzero(mask2))

    root = gauss_sum(6, ONE, c).scaled(1.0 / math.sqrt(nc))
    total = ComplexValue.of(s1, (n1 + n2) * 8 * _EPS) + root * ComplexValue.of(s2)
    total = ComplexValue(total.re, total.im, total.err + tol / 2)
    return CentralValueResult(
        value=total, x_used=float(x), terms_first=n1, terms_second=n2
    )
