"""First moment of L(1/2, chi_c) over squarefree c == 1 (mod 36).

The weighted empirical sum

    S(y) = sum*_{c == 1 (36)} L(1/2, chi_c) W(N(c)/y)

grows like A * What(1) * y with What(1) = int_0^infty W and an explicit
constant A.  The constant assembles from the residue c0 = sqrt(3) pi / 9 of
the Dedekind zeta function of Q(w) at 1, the ray class count #h_(36) = 108,
zeta_{Q(w)}(2), and a convergent Euler-type sum over the ideal decomposition
2^r1 (1-w)^r2 (a):

    A = c0 / (108 zeta_K(2)) *
        [sum over CONTRIBUTING r1] * [sum_{r2} 3^(-r2/2)] *
        (1 + 1/4)^(-1) (1 + 1/3)^(-1) *
        prod_{pi coprime to 6} (1 + (1 + N(pi)^(-1))^(-1) N(pi)^(-3) / (1 - N(pi)^(-3)))

Only ideal factors on which chi_c is constant (= 1) across the whole family
contribute to the mean.  chi_c((1-w)) = 1 and chi_c((a^6)) = 1 always, but
chi_c((2)) = (2/N(c))_Z equals -1 on the half of the family with
N(c) == 5 (mod 8) (it is a genuine quadratic character of c mod 8, not
constant on the congruence class c == 1 mod 36), so odd powers of (2) average
out and the r1-sum runs over even r1 only:

    sum_{r1 even} 2^(-r1) = 4/3.

The full series Z(0) with all r1 (geometric factor 2 instead of 4/3) is kept
as z_zero, with an independent direct-summation oracle for its Euler product.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt, sqrt
from typing import Callable, Optional

from scipy.integrate import quad
from scipy.special import zeta as hurwitz_zeta
from sympy import primerange

from .eisenstein import Eisenstein, factor, moebius
from .lcentral import CentralValueResult, l_central

C0_RESIDUE = sqrt(3.0) * math.pi / 9  # residue of zeta_{Q(w)} at s = 1
RAY_CLASS_COUNT_36 = 108

# density constant for tails of sums over E-primary elements (see hseries)
_C_EPRIMARY = 1.1 * (math.pi / (3 * sqrt(3.0)))


@dataclass(frozen=True)
class WeightSpec:
    """A smooth weight W: (0, inf) -> R, compactly supported in [lo, hi]."""

    name: str
    support: tuple[float, float]
    evaluator: Callable[[float], float]

    def __call__(self, x: float) -> float:
        lo, hi = self.support
        if x <= lo or x >= hi:
            return 0.0
        return self.evaluator(x)


def default_weight() -> WeightSpec:
    """The standard bump exp(-1/((x - 1/2)(3/2 - x))) on (1/2, 3/2)."""

    def bump(x: float) -> float:
        t = (x - 0.5) * (1.5 - x)
        return math.exp(-1.0 / t) if t > 0 else 0.0

    return WeightSpec(name="bump(1/2,3/2)", support=(0.5, 1.5), evaluator=bump)


def w_hat(weight: WeightSpec) -> float:
    """What(1) = int_0^infty W(x) dx by adaptive quadrature, abs error < 1e-10."""
    lo, hi = weight.support
    if hi <= lo:
        return 0.0
    val, est = quad(weight, lo, hi, epsabs=1e-12, limit=200)
    if est > 1e-10:
        raise ArithmeticError(f"quadrature error {est} above 1e-10")
    return float(val)


def zeta_k2() -> float:
    """zeta_{Q(w)}(2) = zeta(2) * L(2, chi_{-3}), the L-value through Hurwitz
    zetas: L(2, chi_{-3}) = (zeta(2, 1/3) - zeta(2, 2/3)) / 9."""
    l2 = (float(hurwitz_zeta(2, 1.0 / 3.0)) - float(hurwitz_zeta(2, 2.0 / 3.0))) / 9.0
    return math.pi ** 2 / 6 * l2


def prime_ideal_norms(bound: int) -> list[int]:
    """Norms of the prime ideals coprime to 6 with norm <= bound (split primes
    p == 1 mod 3 appear twice, inert q == 2 mod 3 once with norm q^2)."""
    norms: list[int] = []
    for p in primerange(2, bound + 1):
        if p % 3 == 1:
            norms.append(p)
            norms.append(p)
        elif p not in (2, 3) and p * p <= bound:
            norms.append(p * p)
    norms.sort()
    return norms


def eprimary_cubed_euler(prime_bound: int) -> tuple[float, float]:
    """The Euler product over prime ideals pi coprime to 6 of

        1 + (1 + N(pi)^(-1))^(-1) * N(pi)^(-3) / (1 - N(pi)^(-3)),

    truncated at N(pi) <= prime_bound, with a tail bound on the missing log."""
    if prime_bound < 1000:
        raise ValueError("prime_bound must be at least 10^3")
    value = 1.0
    for q in prime_ideal_norms(prime_bound):
        value *= 1.0 + (q ** -3 / (1 + 1.0 / q)) / (1 - q ** -3)
    # each missing factor is 1 + O(q^-3); ideals of norm <= T number <= cT
    tail_log = 2 * _C_EPRIMARY * 2.0 * prime_bound ** -2 / 2
    return value, value * tail_log


def eprimary_cubed_direct(norm_bound: int) -> tuple[float, float]:
    """Independent oracle for the same quantity by direct summation,

        sum_{a E-primary, N(a) <= norm_bound}
            N(a)^(-3) prod_{pi | a} (1 + N(pi)^(-1))^(-1),

    with a tail bound from the linear count of E-primary elements."""
    from .eisenstein import enumerate_eprimary

    total = 0.0
    for a in enumerate_eprimary(norm_bound):
        w = 1.0
        for pi, _ in factor(a).primes:
            w /= 1 + 1.0 / pi.norm()
        total += w / a.norm() ** 3
    tail = _C_EPRIMARY * (norm_bound ** -2 / 2 + norm_bound ** -3)
    return total, tail


GEOMETRIC_R2 = 1.0 / (1.0 - 3 ** -0.5)  # sum_{r2 >= 0} 3^(-r2/2)
LOCAL_SIX = (1 + 0.25) ** -1 * (1 + 1.0 / 3.0) ** -1


def z_zero(prime_bound: int = 100_000) -> tuple[float, float]:
    """Z(0) = [sum_{r1} 2^(-r1)] [sum_{r2} 3^(-r2/2)] (1+1/4)^(-1) (1+1/3)^(-1)
    * Euler product; the series this rearranges is checked by z_zero_direct."""
    euler, err = eprimary_cubed_euler(prime_bound)
    scale = 2.0 * GEOMETRIC_R2 * LOCAL_SIX
    return scale * euler, scale * err


def z_zero_direct(norm_bound: int = 10_000) -> tuple[float, float]:
    """Z(0) with the a-part summed directly over E-primary elements."""
    direct, tail = eprimary_cubed_direct(norm_bound)
    scale = 2.0 * GEOMETRIC_R2 * LOCAL_SIX
    return scale * direct, scale * tail


def constant_a(prime_bound: int = 100_000) -> tuple[float, float]:
    """The first-moment constant A with the even-r1 geometric factor 4/3
    (see the module docstring for why odd powers of (2) cannot contribute).

    Returns (A, error_estimate); requires prime_bound >= 10^3.
    """
    euler, err = eprimary_cubed_euler(prime_bound)
    geometric_r1_even = 1.0 / (1.0 - 0.25)  # sum over even r1 of 2^(-r1)
    scale = (
        C0_RESIDUE
        / (RAY_CLASS_COUNT_36 * zeta_k2())
        * geometric_r1_even
        * GEOMETRIC_R2
        * LOCAL_SIX
    )
    return scale * euler, scale * err


@dataclass(frozen=True)
class MomentReport:
    y: float
    tol: float
    per_c: tuple[tuple[Eisenstein, complex], ...]
    empirical_sum: complex
    main_term: float
    ratio: complex
    nonvanishing_count: int
    count_total: int
    weight_name: str = "bump(1/2,3/2)"
    constant: float = 0.0
    w_hat_value: float = 0.0

    def to_dict(self) -> dict:
        return {
            "y": self.y,
            "tol": self.tol,
            "weight": self.weight_name,
            "constant_A": self.constant,
            "w_hat": self.w_hat_value,
            "per_c": [
                {
                    "a": c.a,
                    "b": c.b,
                    "norm": c.norm(),
                    "re_l": lv.real,
                    "im_l": lv.imag,
                }
                for c, lv in self.per_c
            ],
            "empirical_sum": {"re": self.empirical_sum.real, "im": self.empirical_sum.imag},
            "main_term": self.main_term,
            "ratio": {"re": self.ratio.real, "im": self.ratio.imag},
            "nonvanishing_count": self.nonvanishing_count,
            "count_total": self.count_total,
        }


def family_members(y: float, support: tuple[float, float]) -> list[Eisenstein]:
    """Squarefree c == 1 (mod 36) with N(c)/y inside the weight support,
    sorted by (norm, a, b)."""
    lo, hi = support
    hi_norm = y * hi
    r = int(2 * sqrt(hi_norm / 3.0) / 36) + 2
    out = []
    for beta in range(-r, r + 1):
        for alpha in range(-r, r + 1):
            c = Eisenstein(1 + 36 * alpha, 36 * beta)
            nc = c.norm()
            if nc <= 1:
                continue
            if lo * y < nc < hi * y and moebius(c) != 0:
                out.append(c)
    out.sort(key=Eisenstein.key)
    return out


def _one_l_value(args: tuple[Eisenstein, float, Optional[float]]) -> tuple[Eisenstein, complex]:
    c, tol, x = args
    return c, l_central(c, x=x, tol=tol).value.z


def first_moment(
    y: float,
    weight: Optional[WeightSpec] = None,
    tol: float = 1e-7,
    workers: int = 1,
    prime_bound: int = 100_000,
    z_exponent: float = 2.0 / 7.0,
) -> MomentReport:
    """The empirical first moment at scale y against its predicted main term.

    Enumerates the family, computes each L(1/2, chi_c) by the approximate
    functional equation, weights by W(N(c)/y), and reports the ratio to
    A * What(1) * y together with the count of |L| > 10 tol.

    Each L-value uses x = 3 N(c) / z with z = y^z_exponent, the split that
    makes the dual (root-number weighted) sum short: its contribution to the
    mean carries no main term, so keeping it small keeps the desk-scale
    variance of the ratio small.  The value itself is x-independent.
    """
    weight = weight or default_weight()
    members = family_members(y, weight.support)
    z = y ** z_exponent
    jobs = [(c, tol, 3.0 * c.norm() / z) for c in members]
    if workers > 1 and len(members) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pairs = list(pool.map(_one_l_value, jobs, chunksize=1))
        pairs.sort(key=lambda t: t[0].key())
    else:
        pairs = [_one_l_value(job) for job in jobs]

    total = 0j
    per_c = []
    nonvanishing = 0
    for c, lv in pairs:
        per_c.append((c, lv))
        total += lv * weight(c.norm() / y)
        if abs(lv) > 10 * tol:
            nonvanishing += 1

    a_const, _ = constant_a(prime_bound)
    what = w_hat(weight)
    main = a_const * what * y
    ratio = total / main if main else complex("nan")
    return MomentReport(
        y=y,
        tol=tol,
        per_c=tuple(per_c),
        empirical_sum=total,
        main_term=main,
        ratio=ratio,
        nonvanishing_count=nonvanishing,
        count_total=len(per_c),
        weight_name=weight.name,
        constant=a_const,
        w_hat_value=what,
    )
