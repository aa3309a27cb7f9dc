"""Truncated Dirichlet series of sextic Gauss sums,

    h(r, s; chi) = sum_{n E-primary, (n, r) = 1} chi(n) g_6(r, n) / N(n)^s,

in the region of absolute convergence Re(s) > 3/2 (term norms are at most
N(n)^(1/2 - sigma) by the Gauss-sum modulus law), together with numeric
verification of two finite families of identities:

* a Moebius sieve that removes a squarefree coprimality condition f from the
  summation, expressing h(r, f, s; chi) through twisted series h(a^4 r, s;
  psi_a chi) over the divisors a | f.  Writing f = pi_1 ... pi_k and expanding
  one prime at a time via g_6(r, pi^h n') = 0 unless h = 1, each extraction
  step contributes chi(pi) g_6((prev)^4 r, pi) N(pi)^(-s) and twists the
  series by psi_pi, so the divisor a = pi_{i_1} .. pi_{i_m} (canonical order)
  carries the ordered coefficient

      mu(a) chi(a) prod_m [ psi_{pi_{i_1}..pi_{i_{m-1}}}(pi_{i_m})
                            g_6((pi_{i_1}..pi_{i_{m-1}})^4 r, pi_{i_m}) ]
                            N(a)^(-s);

  the exponent 4 is forced by conj((pi^k/n')_6) = (pi/n')_6^2 at k = 4, the
  same shift j -> 4 - j that drives the finite transformation identities
  below.

* the finite Gauss-sum transformations (no truncation involved):

      g_6(a pi^j,     pi^(j+1) n') = g_6(pi^j,     pi^(j+1)) conj((a/pi^(j+1))_6)
                                       psi_{pi^(j+1)}(n') g_6(a pi^(4-j), n'),
      g_6(a pi^(4-j), pi^(5-j) n') = g_6(pi^(4-j), pi^(5-j)) conj((a/pi^(5-j))_6)
                                       psi_{pi^(5-j)}(n') g_6(a pi^j,     n'),

  for an E-primary prime pi, E-primary n' coprime to pi, (a, 6 pi n') = 1 and
  1 <= j <= 4.

Only the twists needed here are implemented: products of the quadratic
characters psi_a, i.e. n -> (-1)^(eps (N(n)-1)/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import pi as _PI
from math import sqrt

from .eisenstein import (
    Eisenstein,
    ONE,
    enumerate_eprimary,
    factor,
    is_coprime,
    is_e_primary,
    is_prime,
)
from .gauss import ComplexValue, gauss_sum
from .symbols import psi, sextic_symbol

# #{E-primary n coprime to anything : N(n) <= T} <= C_COUNT * T; the true
# density is pi/(3*sqrt(3)) * 1/2, doubled again for safety at small T.
C_COUNT = 1.1 * (_PI / (3 * sqrt(3.0))) * 2


@dataclass(frozen=True)
class Twist:
    """The quadratic family n -> (-1)^(eps (N(n)-1)/2) of trivial-infinite-type
    characters modulo 36 (eps in {0, 1}); closed under the products that the
    Moebius sieve generates."""

    eps: int = 0

    @classmethod
    def trivial(cls) -> "Twist":
        return cls(0)

    @classmethod
    def psi_a(cls, a: Eisenstein) -> "Twist":
        return cls(((a.norm() - 1) // 2) % 2)

    def __mul__(self, other: "Twist") -> "Twist":
        return Twist(self.eps ^ other.eps)

    def __call__(self, n: Eisenstein) -> int:
        if self.eps and ((n.norm() - 1) // 2) % 2:
            return -1
        return 1


@dataclass(frozen=True)
class HSeriesQuery:
    """A truncated evaluation request for h(r, *, s; chi).

    coprimality adds the extra condition (n, coprimality) = 1 (the f of
    h(r, f, s; chi) or the alpha of h_alpha); truncation is the norm bound on
    the summation variable.
    """

    r: Eisenstein
    s: complex
    twist: Twist = Twist.trivial()
    coprimality: Eisenstein = ONE
    truncation: int = 10_000

    def __post_init__(self):
        if self.s.real < 1.5:
            raise ValueError("h-series evaluated only for Re(s) >= 3/2")


def tail_bound(B: int, sigma: float) -> float:
    """Crude bound for sum_{N(n) > B} N(n)^(1/2 - sigma) over E-primary n,
    via the linear ideal count: C (B^(3/2-sigma)/(sigma-3/2) + B^(1/2-sigma)).
    Infinite at sigma = 3/2 exactly."""
    if sigma < 1.5:
        raise ValueError("tail bound requires sigma >= 3/2")
    if sigma == 1.5:
        return float("inf")
    return C_COUNT * (B ** (1.5 - sigma) / (sigma - 1.5) + B ** (0.5 - sigma))


def h_truncated(q: HSeriesQuery) -> tuple[ComplexValue, float]:
    """Partial sum of the defining series up to the truncation bound, plus the
    tail bound.  All terms are summed honestly; the vanishing of g_6(r, n) on
    non-squarefree n coprime to r is an output of the computation, not an
    assumption."""
    total = 0j
    err = 0.0
    for n in enumerate_eprimary(q.truncation):
        if not is_coprime(n, q.r):
            continue
        if not q.coprimality.is_unit() and not is_coprime(n, q.coprimality):
            continue
        g = gauss_sum(6, q.r, n)
        w = q.twist(n) / n.norm() ** q.s
        total += g.z * w
        err += g.err * abs(w)
    return ComplexValue.of(total, err), tail_bound(q.truncation, q.s.real)


@dataclass(frozen=True)
class MobiusCheckResult:
    lhs: ComplexValue
    rhs: ComplexValue
    tail: float

    @property
    def discrepancy(self) -> float:
        return abs(self.lhs.z - self.rhs.z)

    def holds(self) -> bool:
        return self.discrepancy <= self.tail + self.lhs.err + self.rhs.err


def mobius_identity_check(
    r: Eisenstein,
    f: Eisenstein,
    s: complex,
    B: int,
    twist: Twist = Twist.trivial(),
) -> MobiusCheckResult:
    """Both sides of the sieve identity for h(r, f, s; chi), truncated at B.

    Requires f squarefree and coprime to 6 r.  The combined tail bound covers
    the truncation of the left side and of every divisor term on the right.
    """
    if not is_coprime(r, f):
        raise ValueError("need (r, f) = 1")
    ff = factor(f)
    if ff.r1 or ff.r2:
        raise ValueError("f must be coprime to 6")
    if not ff.is_squarefree():
        raise ValueError("f must be squarefree")
    primes = [p for p, _ in ff.primes]

    lhs, lhs_tail = h_truncated(
        HSeriesQuery(r=r, s=s, twist=twist, coprimality=f, truncation=B)
    )

    rhs = ComplexValue(0.0, 0.0, 0.0)
    tail = lhs_tail
    for size in range(len(primes) + 1):
        for sub in combinations(primes, size):
            coef = complex(1.0 if size % 2 == 0 else -1.0)
            prefix = ONE
            sub_twist = twist
            for p in sub:
                step = twist(p) * gauss_sum(6, prefix ** 4 * r, p).z
                if not prefix.is_unit():
                    step *= psi(prefix, p)
                coef *= step / p.norm() ** s
                prefix = prefix * p
                sub_twist = sub_twist * Twist.psi_a(p)
            term, term_tail = h_truncated(
                HSeriesQuery(r=prefix ** 4 * r, s=s, twist=sub_twist, truncation=B)
            )
            rhs = rhs + term * ComplexValue.of(coef)
            tail += abs(coef) * term_tail
    return MobiusCheckResult(lhs=lhs, rhs=rhs, tail=tail)


def gauss_transform_check(
    a: Eisenstein,
    pi: Eisenstein,
    j: int,
    nprime: Eisenstein,
    second: bool = False,
) -> tuple[ComplexValue, ComplexValue]:
    """Both sides of the finite transformation identities, by direct summation.

    With second=False the modulus on the left is pi^(j+1) n', with second=True
    it is pi^(5-j) n' (the companion identity).  Preconditions: pi an
    E-primary prime, n' E-primary with (n', pi) = 1, (a, 6 pi n') = 1,
    1 <= j <= 4.
    """
    if not 1 <= j <= 4:
        raise ValueError("j must be in 1..4")
    if not (is_prime(pi) and is_e_primary(pi)):
        raise ValueError(f"{pi} must be an E-primary prime")
    if not is_e_primary(nprime):
        raise ValueError(f"{nprime} must be E-primary")
    if not is_coprime(nprime, pi):
        raise ValueError("need (n', pi) = 1")
    if a.norm() % 6 != 1 or not (is_coprime(a, pi) and is_coprime(a, nprime)):
        raise ValueError("need (a, 6 pi n') = 1")
    if second:
        jj = 4 - j
    else:
        jj = j
    modulus_power = pi ** (jj + 1)
    lhs = gauss_sum(6, a * pi ** jj, modulus_power * nprime)
    rhs = (
        gauss_sum(6, pi ** jj, modulus_power)
        * ComplexValue.of(sextic_symbol(a, modulus_power).conj().to_complex())
        * ComplexValue.of(complex(psi(modulus_power, nprime)))
        * gauss_sum(6, a * pi ** (4 - jj), nprime)
    )
    return lhs, rhs
