"""Gauss sums g_j(r, n) over Z[w] and the identities they satisfy.

The additive character is e~(z) = e((z - conj(z)) / sqrt(-3)); for z = x/n the
exponent is exactly rational: writing x * conj(n) = p + q*w one has
(z - conj(z)) / sqrt(-3) = q / N(n), so every term of a Gauss sum is a root of
unity of order N(n) and the only floating-point step is the final exp.

    g_j(r, n) = sum_{x mod n} (x/n)_j e~(r x / n),      g_j(n) = g_j(1, n).

Sums run over a Smith-normal-form residue system and are reduced in fixed
deterministic chunks, so results are bit-stable.  |g_6(n)| = sqrt(N(n)) for
squarefree n and 0 otherwise; prime-power values g_6(pi^k, pi^l) follow an
eight-branch table reproduced by prime_power_table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .eisenstein import (
    Eisenstein,
    ONE,
    e_primary_associate,
    factor,
    is_prime,
    moebius,
    residue_system,
)
from .symbols import SYMBOL_ONE, SymbolValue, symbol

_EPS = np.finfo(float).eps
_CHUNK = 4096  # fixed reduction chunk, keeps parallel/serial sums bit-identical

# the six units (-w)^k as complex numbers
_UNIT_PHASES = np.exp(-1j * np.pi * np.arange(6) / 3.0)


@dataclass(frozen=True)
class ComplexValue:
    """A complex number with an accumulated absolute-error budget."""

    re: float
    im: float
    err: float = 0.0

    @classmethod
    def of(cls, z: complex, err: float = 0.0) -> "ComplexValue":
        return cls(float(z.real), float(z.imag), float(err))

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return abs(self.z)

    def __add__(self, other: "ComplexValue") -> "ComplexValue":
        z = self.z + other.z
        return ComplexValue.of(z, self.err + other.err + 2 * _EPS * abs(z))

    def __sub__(self, other: "ComplexValue") -> "ComplexValue":
        z = self.z - other.z
        return ComplexValue.of(z, self.err + other.err + 2 * _EPS * abs(z))

    def __mul__(self, other: "ComplexValue") -> "ComplexValue":
        z = self.z * other.z
        err = (
            abs(self.z) * other.err
            + abs(other.z) * self.err
            + self.err * other.err
            + 2 * _EPS * abs(z)
        )
        return ComplexValue.of(z, err)

    def scaled(self, c: float) -> "ComplexValue":
        return ComplexValue.of(self.z * c, self.err * abs(c) + 2 * _EPS * abs(self.z * c))

    def conj(self) -> "ComplexValue":
        return ComplexValue(self.re, -self.im, self.err)

    def agrees_with(self, other: "ComplexValue", tol: float = 0.0) -> bool:
        """Equality up to the combined error budget (at least tol)."""
        return abs(self.z - other.z) <= max(self.err + other.err, tol)


def e_tilde(x: Eisenstein, n: Eisenstein) -> ComplexValue:
    """e~(x/n) through the exact rational exponent q/N(n), q = (x conj(n)).b."""
    if n.is_zero():
        raise ZeroDivisionError("e~ needs a nonzero denominator")
    nn = n.norm()
    q = (x * n.conj()).b % nn
    z = complex(math.cos(math.tau * q / nn), math.sin(math.tau * q / nn))
    return ComplexValue.of(z, 4 * _EPS)


def _chunked_sum(terms: np.ndarray) -> complex:
    """Sum in fixed-size chunks, in index order."""
    total = 0j
    for i in range(0, len(terms), _CHUNK):
        total += complex(np.sum(terms[i : i + _CHUNK]))
    return total


def _vec_round_div(p: np.ndarray, n: int) -> np.ndarray:
    # round-half-up is fine here: any nearest rounding keeps norm(r) <= 3/4 n
    return (2 * p + n) // (2 * n)


def _vec_mod(y1: np.ndarray, y2: np.ndarray, pi: Eisenstein):
    """Reduce a + b*w arrays mod pi via nearest-lattice-point division."""
    u, v = pi.a, pi.b
    n = pi.norm()
    c, d = u - v, -v  # conj(pi)
    p = y1 * c - y2 * d
    q = y1 * d + y2 * c - y2 * d
    q1 = _vec_round_div(p, n)
    q2 = _vec_round_div(q, n)
    return y1 - (q1 * u - q2 * v), y2 - (q1 * v + q2 * (u - v))


def _vec_mul_mod(a1, a2, b1, b2, pi: Eisenstein):
    bd = a2 * b2
    return _vec_mod(a1 * b1 - bd, a1 * b2 + a2 * b1 - bd, pi)


def _sextic_exponent_mod_prime(y1: np.ndarray, y2: np.ndarray, pi: Eisenstein) -> np.ndarray:
    """Exponent array k with (y/pi)_6 = (-w)^k, or -1 where pi | y."""
    q = pi.norm()
    e = (q - 1) // 6
    scale = max(abs(pi.a), abs(pi.b), abs(pi.a - pi.b), 1)
    big = int(np.abs(y1).max(initial=0)) + int(np.abs(y2).max(initial=0))
    if big * scale * 4 >= 2**62:  # exactness guard; reduced values are tiny
        y1 = y1.astype(object)
        y2 = y2.astype(object)
    y1, y2 = _vec_mod(y1, y2, pi)
    y1 = np.asarray(y1, dtype=np.int64)
    y2 = np.asarray(y2, dtype=np.int64)
    r1 = np.ones(y1.shape, dtype=np.int64)
    r2 = np.zeros(y1.shape, dtype=np.int64)
    b1, b2 = y1, y2
    while e:
        if e & 1:
            r1, r2 = _vec_mul_mod(r1, r2, b1, b2, pi)
        e >>= 1
        if e:
            b1, b2 = _vec_mul_mod(b1, b2, b1, b2, pi)
    out = np.full(y1.shape, -1, dtype=np.int8)
    n = pi.norm()
    c, d = pi.a - pi.b, -pi.b
    for k, u in enumerate(
        ((1, 0), (0, -1), (-1, -1), (-1, 0), (0, 1), (1, 1))  # (-w)^k coords
    ):
        w1 = r1 - u[0]
        w2 = r2 - u[1]
        p = w1 * c - w2 * d
        t = w1 * d + w2 * c - w2 * d
        hit = np.logical_and(p % n == 0, t % n == 0)
        out[hit] = k
    return out


@lru_cache(maxsize=None)
def sextic_exponent_table(n: Eisenstein) -> np.ndarray:
    """int8 array over the residue system mod n: exponent k of (x/n)_6 as
    (-w)^k, or -1 where the symbol vanishes.  Indexed by residue_system(n)."""
    if n.norm() % 6 != 1:
        raise ValueError(f"{n} is not coprime to 6")
    rs = residue_system(n)
    coords = rs.rep_coords()
    y1 = coords[:, 0]
    y2 = coords[:, 1]
    total = np.zeros(rs.size, dtype=np.int64)
    zero = np.zeros(rs.size, dtype=bool)
    for pi, e in factor(n).primes:
        k = _sextic_exponent_mod_prime(y1, y2, pi)
        zero |= k < 0
        total += e * np.where(k < 0, 0, k)
    out = (total % 6).astype(np.int8)
    out[zero] = -1
    return out


def character_values(n: Eisenstein, j: int = 6) -> np.ndarray:
    """Complex array of (x/n)_j over the residue system mod n."""
    k = sextic_exponent_table(n)
    vals = _UNIT_PHASES[(k.astype(np.int64) * (6 // j)) % 6]
    return np.where(k < 0, 0j, vals)


def gauss_sum(j: int, r: Eisenstein, n: Eisenstein) -> ComplexValue:
    """g_j(r, n) by direct summation over the residue system mod n."""
    if j not in (2, 3, 6):
        raise ValueError("j must be 2, 3 or 6")
    if n.norm() % 6 != 1:
        raise ValueError(f"{n} is not coprime to 6")
    if n.is_unit():
        return ComplexValue(1.0, 0.0, 0.0)
    rs = residue_system(n)
    nn = rs.size
    chi = character_values(n, j)
    coords = rs.rep_coords()
    w = r * n.conj()
    alpha, beta = w.a, w.b
    if max(abs(alpha), abs(beta)) < 2**38 and int(np.abs(coords).max()) < 2**24:
        y1 = coords[:, 0]
        y2 = coords[:, 1]
        t = (alpha * y2 + beta * y1 - beta * y2) % nn
    else:
        t = np.array(
            [(alpha * y2 + beta * y1 - beta * y2) % nn
             for y1, y2 in ((int(c[0]), int(c[1])) for c in coords)],
            dtype=np.int64,
        )
    roots = np.exp((2j * np.pi / nn) * np.arange(nn))
    total = _chunked_sum(chi * roots[t])
    return ComplexValue.of(total, (8 * nn + 8) * _EPS)


def gauss_sum_table(n: Eisenstein) -> np.ndarray:
    """g_6(rho, n) for every residue class rho mod n, indexed like the
    residue system.  Direct summation; used by the Poisson dual sums."""
    rs = residue_system(n)
    nn = rs.size
    chi = character_values(n, 6)
    coords = rs.rep_coords().astype(object)
    y1 = coords[:, 0]
    y2 = coords[:, 1]
    c, d = n.conj().a, n.conj().b
    # t[rho, x] = b-coefficient of (rho * x * conj(n)), mod N(n)
    out = np.empty(nn, dtype=complex)
    roots = np.exp((2j * np.pi / nn) * np.arange(nn))
    for idx in range(nn):
        ra, rb = int(y1[idx]), int(y2[idx])
        # rho * x for all residues x
        bd = rb * y2
        p1 = ra * y1 - bd
        p2 = ra * y2 + rb * y1 - bd
        t = ((p1 * d + p2 * c - p2 * d) % nn).astype(np.int64)
        out[idx] = _chunked_sum(chi * roots[t])
    return out


def root_number(c: Eisenstein) -> ComplexValue:
    """g_6(c) / sqrt(N(c)); has modulus 1 when c is squarefree."""
    if moebius(c) == 0:
        raise ValueError(f"{c} is not squarefree; the root number degenerates")
    g = gauss_sum(6, ONE, c)
    return g.scaled(1.0 / math.sqrt(c.norm()))


_MAX_PRIME_POWER_NORM = 130_000  # admits 7^6, the smallest norm reaching all branches


def prime_power_table(
    pi: Eisenstein, k: int, l: int, max_norm: int = _MAX_PRIME_POWER_NORM
) -> tuple[ComplexValue, ComplexValue]:
    """g_6(pi^k, pi^l) computed directly, alongside the closed-form branch:

        l = k+1:  N^k * { g_6(pi), g_3(pi), g_2(pi), (-1/pi)_3 conj(g_3(pi)),
                          (-1/pi)_6 conj(g_6(pi)), -1 }  as k mod 6 = 0..5
        k >= l, l == 0 (mod 6):  euler_phi(pi^l) = N^(l-1) (N-1)
        otherwise: 0.
    """
    if k < 0 or l < 1:
        raise ValueError("need k >= 0 and l >= 1")
    if not is_prime(pi):
        raise ValueError(f"{pi} is not prime")
    q = pi.norm()
    if q ** l > max_norm:
        raise ValueError(f"norm {q ** l} exceeds budget {max_norm}")
    computed = gauss_sum(6, pi ** k, pi ** l)
    if l == k + 1:
        scale = float(q) ** k
        m = k % 6
        if m == 0:
            pred = gauss_sum(6, ONE, pi).scaled(scale)
        elif m == 1:
            pred = gauss_sum(3, ONE, pi).scaled(scale)
        elif m == 2:
            pred = gauss_sum(2, ONE, pi).scaled(scale)
        elif m == 3:
            s = symbol(Eisenstein(-1), pi, 3).to_complex()
            pred = gauss_sum(3, ONE, pi).conj().scaled(scale) * ComplexValue.of(s)
        elif m == 4:
            s = symbol(Eisenstein(-1), pi, 6).to_complex()
            pred = gauss_sum(6, ONE, pi).conj().scaled(scale) * ComplexValue.of(s)
        else:
            pred = ComplexValue(-scale, 0.0, 0.0)
    elif k >= l and l % 6 == 0:
        pred = ComplexValue(float(q) ** (l - 1) * (q - 1), 0.0, 0.0)
    else:
        pred = ComplexValue(0.0, 0.0, 0.0)
    return computed, pred


def multiplicativity_pair(
    j: int, r: Eisenstein, n1: Eisenstein, n2: Eisenstein
) -> tuple[ComplexValue, ComplexValue]:
    """Both sides of g_j(r, n1 n2) = (n2/n1)_j (n1/n2)_j g_j(r, n1) g_j(r, n2)
    for coprime n1, n2; the left side is summed directly over n1*n2 so the
    identity is genuinely tested, never assumed."""
    lhs = gauss_sum(j, r, n1 * n2)
    s = (symbol(n2, n1, j) * symbol(n1, n2, j)).to_complex()
    rhs = gauss_sum(j, r, n1) * gauss_sum(j, r, n2) * ComplexValue.of(s)
    return lhs, rhs


def twist_pair(
    j: int, r: Eisenstein, s: Eisenstein, n: Eisenstein
) -> tuple[ComplexValue, ComplexValue]:
    """Both sides of g_j(r s, n) = conj((s/n)_j) g_j(r, n) for (s, n) = 1."""
    lhs = gauss_sum(j, r * s, n)
    rhs = gauss_sum(j, r, n) * ComplexValue.of(symbol(s, n, j).conj().to_complex())
    return lhs, rhs
