"""Exact arithmetic in the ring of Eisenstein integers Z[w], w = exp(2*pi*i/3).

Elements are a + b*w in the basis {1, w} with w^2 = -1 - w.  The norm form is
N(a + b*w) = a^2 - a*b + b^2, the six units are +-1, +-w, +-w^2, and the small
primes are 2 (inert) and 1 - w (ramified, 3 = -w^2 * (1-w)^2).  All arithmetic
is over arbitrary-precision integers; nothing here ever rounds.

An element coprime to 6 is *primary* when a != 0 (mod 3) and b == 0 (mod 3),
and *E-primary* when additionally

    a + b == 1 (mod 4)   if b is even,
    b     == 1 (mod 4)   if a is even,
    a     == 3 (mod 4)   if a and b are both odd.

Exactly one associate of every element coprime to 6 is E-primary, and products
of E-primary elements are E-primary; E-primary elements are therefore the
canonical generators of ideals coprime to 6.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator, Optional

from sympy import factorint, isprime
from sympy.ntheory.residue_ntheory import sqrt_mod


def _round_div(a: int, b: int) -> int:
    """Round a/b to the nearest integer, ties away from zero.  b must be > 0."""
    if a >= 0:
        return (a + b // 2) // b
    return -((-a + b // 2) // b)


class Eisenstein:
    """An Eisenstein integer a + b*w, immutable and hashable."""

    __slots__ = ("a", "b")

    a: int
    b: int

    def __init__(self, a: int, b: int = 0) -> None:
        object.__setattr__(self, "a", int(a))
        object.__setattr__(self, "b", int(b))

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("Eisenstein integers are immutable")

    # -- basic structure ---------------------------------------------------

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def conj(self) -> "Eisenstein":
        """Complex conjugate: conj(a + b*w) = (a - b) - b*w."""
        return Eisenstein(self.a - self.b, -self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_rational(self) -> bool:
        return self.b == 0

    def key(self) -> tuple[int, int, int]:
        """Deterministic sort key (norm, a, b) used everywhere a set is listed."""
        return (self.norm(), self.a, self.b)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.a == other and self.b == 0
        if isinstance(other, Eisenstein):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __repr__(self) -> str:
        return f"Eisenstein({self.a}, {self.b})"

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}*w"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Eisenstein | int") -> "Eisenstein":
        other = _coerce(other)
        return Eisenstein(self.a + other.a, self.b + other.b)

    def __radd__(self, other: int) -> "Eisenstein":
        return self + other

    def __sub__(self, other: "Eisenstein | int") -> "Eisenstein":
        other = _coerce(other)
        return Eisenstein(self.a - other.a, self.b - other.b)

    def __rsub__(self, other: int) -> "Eisenstein":
        return (-self) + other

    def __neg__(self) -> "Eisenstein":
        return Eisenstein(-self.a, -self.b)

    def __mul__(self, other: "Eisenstein | int") -> "Eisenstein":
        other = _coerce(other)
        # (a + b*w)(c + d*w) = ac - bd + (ad + bc - bd) w, using w^2 = -1 - w
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return Eisenstein(a * c - bd, a * d + b * c - bd)

    def __rmul__(self, other: int) -> "Eisenstein":
        return self * other

    def __pow__(self, e: int) -> "Eisenstein":
        if e < 0:
            raise ValueError("negative powers only exist for units")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Eisenstein | int") -> tuple["Eisenstein", "Eisenstein"]:
        """Euclidean division: self = q*other + r with norm(r) < norm(other).

        The quotient rounds self/other to the nearest lattice point coordinate-
        wise in the basis {1, w}; the fractional part then has norm <= 3/4.
        """
        other = _coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[w]")
        w = self * other.conj()
        q = Eisenstein(_round_div(w.a, n), _round_div(w.b, n))
        return q, self - q * other

    def __floordiv__(self, other: "Eisenstein | int") -> "Eisenstein":
        return divmod(self, other)[0]

    def __mod__(self, other: "Eisenstein | int") -> "Eisenstein":
        return divmod(self, other)[1]

    def divides(self, other: "Eisenstein | int") -> bool:
        """True iff self | other exactly."""
        other = _coerce(other)
        n = self.norm()
        if n == 0:
            return other.is_zero()
        w = other * self.conj()
        return w.a % n == 0 and w.b % n == 0

    def exact_div(self, other: "Eisenstein | int") -> "Eisenstein":
        """self / other, raising if the division is not exact."""
        other = _coerce(other)
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError(f"{other} does not divide {self}")
        return q

    def to_complex(self) -> complex:
        return self.a + self.b * OMEGA_COMPLEX

    def to_json(self) -> dict[str, int]:
        return {"a": self.a, "b": self.b}


def _coerce(x: "Eisenstein | int") -> Eisenstein:
    if isinstance(x, Eisenstein):
        return x
    if isinstance(x, int):
        return Eisenstein(x, 0)
    raise TypeError(f"cannot coerce {type(x).__name__} to Eisenstein")


ZERO = Eisenstein(0, 0)
ONE = Eisenstein(1, 0)
OMEGA = Eisenstein(0, 1)
OMEGA2 = Eisenstein(-1, -1)
ONE_MINUS_OMEGA = Eisenstein(1, -1)
TWO = Eisenstein(2, 0)
SQRT_MINUS_3 = Eisenstein(1, 2)  # (1 + 2w)^2 = -3

OMEGA_COMPLEX = complex(-0.5, 0.8660254037844386467637231707529362)

# Powers of -w: the six units as (-w)^k for k = 0..5.
MINUS_OMEGA_POWERS = (
    ONE,                 # (-w)^0
    Eisenstein(0, -1),   # (-w)^1 = -w
    OMEGA2,              # (-w)^2 = w^2
    Eisenstein(-1, 0),   # (-w)^3 = -1
    OMEGA,               # (-w)^4 = w
    Eisenstein(1, 1),    # (-w)^5 = -w^2
)
UNITS = MINUS_OMEGA_POWERS

_UNIT_EXPONENT = {(u.a, u.b): k for k, u in enumerate(MINUS_OMEGA_POWERS)}


def unit_exponent(u: Eisenstein) -> int:
    """Exponent k with u = (-w)^k; raises for non-units."""
    try:
        return _UNIT_EXPONENT[(u.a, u.b)]
    except KeyError:
        raise ValueError(f"{u} is not a unit of Z[w]") from None


def gcd(x: Eisenstein, y: Eisenstein) -> Eisenstein:
    """A greatest common divisor of x and y (determined up to a unit)."""
    x, y = _coerce(x), _coerce(y)
    while not y.is_zero():
        x, y = y, x % y
    return x


def is_coprime(x: Eisenstein, y: Eisenstein) -> bool:
    return gcd(x, y).is_unit()


def is_primary(n: Eisenstein) -> bool:
    """True iff n == +-1 (mod 3), i.e. a != 0 (mod 3) and b == 0 (mod 3)."""
    return n.a % 3 != 0 and n.b % 3 == 0


def is_e_primary(n: Eisenstein) -> bool:
    """True iff n is primary, coprime to 6, and satisfies the mod-4 case split."""
    if n.norm() % 2 == 0 or not is_primary(n):
        return False
    a, b = n.a, n.b
    if b % 2 == 0:
        return (a + b) % 4 == 1
    if a % 2 == 0:
        return b % 4 == 1
    return a % 4 == 3


def e_primary_associate(n: Eisenstein) -> tuple[Eisenstein, Eisenstein]:
    """The unique unit u with u*n E-primary; returns (u, u*n).

    Requires n != 0 and (norm(n), 6) = 1.
    """
    if n.is_zero():
        raise ValueError("zero has no E-primary associate")
    if n.norm() % 6 != 1:
        raise ValueError(f"{n} is not coprime to 6")
    hits = [(u, u * n) for u in UNITS if is_e_primary(u * n)]
    if len(hits) != 1:
        raise ArithmeticError(f"associate count {len(hits)} != 1 for {n}")
    return hits[0]


@dataclass(frozen=True)
class Factorization:
    """unit * 2^r1 * (1-w)^r2 * prod(pi_i^e_i) with E-primary primes pi_i.

    The prime list is sorted by (norm, a, b) and the listed primes are pairwise
    non-associate, so the form is canonical.
    """

    unit: Eisenstein
    r1: int
    r2: int
    primes: tuple[tuple[Eisenstein, int], ...]

    def value(self) -> Eisenstein:
        """Multiply the factorization back out."""
        x = self.unit * TWO ** self.r1 * ONE_MINUS_OMEGA ** self.r2
        for pi, e in self.primes:
            x = x * pi ** e
        return x

    def is_squarefree(self) -> bool:
        return (
            self.r1 <= 1
            and self.r2 <= 1
            and all(e <= 1 for _, e in self.primes)
        )

    def num_prime_factors(self) -> int:
        """Number of distinct prime divisors, counting 2 and 1-w."""
        return (self.r1 > 0) + (self.r2 > 0) + len(self.primes)


@lru_cache(maxsize=None)
def _split_rational_prime(p: int) -> Eisenstein:
    """An E-primary prime above the rational prime p == 1 (mod 3)."""
    s = sqrt_mod(-3, p)
    x = (s - 1) * pow(2, -1, p) % p  # root of x^2 + x + 1 (mod p)
    pi = gcd(Eisenstein(p, 0), Eisenstein(-x, 1))  # w == x (mod pi)
    assert pi.norm() == p, (p, pi)
    return e_primary_associate(pi)[1]


def is_prime(n: Eisenstein) -> bool:
    """Primality in Z[w]: norm a rational prime, or a unit multiple of an
    inert rational prime q == 2 (mod 3)."""
    nn = n.norm()
    if nn <= 1:
        return False
    if isprime(nn):
        return True
    q = isqrt(nn)
    return q * q == nn and q % 3 == 2 and isprime(q) and Eisenstein(q, 0).divides(n)


def factor(n: Eisenstein) -> Factorization:
    """Exact factorization of n != 0 into unit * 2^r1 * (1-w)^r2 * primes.

    Rational primes p == 2 (mod 3) stay prime; p == 1 (mod 3) split via a root
    of x^2 + x + 1 (mod p) and a gcd; 3 ramifies as -w^2 (1-w)^2.
    """
    if n.is_zero():
        raise ValueError("cannot factor zero")
    m = n
    rational = factorint(n.norm())
    r1 = 0
    r2 = rational.pop(3, 0)
    for _ in range(r2):
        m = m.exact_div(ONE_MINUS_OMEGA)
    primes: list[tuple[Eisenstein, int]] = []
    for p, e in sorted(rational.items()):
        if p % 3 == 2:
            # inert: the exponent of p in the norm is twice its exponent in n
            assert e % 2 == 0, (n, p, e)
            k = e // 2
            if p == 2:
                r1 = k
                m = m.exact_div(TWO ** k)
            else:
                pi = e_primary_associate(Eisenstein(p, 0))[1]
                primes.append((pi, k))
                m = m.exact_div(Eisenstein(p, 0) ** k)
        else:
            pi = _split_rational_prime(p)
            v = 0
            while pi.divides(m):
                m = m.exact_div(pi)
                v += 1
            if v:
                primes.append((pi, v))
            if v < e:
                pib = e_primary_associate(pi.conj())[1]
                primes.append((pib, e - v))
                m = m.exact_div(pib ** (e - v))
    assert m.is_unit(), (n, m)
    primes.sort(key=lambda t: t[0].key())
    return Factorization(unit=m, r1=r1, r2=r2, primes=tuple(primes))


def moebius(n: Eisenstein) -> int:
    """Moebius function on Z[w]: 0 on non-squarefree n, else (-1)^(#primes)."""
    f = factor(n)
    if not f.is_squarefree():
        return 0
    return -1 if f.num_prime_factors() % 2 else 1


def lattice_range(bound: int) -> Iterator[Eisenstein]:
    """All nonzero n with norm(n) <= bound, in raster order over (b, a)."""
    if bound < 1:
        return
    bmax = isqrt(4 * bound // 3)
    for b in range(-bmax, bmax + 1):
        disc = 4 * bound - 3 * b * b
        if disc < 0:
            continue
        s = isqrt(disc)
        lo = -((s - b) // 2)
        hi = (s + b) // 2
        for a in range(lo, hi + 1):
            if a * a - a * b + b * b <= bound and (a or b):
                yield Eisenstein(a, b)


def enumerate_eprimary(
    bound: int, coprime_to: Optional[Eisenstein] = None
) -> list[Eisenstein]:
    """The E-primary n with norm(n) <= bound and (n, coprime_to) = 1, sorted
    by (norm, a, b).  There is exactly one such n per ideal coprime to 6 (and
    to coprime_to) of norm <= bound."""
    out = [n for n in lattice_range(bound) if is_e_primary(n)]
    if coprime_to is not None and not coprime_to.is_unit():
        out = [n for n in out if is_coprime(n, coprime_to)]
    out.sort(key=Eisenstein.key)
    return out


def eprimary_primes(bound: int) -> list[Eisenstein]:
    """E-primary primes of norm <= bound, sorted by (norm, a, b)."""
    out: list[Eisenstein] = []
    for p in range(2, bound + 1):
        if not isprime(p):
            continue
        if p % 3 == 1:
            pi = _split_rational_prime(p)
            out.append(pi)
            out.append(e_primary_associate(pi.conj())[1])
        elif p != 3 and p != 2 and p * p <= bound:
            out.append(e_primary_associate(Eisenstein(p, 0))[1])
    out.sort(key=Eisenstein.key)
    return out


# -- residue systems -------------------------------------------------------


def _snf_2x2(m: list[list[int]]) -> tuple[list[list[int]], list[list[int]], int, int]:
    """Smith normal form of an integer 2x2 matrix with nonzero determinant.

    Returns (P, Q, d1, d2) with P*m*Q = diag(d1, d2), P and Q unimodular and
    d1 | d2.
    """
    a = [row[:] for row in m]
    p = [[1, 0], [0, 1]]
    q = [[1, 0], [0, 1]]

    def row_op(i, j, k):  # row_i -= k * row_j  (applied to a and p)
        for t in range(2):
            a[i][t] -= k * a[j][t]
            p[i][t] -= k * p[j][t]

    def col_op(i, j, k):  # col_i -= k * col_j  (applied to a and q)
        for t in range(2):
            a[t][i] -= k * a[t][j]
            q[t][i] -= k * q[t][j]

    def swap_rows():
        a[0], a[1] = a[1], a[0]
        p[0], p[1] = p[1], p[0]

    def swap_cols():
        for t in range(2):
            a[t][0], a[t][1] = a[t][1], a[t][0]
            q[t][0], q[t][1] = q[t][1], q[t][0]

    while True:
        if a[0][0] == 0:
            if a[1][0] != 0 or a[1][1] != 0:
                swap_rows()
            if a[0][0] == 0:
                swap_cols()
        # clear first column and row by Euclidean steps
        changed = True
        while changed:
            changed = False
            if a[1][0] != 0:
                if abs(a[1][0]) < abs(a[0][0]):
                    swap_rows()
                row_op(1, 0, a[1][0] // a[0][0])
                changed = True
                continue
            if a[0][1] != 0:
                if abs(a[0][1]) < abs(a[0][0]):
                    swap_cols()
                col_op(1, 0, a[0][1] // a[0][0])
                changed = True
        if a[1][0] == 0 and a[0][1] == 0:
            if a[1][1] % a[0][0] != 0:
                # fold a22 into the pivot position and continue
                row_op(0, 1, -1)
                continue
            break
    if a[0][0] < 0:
        a[0][0] *= -1
        for t in range(2):
            p[0][t] *= -1
    if a[1][1] < 0:
        a[1][1] *= -1
        for t in range(2):
            p[1][t] *= -1
    return p, q, a[0][0], a[1][1]


class ResidueSystem:
    """A complete residue system for Z[w] / (n), n != 0.

    Built from the Smith normal form of the multiplication-by-n matrix in the
    basis {1, w}: Z[w]/(n) ~ Z/d1 x Z/d2 with d1 | d2 and d1*d2 = norm(n).
    Representatives are x_{ij} = Pinv @ (i, j) for 0 <= i < d1, 0 <= j < d2,
    and the class index of y is (P @ y) mod (d1, d2).
    """

    __slots__ = ("n", "d1", "d2", "P", "Pinv", "size")

    def __init__(self, n: Eisenstein) -> None:
        if n.is_zero():
            raise ZeroDivisionError("no residue system mod 0")
        u, v = n.a, n.b
        # columns: coordinates of n*1 and n*w
        m = [[u, -v], [v, u - v]]
        p, _q, d1, d2 = _snf_2x2(m)
        det_p = p[0][0] * p[1][1] - p[0][1] * p[1][0]
        assert det_p in (1, -1)
        pinv = [
            [det_p * p[1][1], -det_p * p[0][1]],
            [-det_p * p[1][0], det_p * p[0][0]],
        ]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d1", d1)
        object.__setattr__(self, "d2", d2)
        object.__setattr__(self, "P", p)
        object.__setattr__(self, "Pinv", pinv)
        object.__setattr__(self, "size", d1 * d2)
        assert d1 * d2 == n.norm()

    def __setattr__(self, name, value):
        raise AttributeError("ResidueSystem is immutable")

    def representatives(self) -> list[Eisenstein]:
        out = []
        for i in range(self.d1):
            for j in range(self.d2):
                out.append(
                    Eisenstein(
                        self.Pinv[0][0] * i + self.Pinv[0][1] * j,
                        self.Pinv[1][0] * i + self.Pinv[1][1] * j,
                    )
                )
        return out

    def rep_coords(self):
        """(norm(n), 2) int64 array of representative coordinates, in index order."""
        import numpy as np

        i = np.repeat(np.arange(self.d1, dtype=np.int64), self.d2)
        j = np.tile(np.arange(self.d2, dtype=np.int64), self.d1)
        y1 = self.Pinv[0][0] * i + self.Pinv[0][1] * j
        y2 = self.Pinv[1][0] * i + self.Pinv[1][1] * j
        return np.stack([y1, y2], axis=1)

    def index_of(self, y1, y2):
        """Flat residue index i*d2 + j of a + b*w; works on ints and arrays."""
        i = (self.P[0][0] * y1 + self.P[0][1] * y2) % self.d1
        j = (self.P[1][0] * y1 + self.P[1][1] * y2) % self.d2
        return i * self.d2 + j


@lru_cache(maxsize=4096)
def residue_system(n: Eisenstein) -> ResidueSystem:
    return ResidueSystem(n)
