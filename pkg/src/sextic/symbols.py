"""Power residue symbols (a/n)_j for j = 2, 3, 6 in Z[w].

Two independent routes are provided:

* ``symbol``            -- the definition: factor the modulus and evaluate
                           a^((N(pi)-1)/j) mod pi at each prime (the oracle);
* ``sextic_symbol``     -- a factorization-free Euclidean algorithm built on
                           sextic reciprocity and the supplementary laws for
                           the units, 1 - w and 2.

Values live in the cyclic group generated by -w (the sixth roots of unity),
encoded as SymbolValue.  For j = 3 values lie in <w> and for j = 2 in <-1>;
the compatibility (a/n)_6^2 = (a/n)_3 and (a/n)_6^3 = (a/n)_2 holds whenever
the sextic symbol is defined.

Supplementary laws used by the fast route, for E-primary n = a + b*w:

    (-w/n)_6    = (-w)^((N(n)-1)/6)
    ((1-w)/n)_2 = (a/3)_Z                    (Jacobi symbol over Z)
    (2/n)_2     = (2/N(n))_Z
    ((1-w)/n)_3 = w^((a-1)/3)    for n == 1 (mod 3), applied to -n otherwise
    (2/n)_3     = (n/2)_3 = the cube root of unity congruent to n mod 2

and the quadratic/cubic parts recombine into the sextic value through
(-1)^eps * w^delta = (-w)^(3*eps + 2*delta).
"""

from __future__ import annotations

from typing import Optional

from sympy import jacobi_symbol

from .eisenstein import (
    Eisenstein,
    MINUS_OMEGA_POWERS,
    ONE,
    ONE_MINUS_OMEGA,
    TWO,
    e_primary_associate,
    factor,
    is_e_primary,
    is_prime,
    unit_exponent,
)


class SymbolValue:
    """Zero, or a sixth root of unity (-w)^k."""

    __slots__ = ("k",)

    k: Optional[int]  # None encodes the zero value

    def __init__(self, k: Optional[int]) -> None:
        object.__setattr__(self, "k", None if k is None else k % 6)

    def __setattr__(self, name, value):
        raise AttributeError("SymbolValue is immutable")

    def is_zero(self) -> bool:
        return self.k is None

    def unit(self) -> Eisenstein:
        if self.k is None:
            raise ValueError("the zero symbol is not a unit")
        return MINUS_OMEGA_POWERS[self.k]

    def __mul__(self, other: "SymbolValue") -> "SymbolValue":
        if self.k is None or other.k is None:
            return SYMBOL_ZERO
        return SymbolValue(self.k + other.k)

    def __pow__(self, e: int) -> "SymbolValue":
        if self.k is None:
            return SYMBOL_ZERO if e else SYMBOL_ONE
        return SymbolValue(self.k * e)

    def conj(self) -> "SymbolValue":
        return self if self.k is None else SymbolValue(-self.k)

    def in_subgroup(self, j: int) -> bool:
        """True iff the value lies in <(-w)^(6/j)> (or is zero)."""
        return self.k is None or self.k % (6 // j) == 0

    def sign(self) -> int:
        """The value as an integer for quadratic symbols: 0, +1 or -1."""
        if self.k is None:
            return 0
        if self.k == 0:
            return 1
        if self.k == 3:
            return -1
        raise ValueError(f"{self} is not quadratic")

    def to_complex(self) -> complex:
        if self.k is None:
            return 0j
        return _UNIT_COMPLEX[self.k]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SymbolValue):
            return self.k == other.k
        if isinstance(other, Eisenstein):
            return self.k is not None and self.unit() == other
        if isinstance(other, int):
            if other == 0:
                return self.k is None
            return self.k is not None and self.unit() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("SymbolValue", self.k))

    def __repr__(self) -> str:
        return f"SymbolValue({self.k})"

    def __str__(self) -> str:
        if self.k is None:
            return "0"
        return _UNIT_NAMES[self.k]


_UNIT_NAMES = ("1", "-w", "w2", "-1", "w", "-w2")
_UNIT_COMPLEX = tuple(u.to_complex() for u in MINUS_OMEGA_POWERS)

SYMBOL_ZERO = SymbolValue(None)
SYMBOL_ONE = SymbolValue(0)
SYMBOL_MINUS_ONE = SymbolValue(3)

SYMBOL_BY_NAME = {name: SymbolValue(k) for k, name in enumerate(_UNIT_NAMES)}
SYMBOL_BY_NAME["0"] = SYMBOL_ZERO


def _pow_mod(base: Eisenstein, e: int, modulus: Eisenstein) -> Eisenstein:
    result = ONE % modulus
    base = base % modulus
    while e:
        if e & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        e >>= 1
    return result


def symbol_prime(a: Eisenstein, pi: Eisenstein, j: int = 6) -> SymbolValue:
    """(a/pi)_j at a prime pi with (N(pi), 6) = 1, by Euler's criterion:
    the unique u in <(-w)^(6/j)> with a^((N(pi)-1)/j) == u (mod pi)."""
    if j not in (2, 3, 6):
        raise ValueError("j must be 2, 3 or 6")
    q = pi.norm()
    if q % 6 != 1:
        raise ValueError(f"{pi} is not coprime to 6")
    if not is_prime(pi):
        raise ValueError(f"{pi} is not prime")
    if pi.divides(a):
        return SYMBOL_ZERO
    r = _pow_mod(a, (q - 1) // j, pi)
    step = 6 // j
    for k in range(0, 6, step):
        if pi.divides(r - MINUS_OMEGA_POWERS[k]):
            return SymbolValue(k)
    raise ArithmeticError(f"residue {r} mod {pi} matched no {j}-th root of unity")


def symbol(a: Eisenstein, n: Eisenstein, j: int = 6) -> SymbolValue:
    """(a/n)_j by multiplicative extension over the factorization of n.

    Requires (N(n), 6) = 1 and n != 0; equals 1 when n is a unit.  This is the
    reference oracle for the factorization-free route below.
    """
    if n.is_zero():
        raise ValueError("the symbol modulus must be nonzero")
    if n.norm() % 6 != 1:
        raise ValueError(f"{n} is not coprime to 6")
    if n.is_unit():
        return SYMBOL_ONE
    out = SYMBOL_ONE
    for pi, e in factor(n).primes:
        out = out * symbol_prime(a, pi, j) ** e
        if out.is_zero():
            return SYMBOL_ZERO
    return out


def _combine(eps: int, delta: int) -> int:
    """Exponent of (-w) for the sextic value with quadratic part (-1)^eps and
    cubic part w^delta."""
    return (3 * eps + 2 * delta) % 6


def _one_minus_omega_exponent(n: Eisenstein) -> int:
    """Exponent of (-w) in ((1-w)/n)_6 for E-primary n, via the supplementary
    laws; the cubic law is stated for n == 1 (mod 3) and applied to -n in the
    other primary class (the symbol is invariant under unit multiples of n)."""
    a = n.a
    eps = 0 if jacobi_symbol(a, 3) == 1 else 1
    if a % 3 == 1:
        delta = ((a - 1) // 3) % 3
    else:
        delta = ((-a - 1) // 3) % 3
    return _combine(eps, delta)


def _two_exponent(n: Eisenstein) -> int:
    """Exponent of (-w) in (2/n)_6 for E-primary n.  Quadratic part from
    (2/N(n))_Z, cubic part from cubic reciprocity against the primary prime 2:
    (2/n)_3 = (n/2)_3 = the cube root of unity congruent to n mod 2."""
    eps = 0 if jacobi_symbol(2, n.norm()) == 1 else 1
    pa, pb = n.a % 2, n.b % 2
    if (pa, pb) == (1, 0):  # n == 1 (mod 2)
        delta = 0
    elif (pa, pb) == (0, 1):  # n == w (mod 2)
        delta = 1
    else:  # n == 1 + w == -w^2 == w^2 (mod 2)
        delta = 2
    return _combine(eps, delta)


def sextic_symbol(a: Eisenstein, n: Eisenstein) -> SymbolValue:
    """(a/n)_6 without factoring a or n.

    Reduces a mod n, strips units and the powers of 1-w and 2 using the
    supplementary laws, normalizes the remainder to its E-primary associate
    and flips by sextic reciprocity with the sign
    (-1)^(((N(n)-1)/2) ((N(m)-1)/2)), iterating until the base is a unit.
    """
    if n.is_zero():
        raise ValueError("the symbol modulus must be nonzero")
    if n.norm() % 6 != 1:
        raise ValueError(f"{n} is not coprime to 6")
    if n.is_unit():
        return SYMBOL_ONE
    n = e_primary_associate(n)[1]
    k = 0
    # each reciprocity flip strictly shrinks the modulus norm
    for _ in range(4 * n.norm().bit_length() + 16):
        a = a % n
        if a.is_zero():
            return SYMBOL_ZERO
        nn = n.norm()
        u6 = (nn - 1) // 6  # exponent for the unit law (-w/n)_6 = (-w)^((N-1)/6)
        s = 0
        while ONE_MINUS_OMEGA.divides(a):
            a = a.exact_div(ONE_MINUS_OMEGA)
            s += 1
        t = 0
        while a.a % 2 == 0 and a.b % 2 == 0:
            a = a.exact_div(TWO)
            t += 1
        u, m = e_primary_associate(a)  # a = u^(-1) * m
        k += s * _one_minus_omega_exponent(n)
        k += t * _two_exponent(n)
        k -= unit_exponent(u) * u6
        if m.is_unit():
            return SymbolValue(k)
        # sextic reciprocity: (m/n) = (n/m) * (-1)^(((N(n)-1)/2)((N(m)-1)/2))
        if ((nn - 1) // 2) % 2 and ((m.norm() - 1) // 2) % 2:
            k += 3
        a, n = n, m
    raise ArithmeticError("sextic_symbol failed to terminate (internal bug)")


def fast_symbol(a: Eisenstein, n: Eisenstein, j: int = 6) -> SymbolValue:
    """(a/n)_j via the factorization-free sextic route and power compatibility
    (a/n)_j = (a/n)_6^(6/j)."""
    if j not in (2, 3, 6):
        raise ValueError("j must be 2, 3 or 6")
    return sextic_symbol(a, n) ** (6 // j)


def kronecker72c(c: Eisenstein, n: Eisenstein) -> SymbolValue:
    """The Kronecker symbol chi^(72c)(n) = (72c/n)_6 for (N(c), 6) = 1.

    Multiplicative in n, trivial on units, and equal to 1 when
    n == 1 (mod 72c); for squarefree non-unit c it is non-principal.
    """
    if c.norm() % 6 != 1:
        raise ValueError(f"{c} is not coprime to 6")
    return sextic_symbol(72 * c, n)


def psi(a: Eisenstein, c: Eisenstein) -> int:
    """The reciprocity sign psi_a(c) = (-1)^(((N(a)-1)/2)((N(c)-1)/2)),
    a quadratic Hecke character in c; symmetric in a and c."""
    na, nc = a.norm(), c.norm()
    if na % 6 != 1 or nc % 6 != 1:
        raise ValueError("psi requires both arguments coprime to 6")
    return -1 if ((na - 1) // 2) % 2 and ((nc - 1) // 2) % 2 else 1


def _ordered_prime_divisors(a: Eisenstein) -> tuple[Eisenstein, ...]:
    f = factor(a)
    if f.r1 or f.r2:
        raise ValueError(f"{a} is not coprime to 6")
    if not f.is_squarefree():
        raise ValueError(f"{a} is not squarefree")
    return tuple(pi for pi, _ in f.primes)


def chain_products(
    a: Eisenstein, j: int, primes: Optional[tuple[Eisenstein, ...]] = None
) -> tuple[SymbolValue, int]:
    """The products P_j(a) and Psi_j(a) over the distinct E-primary prime
    divisors pi_1, .., pi_k of squarefree a (canonical order unless an
    explicit ordering is supplied), for 1 <= j <= 4:

        P_j(a)   = prod_i conj( ((a / prod_{l<=i} pi_l)^j / pi_i^(j+1))_6 )
        Psi_j(a) = prod_{i<k} psi_{(pi_1 .. pi_i)^(j+1)}(pi_{i+1})

    Empty products are 1; Psi_j(a) = 1 when a is a unit or a prime.  The
    results do not depend on the ordering of the primes.
    """
    if not 1 <= j <= 4:
        raise ValueError("j must be in 1..4")
    if primes is None:
        primes = _ordered_prime_divisors(a)
    p_val = SYMBOL_ONE
    psi_val = 1
    lead = a
    prefix = ONE
    for i, pi in enumerate(primes):
        lead = lead.exact_div(pi)
        # ((lead^j) / pi^(j+1))_6 = (lead/pi)_6^(j(j+1))
        p_val = p_val * sextic_symbol(lead, pi).conj() ** (j * (j + 1))
        if i + 1 < len(primes):
            prefix = prefix * pi
            psi_val *= psi(prefix ** (j + 1), primes[i + 1])
    return p_val, psi_val
