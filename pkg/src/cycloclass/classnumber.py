"""Dirichlet characters, generalized Bernoulli values, and the exact minus
part of cyclotomic class numbers.

The minus class number is evaluated analytically as

    Q * w * product over odd characters of (-1/2 * B_1(chi)),

with the product taken one Galois orbit at a time as an exact integer norm
(the determinant of the multiplication matrix of the Bernoulli value in the
cyclotomic field of the character order).  No floating point is involved
anywhere; non-integral output signals a bug, not rounding error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm, prod

from sympy import factorint, isprime, primitive_root

from .abelian import FinAbGroup, IntMatrix
from .residue import InternalConsistencyError, cyclotomic_int


def odd_part(x):
    """The largest odd divisor of a positive integer."""
    x = int(x)
    if x < 1:
        raise ValueError("odd_part needs a positive integer")
    while x % 2 == 0:
        x //= 2
    return x


# ---------------------------------------------------------------------------
# the unit group (Z/m)^x and its characters


@lru_cache(maxsize=None)
def _unit_group(m):
    """Generators (with orders) of (Z/m)^x and a discrete-log table."""
    m = int(m)
    gens = []
    for p, e in sorted(factorint(m).items()):
        p, e = int(p), int(e)
        q = p ** e
        rest = m // q
        if p == 2:
            local = []
            if e == 2:
                local = [(3, 2)]
            elif e >= 3:
                local = [(q - 1, 2), (5, 2 ** (e - 2))]
        else:
            local = [(int(primitive_root(q)), (p - 1) * p ** (e - 1))]
        for g_local, order in local:
            # CRT lift: g_local mod q, 1 mod the rest
            if rest == 1:
                lift = g_local % m
            else:
                inv_q = pow(q, -1, rest)
                lift = (g_local + q * ((1 - g_local) * inv_q % rest)) % m
            gens.append((lift, order))
    # exhaustive discrete logs over the generator exponents
    table = {}
    def fill(prefix, value):
        i = len(prefix)
        if i == len(gens):
            table[value] = tuple(prefix)
            return
        g, order = gens[i]
        acc = value
        for k in range(order):
            fill(prefix + [k], acc)
            acc = (acc * g) % m
    fill([], 1 % m)
    expected = sum(1 for a in range(m) if gcd(a, m) == 1) if m > 1 else 1
    if len(table) != prod(o for _, o in gens) or len(table) != expected:
        raise InternalConsistencyError("unit group enumeration mismatch")
    return tuple(gens), table


class DirichletCharacter:
    """A character of (Z/m)^x, stored as exponents on fixed generators.

    chi(g_i) = exp(2 pi i * exps[i] / order_i).  Values are returned as
    exponents of a primitive (order of chi)-th root of unity.
    """

    __slots__ = ("modulus", "exps", "order", "conductor", "parity")

    def __init__(self, modulus, exps):
        gens, _ = _unit_group(modulus)
        exps = tuple(e % o for e, (_, o) in zip(exps, gens))
        if len(exps) != len(gens):
            raise ValueError("exponent vector does not match the generators")
        object.__setattr__(self, "modulus", int(modulus))
        object.__setattr__(self, "exps", exps)
        order = 1
        for e, (_, o) in zip(exps, gens):
            order = lcm(order, o // gcd(o, e))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "conductor", self._conductor())
        object.__setattr__(self, "parity", 1 if self.value_exponent(-1) == 0 else -1)

    def __setattr__(self, name, value):
        raise AttributeError("DirichletCharacter is immutable")

    def is_principal(self):
        return self.order == 1

    def value_exponent(self, a):
        """t with chi(a) = zeta_order^t, or None when gcd(a, m) > 1."""
        m = self.modulus
        a = a % m if m > 1 else 0
        gens, table = _unit_group(m)
        if m == 1:
            return 0
        logs = table.get(a)
        if logs is None:
            return None
        big = lcm(*(o for _, o in gens)) if gens else 1
        t = 0
        for e, k, (_, o) in zip(self.exps, logs, gens):
            t += e * k * (big // o)
        t %= big
        step = big // self.order
        if t % step:
            raise InternalConsistencyError("character value has wrong order")
        return (t // step) % self.order

    def _conductor(self):
        m = self.modulus
        for f in sorted(_divisors(m)):
            ok = True
            for a in range(1, m + 1):
                if gcd(a, m) == 1 and a % f == 1 % f:
                    if self.value_exponent(a) != 0:
                        ok = False
                        break
            if ok:
                return f
        raise InternalConsistencyError("no conductor found")

    def primitive_value_exponent(self, a):
        """Value exponent of the primitive character of the same conductor."""
        f = self.conductor
        if gcd(a, f) != 1:
            return None
        a %= f
        # lift a to a residue coprime to the full modulus
        while gcd(a, self.modulus) != 1:
            a += f
        return self.value_exponent(a)

    def power(self, s):
        return DirichletCharacter(self.modulus,
                                  tuple(e * s for e in self.exps))

    def __eq__(self, other):
        return (isinstance(other, DirichletCharacter)
                and self.modulus == other.modulus and self.exps == other.exps)

    def __hash__(self):
        return hash((self.modulus, self.exps))

    def __repr__(self):
        return f"DirichletCharacter(mod {self.modulus}, exps={self.exps})"


def _divisors(m):
    divs = [1]
    for p, e in factorint(m).items():
        divs = [d * int(p) ** k for d in divs for k in range(e + 1)]
    return divs


def characters(m):
    """All phi(m) Dirichlet characters modulo m."""
    m = int(m)
    if m < 1:
        raise ValueError("modulus must be positive")
    gens, _ = _unit_group(m)
    out = []
    def build(prefix):
        i = len(prefix)
        if i == len(gens):
            out.append(DirichletCharacter(m, tuple(prefix)))
            return
        for e in range(gens[i][1]):
            build(prefix + [e])
    build([])
    return out


# ---------------------------------------------------------------------------
# exact cyclotomic numbers (just enough for Bernoulli values)


class CycNumber:
    """An element of Q(zeta_d): rational coefficients on 1, zeta, ...,
    zeta^(phi(d)-1), i.e. reduced modulo the d-th cyclotomic polynomial."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level, coeffs):
        level = int(level)
        phi_poly = cyclotomic_int(level)
        deg = len(phi_poly) - 1
        work = [Fraction(c) for c in coeffs]
        # exact reduction modulo the monic cyclotomic polynomial
        for k in range(len(work) - 1, deg - 1, -1):
            c = work[k]
            if c:
                for j in range(len(phi_poly) - 1):
                    work[k - deg + j] -= c * phi_poly[j]
                work[k] = Fraction(0)
        work = work[:deg] + [Fraction(0)] * (deg - len(work))
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", tuple(work[:deg]))

    def __setattr__(self, name, value):
        raise AttributeError("CycNumber is immutable")

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("value is irrational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def norm(self):
        """Field norm down to Q, as the determinant of multiplication."""
        n = len(self.coeffs)
        if n == 0:
            return Fraction(1)
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        return Fraction(_cyclotomic_norm_int(ints, self.level), den ** n)

    def __eq__(self, other):
        return (isinstance(other, CycNumber) and self.level == other.level
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def __repr__(self):
        return f"CycNumber(level={self.level}, coeffs={self.coeffs})"


def _cyclotomic_norm_int(coeffs, d):
    """Norm of an integer combination of powers of zeta_d, exactly."""
    phi_poly = [int(c) for c in cyclotomic_int(d)]
    n = len(phi_poly) - 1
    work = list(coeffs) + [0] * max(0, n - len(coeffs))
    for k in range(len(work) - 1, n - 1, -1):
        c = work[k]
        if c:
            for j in range(n):
                work[k - n + j] -= c * phi_poly[j]
            work[k] = 0
    base = work[:n]
    cols = []
    current = list(base)
    for _ in range(n):
        cols.append(list(current))
        # multiply by zeta: shift and reduce the top coefficient
        top = current[-1]
        current = [0] + current[:-1]
        if top:
            for j in range(n):
                current[j] -= top * phi_poly[j]
    return IntMatrix.from_columns(cols, rows=n).det()


def b1(chi):
    """The first generalized Bernoulli value of a non-principal character,
    as an exact element of Q(zeta_order)."""
    if chi.is_principal():
        raise ValueError("principal characters are not accepted")
    f = chi.conductor
    d = chi.order
    sums = [0] * d
    for a in range(1, f):
        if gcd(a, f) != 1:
            continue
        t = chi.primitive_value_exponent(a)
        sums[t] += a
    return CycNumber(d, [Fraction(s, f) for s in sums])


# ---------------------------------------------------------------------------
# the minus class number


def _normalize_modulus(m):
    m = int(m)
    if m < 1:
        raise ValueError("modulus must be positive")
    return m // 2 if m % 4 == 2 else m


@lru_cache(maxsize=None)
def hminus(m):
    """|C(Z[zeta_m])^-|, evaluated exactly.

    The modulus is normalised so that m = 2 mod 4 coincides with m/2 (the
    fields agree).  Q is 1 for prime powers and 2 otherwise; w counts the
    roots of unity of the field.
    """
    m = _normalize_modulus(m)
    if m <= 2:
        return 1
    q_factor = 1 if len(factorint(m)) == 1 else 2
    w = 2 * m if m % 2 else m

    odd_chars = [c for c in characters(m) if c.parity == -1]
    total = Fraction(q_factor * w)
    remaining = set(odd_chars)
    while remaining:
        chi = remaining.pop()
        d = chi.order
        orbit = {chi.power(s) for s in range(1, d) if gcd(s, d) == 1}
        orbit.add(chi)
        if not orbit <= remaining | {chi}:
            raise InternalConsistencyError("orbit left the odd characters")
        remaining -= orbit
        phi_d = len(orbit)

        f = chi.conductor
        sums = [0] * d
        for a in range(1, f):
            if gcd(a, f) != 1:
                continue
            sums[chi.primitive_value_exponent(a)] += a
        norm = _cyclotomic_norm_int(sums, d)
        total *= Fraction((-1) ** phi_d * norm, (2 * f) ** phi_d)

    if total.denominator != 1 or total <= 0:
        raise InternalConsistencyError(
            f"analytic minus class number for m={m} is not a positive "
            f"integer: {total}")
    return int(total)


# ---------------------------------------------------------------------------
# stored parity and class-group facts


#: primes p <= 509 whose cyclotomic class number is even
_EVEN_HP = frozenset({29, 113, 163, 197, 239, 277, 311, 337, 349, 373,
                      397, 421, 463, 491})

_HP_TABLE_LIMIT = 509


def hp_is_odd(p):
    """Parity of h_p for primes p <= 509, from the stored table."""
    p = int(p)
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if p > _HP_TABLE_LIMIT:
        raise ValueError(f"parity of h_p is only tabulated for p <= "
                         f"{_HP_TABLE_LIMIT}; refusing to extrapolate")
    return p not in _EVEN_HP


#: all m >= 2 with minus class number 1 (a complete classification)
HMINUS_ONE_SQUAREFREE = frozenset(
    [2, 3, 5, 7, 11, 13, 17, 19]
    + [2 * p for p in (3, 5, 7, 11, 13, 17, 19)]
    + [p * q for p, q in ((3, 5), (3, 7), (3, 11), (5, 7))]
    + [2 * p * q for p, q in ((3, 5), (3, 7), (3, 11), (5, 7))])

HMINUS_ONE_NON_SQUAREFREE = frozenset(
    [4, 8, 9, 12, 16, 18, 20, 24, 25, 27, 28, 32, 36, 40, 44, 45, 48, 50,
     54, 60, 84, 90])

HMINUS_ONE = HMINUS_ONE_SQUAREFREE | HMINUS_ONE_NON_SQUAREFREE

#: all m >= 2 with odd(h_m^-) = 1 but h_m^- > 1 (complete classification)
ODD_HMINUS_ONE_SQUAREFREE = frozenset([29, 39, 58, 65, 78, 130])
ODD_HMINUS_ONE_NON_SQUAREFREE = frozenset([56, 68, 120])
ODD_HMINUS_ONE = ODD_HMINUS_ONE_SQUAREFREE | ODD_HMINUS_ONE_NON_SQUAREFREE


def hminus_is_one(m):
    """Stored complete answer to h_m^- = 1, without analytic evaluation."""
    return int(m) in HMINUS_ONE if int(m) >= 2 else True


def odd_hminus_is_one(m):
    """Stored complete answer to odd(h_m^-) = 1."""
    m = int(m)
    return m < 2 or m in HMINUS_ONE or m in ODD_HMINUS_ONE


#: published structure of the full class group where the artifact needs it
_KNOWN_CLASS_GROUPS = {
    29: (2, 2, 2),
    58: (2, 2, 2),
    39: (2,),
    78: (2,),
    65: (2, 2, 4, 4),
    130: (2, 2, 4, 4),
}

#: m for which the real-subfield class number is reported to be 1
_KNOWN_PLUS_TRIVIAL = frozenset(_KNOWN_CLASS_GROUPS)


@dataclass(frozen=True)
class ClassRecord:
    """Everything this artifact knows about C(Z[zeta_m])."""

    m: int
    hminus: int
    hminus_odd_part: int
    known_class_group: FinAbGroup | None = None
    known_plus_trivial: bool | None = None
    sources: dict = field(default_factory=dict)


def class_record(m, compute=True):
    """Assemble the class-group record for m.

    With compute=False the minus class number is only filled in when the
    stored classifications pin it down (the h^- = 1 lists, or m with a
    published class group and trivial plus part).
    """
    m = int(m)
    sources = {}
    known = None
    plus_trivial = None
    key = _normalize_modulus(m)
    lookup = m if m in _KNOWN_CLASS_GROUPS else key
    if lookup in _KNOWN_CLASS_GROUPS:
        known = FinAbGroup.from_cyclic_factors(_KNOWN_CLASS_GROUPS[lookup])
        plus_trivial = lookup in _KNOWN_PLUS_TRIVIAL
        sources["known_class_group"] = "published tables"
        sources["known_plus_trivial"] = "published tables"

    if compute:
        h = hminus(m)
        sources["hminus"] = "computed"
    elif hminus_is_one(m):
        h = 1
        sources["hminus"] = "stored classification"
    elif known is not None and plus_trivial:
        h = known.order
        sources["hminus"] = "published class group with trivial plus part"
    else:
        h = None
        sources["hminus"] = "not evaluated"

    if known is not None and plus_trivial and h is not None and h != known.order:
        raise InternalConsistencyError(
            f"h^-({m}) = {h} conflicts with the published class group")
    return ClassRecord(
        m=m,
        hminus=h,
        hminus_odd_part=odd_part(h) if h is not None else None,
        known_class_group=known,
        known_plus_trivial=plus_trivial,
        sources=sources,
    )
