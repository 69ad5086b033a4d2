"""Exact coefficient arithmetic.

Laurent polynomials in a formal variable ``A`` whose exponents may be
half-integers, integer polynomials (Chebyshev), and evaluation at odd
primitive roots of unity, both floating and exact (residue modulo the
cyclotomic polynomial).

Half-integer exponents are stored doubled: the key ``e`` of a term means
``A**(e/2)``.  At a primitive ``N``-th root with ``N`` odd, the square root of
``A`` is always taken to be ``A**((N+1)/2)``, which is again an ``N``-th root
of unity; this makes evaluation a ring homomorphism.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import sympy


def _clean(terms: Mapping[int, int]) -> dict[int, int]:
    return {int(e): int(c) for e, c in terms.items() if c}


class LaurentHalf:
    """Immutable Laurent polynomial in ``A**(1/2)`` with integer coefficients.

    >>> A = LaurentHalf.A()
    >>> (A - A**-1) * (A + A**-1)
    A^2 - A^-2
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = _clean(terms or {})
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c: int) -> "LaurentHalf":
        return cls({0: c})

    @classmethod
    def A(cls, power: int = 1) -> "LaurentHalf":
        """``A**power`` for an integer power."""
        return cls({2 * power: 1})

    @classmethod
    def half(cls, doubled: int) -> "LaurentHalf":
        """``A**(doubled/2)``."""
        return cls({doubled: 1})

    @classmethod
    def coerce(cls, x) -> "LaurentHalf":
        if isinstance(x, LaurentHalf):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentHalf")

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_integral(self) -> bool:
        """True when every exponent is an integer (no odd doubled keys)."""
        return all(e % 2 == 0 for e in self._terms)

    # arithmetic
    def __add__(self, other):
        try:
            other = LaurentHalf.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentHalf(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentHalf({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentHalf.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentHalf.coerce(other) - self

    def __mul__(self, other):
        try:
            other = LaurentHalf.coerce(other)
        except TypeError:
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials are invertible")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials are invertible")
            return LaurentHalf({-e * (-n): c ** (-n)})
        result = LaurentHalf.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentHalf.const(other)
        if not isinstance(other, LaurentHalf):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def shift(self, doubled: int) -> "LaurentHalf":
        """Multiply by ``A**(doubled/2)``."""
        return LaurentHalf({e + doubled: c for e, c in self._terms.items()})

    def substitute_sign(self, half_value: int) -> int:
        """Exact value at ``A**(1/2) = half_value`` for ``half_value`` in {1, -1}."""
        if half_value not in (1, -1):
            raise ValueError("half_value must be +1 or -1")
        return sum(c * half_value ** (e % 2) for e, c in self._terms.items())

    def at_A(self, value: int) -> int:
        """Exact value at ``A = value`` for ``value`` in {1, -1}, integral polys only."""
        if not self.is_integral():
            raise ValueError("half-integer exponents need an explicit square root")
        return sum(c * value ** ((e // 2) % 2) for e, c in self._terms.items())

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e % 2 == 0:
                mono = "A" if e == 2 else f"A^{e // 2}"
            else:
                mono = f"A^({e}/2)"
            if mono:
                coef = "" if abs(c) == 1 else f"{abs(c)}*"
                body = coef + mono
            else:
                body = str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # serialization
    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> "LaurentHalf":
        out: dict[int, int] = {}
        for e, c in data:
            if not isinstance(e, int) or not isinstance(c, int):
                raise ValueError("LaurentHalf JSON entries must be integer pairs")
            out[e] = out.get(e, 0) + c
        return cls(out)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def poly_mul(p: LaurentHalf, q: LaurentHalf) -> LaurentHalf:
    out: dict[int, int] = {}
    for e1, c1 in p._terms.items():
        for e2, c2 in q._terms.items():
            k = e1 + e2
            out[k] = out.get(k, 0) + c1 * c2
    return LaurentHalf(out)


A = LaurentHalf.A()
ONE = LaurentHalf.const(1)
ZERO = LaurentHalf()
# loop value and the recurring A^2 - A^-2 factor
DELTA = -(A ** 2) - A ** -2
QDIFF = A ** 2 - A ** -2


@dataclass(frozen=True)
class IntPoly:
    """Univariate integer polynomial, ``coeffs[i]`` multiplies ``x**i``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        # Horner; works for numbers, numpy matrices (via matmul) is handled by callers
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def shift(self) -> "IntPoly":
        """Multiply by x."""
        return IntPoly((0,) + self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                body = str(abs(c))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


@lru_cache(maxsize=None)
def chebyshev(n: int) -> IntPoly:
    """Normalized first-kind Chebyshev polynomial with ``T_n(Tr M) = Tr M^n``.

    ``T_0 = 2``, ``T_1 = x`` and ``T_{n+1} = x T_n - T_{n-1}``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return IntPoly((2,))
    if n == 1:
        return IntPoly((0, 1))
    return chebyshev(n - 1).shift() - chebyshev(n - 2)


@dataclass(frozen=True)
class RootOfUnity:
    """The primitive root ``exp(2 pi i k / N)``, ``N`` odd."""

    N: int
    k: int = 1

    def __post_init__(self):
        if self.N < 3 or self.N % 2 == 0:
            raise ValueError(f"N must be odd and >= 3, got {self.N}")
        if math.gcd(self.k, self.N) != 1:
            raise ValueError(f"k={self.k} is not coprime to N={self.N}")

    @property
    def half_exponent(self) -> int:
        """Integer ``m`` with ``A**(1/2) := A**m``."""
        return (self.N + 1) // 2

    def power(self, doubled: int) -> complex:
        """Numerical value of ``A**(doubled/2)``."""
        e = self.int_exponent(doubled)
        return cmath.exp(2j * math.pi * self.k * e / self.N)

    def int_exponent(self, doubled: int) -> int:
        """Exponent ``e`` in ``[0, N)`` with ``A**(doubled/2) = A**e``."""
        return (doubled * self.half_exponent) % self.N

    @property
    def value(self) -> complex:
        return self.power(2)


def eval_at_root(p: LaurentHalf, root: RootOfUnity) -> complex:
    """Substitute ``A = exp(2 pi i k/N)`` and ``A**(1/2) = A**((N+1)/2)``."""
    # fold by residue first so large exponents cost nothing extra
    folded: dict[int, int] = {}
    for e, c in p._terms.items():
        r = root.int_exponent(e)
        folded[r] = folded.get(r, 0) + c
    return sum((c * root.power(2 * r) for r, c in folded.items() if c), 0j)


@lru_cache(maxsize=None)
def cyclotomic(N: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the N-th cyclotomic polynomial."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(N, x), x)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def cyclotomic_residue(p: LaurentHalf, N: int) -> tuple[int, ...]:
    """Residue of ``p`` in ``Z[A]/Phi_N(A)``, as low-to-high coefficients.

    The result is the zero tuple iff ``p`` vanishes at every primitive
    ``N``-th root of unity (under the fixed square-root convention).
    """
    if N < 3 or N % 2 == 0:
        raise ValueError("N must be odd and >= 3")
    half = (N + 1) // 2
    coeffs = [0] * N
    for e, c in p._terms.items():
        coeffs[(e * half) % N] += c
    phi = cyclotomic(N)
    deg = len(phi) - 1
    # phi is monic; long division
    for i in range(N - 1, deg - 1, -1):
        c = coeffs[i]
        if c:
            for j, pc in enumerate(phi):
                coeffs[i - deg + j] -= c * pc
    return tuple(coeffs[:deg])


def residue_norm(p: LaurentHalf, N: int) -> int:
    """Max absolute coefficient of the cyclotomic residue; 0 iff ``p`` vanishes."""
    return max((abs(c) for c in cyclotomic_residue(p, N)), default=0)


def exact_divide(p: LaurentHalf, d: LaurentHalf) -> LaurentHalf | None:
    """Quotient ``p / d`` when it is again a Laurent polynomial, else ``None``."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return LaurentHalf()
    rem = dict(p._terms)
    dtop = max(d._terms)
    dlead = d._terms[dtop]
    dlow = min(d._terms)
    quot: dict[int, int] = {}
    while rem:
        top = max(rem)
        c = rem[top]
        if c % dlead:
            return None
        q, shift = c // dlead, top - dtop
        if top - dtop + dlow < min(rem):
            return None
        quot[shift] = quot.get(shift, 0) + q
        for e, dc in d._terms.items():
            k = e + shift
            v = rem.get(k, 0) - q * dc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentHalf(quot)
