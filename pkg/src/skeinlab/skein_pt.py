"""Skein algebra of the once-punctured torus by generators and relations.

Three generators ``X1, X2, X3`` with, for ``i`` mod 3,

    A Xi X(i+1) - A^-1 X(i+1) Xi = (A^2 - A^-2) X(i+2).

Elements are kept in the ordered normal form ``X1^a X2^b X3^c``.  Products
are normalized by the swap rules

    X2 X1 -> A^2 X1 X2 - A (A^2 - A^-2) X3
    X3 X2 -> A^2 X2 X3 - A (A^2 - A^-2) X1
    X3 X1 -> A^-2 X1 X3 + A^-1 (A^2 - A^-2) X2

Every rule either removes one inversion or lowers the degree, so rewriting
terminates.  Associativity of the resulting product is the confluence
evidence checked by the tests.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .exactalg import A, ONE, QDIFF, IntPoly, LaurentHalf, chebyshev, residue_norm

Monomial = tuple[int, int, int]

_RULES: dict[tuple[int, int], tuple[LaurentHalf, LaurentHalf, int]] = {
    # (left, right) with left > right: X_left X_right = c1 X_right X_left + c2 X_other
    (2, 1): (A ** 2, -(A * QDIFF), 3),
    (3, 2): (A ** 2, -(A * QDIFF), 1),
    (3, 1): (A ** -2, A ** -1 * QDIFF, 2),
}


class SkeinPTElement:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, LaurentHalf] | None = None):
        self.terms: dict[Monomial, LaurentHalf] = {
            tuple(m): LaurentHalf.coerce(c) for m, c in (terms or {}).items() if c
        }

    @classmethod
    def gen(cls, i: int) -> "SkeinPTElement":
        m = [0, 0, 0]
        m[i - 1] = 1
        return cls({tuple(m): ONE})

    @classmethod
    def scalar(cls, c) -> "SkeinPTElement":
        return cls({(0, 0, 0): LaurentHalf.coerce(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, LaurentHalf()) + c
        return SkeinPTElement(out)

    __radd__ = __add__

    def __neg__(self):
        return SkeinPTElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, LaurentHalf)):
            c = LaurentHalf.coerce(other)
            return SkeinPTElement({m: v * c for m, v in self.terms.items()})
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentHalf)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        out = SkeinPTElement.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, LaurentHalf)):
            other = SkeinPTElement.scalar(other)
        if not isinstance(other, SkeinPTElement):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), t[0])):
            mono = "*".join(
                f"X{i + 1}" if k == 1 else f"X{i + 1}^{k}" for i, k in enumerate(m) if k
            )
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)


def _coerce(x) -> SkeinPTElement:
    if isinstance(x, SkeinPTElement):
        return x
    return SkeinPTElement.scalar(x)


def _add_into(acc: dict, terms: Mapping[Monomial, LaurentHalf], scale: LaurentHalf) -> None:
    for m, c in terms.items():
        v = acc.get(m)
        acc[m] = c * scale if v is None else v + c * scale


def _prune(d: dict) -> dict:
    return {m: c for m, c in d.items() if c}


def _last_letter(m: Monomial) -> int:
    for i in (2, 1, 0):
        if m[i]:
            return i + 1
    return 0


def _drop_last(m: Monomial, letter: int) -> Monomial:
    out = list(m)
    out[letter - 1] -= 1
    return tuple(out)


@lru_cache(maxsize=None)
def _right_mul(m: Monomial, j: int) -> tuple[tuple[Monomial, LaurentHalf], ...]:
    """Normal form of ``monomial * X_j``."""
    last = _last_letter(m)
    if last <= j:
        out = list(m)
        out[j - 1] += 1
        return ((tuple(out), ONE),)
    c1, c2, k = _RULES[(last, j)]
    rest = _drop_last(m, last)
    acc: dict[Monomial, LaurentHalf] = {}
    # rest * (c1 X_j X_last + c2 X_k)
    for mm, cc in _right_mul(rest, j):
        for m2, c3 in _right_mul(mm, last):
            _add_into(acc, {m2: c3}, cc * c1)
    for mm, cc in _right_mul(rest, k):
        _add_into(acc, {mm: cc}, c2)
    return tuple(sorted(_prune(acc).items()))


@lru_cache(maxsize=None)
def _mono_mul(m1: Monomial, m2: Monomial) -> tuple[tuple[Monomial, LaurentHalf], ...]:
    current: dict[Monomial, LaurentHalf] = {m1: ONE}
    for letter in (1, 2, 3):
        for _ in range(m2[letter - 1]):
            nxt: dict[Monomial, LaurentHalf] = {}
            for m, c in current.items():
                _add_into(nxt, dict(_right_mul(m, letter)), c)
            current = _prune(nxt)
    return tuple(sorted(current.items()))


def multiply(u: SkeinPTElement, v: SkeinPTElement) -> SkeinPTElement:
    acc: dict[Monomial, LaurentHalf] = {}
    for m1, c1 in u.terms.items():
        for m2, c2 in v.terms.items():
            _add_into(acc, dict(_mono_mul(m1, m2)), c1 * c2)
    return SkeinPTElement(_prune(acc))


def normal_form(word: Sequence[int]) -> SkeinPTElement:
    """Normal form of a product of generators given as indices in {1, 2, 3}."""
    out = SkeinPTElement.scalar(1)
    for i in word:
        out = out * SkeinPTElement.gen(i)
    return out


def commutator(u: SkeinPTElement, v: SkeinPTElement) -> SkeinPTElement:
    return u * v - v * u


def commutator_at_root(u: SkeinPTElement, v: SkeinPTElement, N: int) -> int:
    """Largest cyclotomic-residue coefficient of ``uv - vu``; 0 certifies commutation."""
    c = commutator(u, v)
    return max((residue_norm(coef, N) for coef in c.terms.values()), default=0)


def apply_poly(p: IntPoly, x: SkeinPTElement) -> SkeinPTElement:
    acc = SkeinPTElement()
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def chebyshev_of(n: int, x: SkeinPTElement) -> SkeinPTElement:
    return apply_poly(chebyshev(n), x)


X1, X2, X3 = (SkeinPTElement.gen(i) for i in (1, 2, 3))


def relation_residual(i: int) -> SkeinPTElement:
    """``A Xi Xi+1 - A^-1 Xi+1 Xi - (A^2 - A^-2) Xi+2`` in normal form."""
    gens = {1: X1, 2: X2, 3: X3}
    a, b, c = gens[i], gens[i % 3 + 1], gens[(i + 1) % 3 + 1]
    return (a * b) * A - (b * a) * A ** -1 - c * QDIFF


# -- closed torus -------------------------------------------------------------

def closed_torus_element(q1=None, q2=None, q3=None) -> SkeinPTElement:
    """``q1 X1^2 + q2 X2^2 + q3 X3^2 - A X1X2X3 - 2A^2 - 2A^-2``.

    The default quadratic coefficients are ``A^2, A^-2, A^2``.
    """
    q1 = A ** 2 if q1 is None else q1
    q2 = A ** -2 if q2 is None else q2
    q3 = A ** 2 if q3 is None else q3
    return (X1 * X1) * q1 + (X2 * X2) * q2 + (X3 * X3) * q3 - (X1 * X2 * X3) * A \
        - 2 * A ** 2 - 2 * A ** -2


def closed_torus_central_check(max_shift: int = 2) -> dict:
    """Report which candidate closed-torus element is central.

    The default element is tested first.  Its cyclically symmetric variant
    (all quadratic coefficients equal) and every choice of quadratic
    coefficients ``A^{2j}`` with ``|j| <= max_shift`` are then swept so the
    report names every central candidate in that family.
    """
    def status(el):
        comms = {f"X{i}": commutator(el, g) for i, g in ((1, X1), (2, X2), (3, X3))}
        return {k: ("0" if c.is_zero() else repr(c)) for k, c in comms.items()}, \
            all(c.is_zero() for c in comms.values())

    verbatim_comms, verbatim_central = status(closed_torus_element())
    sym_comms, sym_central = status(closed_torus_element(A ** 2, A ** 2, A ** 2))
    central_patterns = []
    rng = range(-max_shift, max_shift + 1)
    for j1 in rng:
        for j2 in rng:
            for j3 in rng:
                el = closed_torus_element(A ** (2 * j1) if j1 else ONE,
                                          A ** (2 * j2) if j2 else ONE,
                                          A ** (2 * j3) if j3 else ONE)
                if all(commutator(el, g).is_zero() for g in (X1, X2, X3)):
                    central_patterns.append([2 * j1, 2 * j2, 2 * j3])
    return {
        "element": "A^2 X1^2 + A^-2 X2^2 + A^2 X3^2 - A X1 X2 X3 - 2A^2 - 2A^-2",
        "verbatim": {"central": verbatim_central, "commutators": verbatim_comms},
        "symmetric_variant": {
            "element": "A^2 X1^2 + A^2 X2^2 + A^2 X3^2 - A X1 X2 X3 - 2A^2 - 2A^-2",
            "central": sym_central,
            "commutators": sym_comms,
        },
        "central_quadratic_exponents": central_patterns,
        "search_range": [-2 * max_shift, 2 * max_shift],
    }


# -- small surfaces -----------------------------------------------------------

class ArityMismatch(ValueError):
    pass


_SMALL_KINDS = {"sphere": 0, "disk": 0, "annulus": 1, "three_punctured_sphere": 3}


@dataclass(frozen=True)
class SmallSurfaceAlgebra:
    """Commutative skein algebras of spheres with at most three punctures."""

    kind: str

    def __post_init__(self):
        if self.kind not in _SMALL_KINDS:
            raise ValueError(f"unknown small surface {self.kind!r}")

    @property
    def generators(self) -> tuple[str, ...]:
        return ("X", "Y", "Z")[: _SMALL_KINDS[self.kind]] if self.kind != "annulus" else ("X",)


@dataclass(frozen=True)
class OneDimRep:
    algebra: SmallSurfaceAlgebra
    values: tuple[complex, ...]

    def __call__(self, generator: str) -> complex:
        return self.values[self.algebra.generators.index(generator)]

    def is_isomorphic(self, other: "OneDimRep") -> bool:
        # one-dimensional reps of a polynomial algebra are determined by generator values
        return self.algebra == other.algebra and self.values == other.values


def small_irrep(alg: SmallSurfaceAlgebra, values: Iterable[complex] = ()) -> OneDimRep:
    values = tuple(complex(v) for v in values)
    if len(values) != len(alg.generators):
        raise ArityMismatch(
            f"{alg.kind} has {len(alg.generators)} generators, got {len(values)} values"
        )
    return OneDimRep(alg, values)


# -- expression parsing for the CLI --------------------------------------------

_TOKEN = re.compile(r"\s*(X[123]|A\^\{?-?\d+(?:/2)?\}?|A|\d+|[-+*()])")


def parse_expression(text: str) -> SkeinPTElement:
    """Parse sums/products of ``X1, X2, X3``, integers and ``A^{p/2}`` powers."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse expression at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append(None)
    idx = 0

    def peek():
        return tokens[idx]

    def take():
        nonlocal idx
        t = tokens[idx]
        idx += 1
        return t

    def atom():
        t = take()
        if t is None:
            raise ValueError("unexpected end of expression")
        if t == "(":
            v = expr()
            if take() != ")":
                raise ValueError("unbalanced parentheses")
            return v
        if t == "-":
            return -atom()
        if t.startswith("X"):
            return SkeinPTElement.gen(int(t[1]))
        if t == "A":
            return SkeinPTElement.scalar(A)
        if t.startswith("A^"):
            body = t[2:].strip("{}")
            if body.endswith("/2"):
                return SkeinPTElement.scalar(LaurentHalf.half(int(body[:-2])))
            return SkeinPTElement.scalar(LaurentHalf.half(2 * int(body)))
        if t.isdigit():
            return SkeinPTElement.scalar(int(t))
        raise ValueError(f"unexpected token {t!r}")

    def term():
        v = atom()
        while peek() == "*":
            take()
            v = v * atom()
        return v

    def expr():
        v = term()
        while peek() in ("+", "-"):
            op = take()
            w = term()
            v = v + w if op == "+" else v - w
        return v

    result = expr()
    if peek() is not None:
        raise ValueError(f"trailing tokens in expression: {tokens[idx:-1]}")
    return result
