"""SL2(C) representations of free groups and their trace functions.

Words are sequences of ``(generator, exponent)`` with exponent in {+1, -1}.
The string form uses ``a, b, c, ...`` for generators and upper case for
inverses, so ``"aB"`` is ``a b^-1``.  Products are taken left to right.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

DET_TOL = 1e-10


class SingularMatrix(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


class NotCoprime(ValueError):
    pass


@dataclass(frozen=True)
class GroupWord:
    letters: tuple[tuple[int, int], ...]

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        letters = []
        for ch in text.strip():
            if not ch.isalpha():
                raise ValueError(f"bad letter {ch!r} in word {text!r}")
            idx = ord(ch.lower()) - ord("a")
            letters.append((idx, -1 if ch.isupper() else 1))
        return cls(tuple(letters))

    def __str__(self):
        return "".join(chr(ord("a") + g) if e == 1 else chr(ord("A") + g) for g, e in self.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters).reduced()

    def reduced(self) -> "GroupWord":
        out: list[tuple[int, int]] = []
        for g, e in self.letters:
            if out and out[-1] == (g, -e):
                out.pop()
            else:
                out.append((g, e))
        return GroupWord(tuple(out))

    def degree(self, gen: int) -> int:
        return sum(e for g, e in self.letters if g == gen)


@dataclass(frozen=True, eq=False)
class SL2Rep:
    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = tuple(np.asarray(m, dtype=complex) for m in self.matrices)
        for i, m in enumerate(mats):
            if m.shape != (2, 2):
                raise ValueError(f"generator {i} is not 2x2")
            if abs(np.linalg.det(m) - 1) > DET_TOL * max(1.0, np.abs(m).max() ** 2):
                raise ValueError(f"generator {i} does not have determinant 1")
        object.__setattr__(self, "matrices", mats)

    @property
    def rank(self) -> int:
        return len(self.matrices)

    def to_json(self) -> list:
        return [[[z.real, z.imag] for z in m.ravel()] for m in self.matrices]

    @classmethod
    def from_json(cls, data) -> "SL2Rep":
        mats = []
        for quad in data:
            if len(quad) != 4:
                raise ValueError("each matrix needs four [re, im] entries")
            mats.append(np.array([complex(re, im) for re, im in quad]).reshape(2, 2))
        return cls(tuple(mats))

    def conjugate(self, g: np.ndarray) -> "SL2Rep":
        gi = np.linalg.inv(g)
        return SL2Rep(tuple(g @ m @ gi for m in self.matrices))


def word_matrix(w: GroupWord, r: SL2Rep) -> np.ndarray:
    out = np.eye(2, dtype=complex)
    for g, e in w.letters:
        if not 0 <= g < r.rank:
            raise IndexError(f"generator {g} out of range for rank {r.rank}")
        m = r.matrices[g]
        out = out @ (m if e == 1 else _sl2_inverse(m))
    return out


def _sl2_inverse(m: np.ndarray) -> np.ndarray:
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def trace_word(w: GroupWord | str, r: SL2Rep) -> complex:
    if isinstance(w, str):
        w = GroupWord.parse(w)
    return complex(np.trace(word_matrix(w, r)))


def trace_identity_check(M, N) -> float:
    """``|Tr(MN) + Tr(MN^-1) - Tr(M) Tr(N)|``."""
    M = np.asarray(M, dtype=complex)
    N = np.asarray(N, dtype=complex)
    if abs(np.linalg.det(N)) < 1e-12:
        raise SingularMatrix("N is not invertible")
    Ninv = np.linalg.inv(N)
    return float(abs(np.trace(M @ N) + np.trace(M @ Ninv) - np.trace(M) * np.trace(N)))


def bullock_value(components: Sequence[GroupWord | str], r: SL2Rep) -> complex:
    """``(-1)^n`` times the product of component traces; 1 for the empty link."""
    value = complex(1)
    for w in components:
        value *= -trace_word(w, r)
    return value


def twist_rep(r: SL2Rep, alpha: Sequence[int]) -> SL2Rep:
    """Action of a Z/2 cohomology class given by its values on the generators."""
    if len(alpha) != r.rank:
        raise LengthMismatch(f"cocycle has {len(alpha)} entries, rep has rank {r.rank}")
    return SL2Rep(tuple(m * (-1) ** (int(a) % 2) for m, a in zip(r.matrices, alpha)))


def cocycle_degree(w: GroupWord, alpha: Sequence[int]) -> int:
    return sum(abs(e) * alpha[g] for g, e in w.letters) % 2


def christoffel_word(p: int, q: int) -> GroupWord:
    """An explicit word for the primitive (p, q) class of F(a, b).

    For ``q < 0`` the letter ``b`` is replaced by ``b^-1``; for ``p < 0`` the
    word of ``(-p, -q)`` is inverted.
    """
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"({p}, {q}) is not primitive")
    if p < 0 or (p == 0 and q < 0):
        return christoffel_word(-p, -q).inverse()
    bsign = 1 if q >= 0 else -1
    q = abs(q)
    n = p + q
    letters = []
    for i in range(1, n + 1):
        if (i * q) // n == ((i - 1) * q) // n:
            letters.append((0, 1))
        else:
            letters.append((1, bsign))
    return GroupWord(tuple(letters))


def fricke_trace(p: int, q: int, r: SL2Rep) -> complex:
    """Trace of the (p, q) curve on the punctured torus by Farey recursion.

    Seeds are ``x = Tr a``, ``y = Tr b``, ``z = Tr ab``, and the step is
    ``Tr(UV) = Tr(U) Tr(V) - Tr(U V^-1)``.
    """
    if r.rank != 2:
        raise ValueError("fricke_trace needs a rank-2 representation")
    x = trace_word("a", r)
    y = trace_word("b", r)
    z = trace_word("ab", r)
    return fricke_polynomial_value(p, q, x, y, z)


def fricke_polynomial_value(p: int, q: int, x, y, z):
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"({p}, {q}) is not primitive")
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    if q < 0:
        # b -> b^-1 turns (p, -q) into (p, q) with Tr(a b^-1) = xy - z as third seed
        return _farey(p, -q, x, y, x * y - z)
    return _farey(p, q, x, y, z)


def _farey(p: int, q: int, x, y, z):
    # descend the Stern-Brocot tree to (p, q), carrying traces of the two parents
    # and of their "difference" curve
    if (p, q) == (1, 0):
        return x
    if (p, q) == (0, 1):
        return y
    left, right = (1, 0), (0, 1)  # p/q between them in slope order
    tl, tr, tdiff = x, y, x * y - z  # Tr(a), Tr(b), Tr(a b^-1)
    while True:
        mid = (left[0] + right[0], left[1] + right[1])
        tmid = tl * tr - tdiff
        if mid == (p, q):
            return tmid
        # choose the side containing (p, q): compare slopes q/p
        if q * mid[0] > p * mid[1]:
            # target steeper than mid: new interval (mid, right)
            left, tl, tdiff = mid, tmid, tl
        else:
            right, tr, tdiff = mid, tmid, tr


def word_corpus(rank: int, max_len: int = 6) -> list[GroupWord]:
    """All reduced words of length <= max_len."""
    letters = [(g, e) for g in range(rank) for e in (1, -1)]
    out = [GroupWord(())]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for l in letters:
                if w and w[-1] == (l[0], -l[1]):
                    continue
                nxt.append(w + (l,))
        out.extend(GroupWord(w) for w in nxt)
        frontier = nxt
    return out


def same_character(r1: SL2Rep, r2: SL2Rep, max_len: int = 6, tol: float = 1e-8) -> bool:
    """Trace-equality predicate over all reduced words of bounded length."""
    if r1.rank != r2.rank:
        return False
    for w in word_corpus(r1.rank, max_len):
        t1, t2 = trace_word(w, r1), trace_word(w, r2)
        if abs(t1 - t2) > tol * max(1.0, abs(t1)):
            return False
    return True


def random_sl2(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    m = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) * scale
    d = np.linalg.det(m)
    return m / np.sqrt(d)


def random_rep(rng: np.random.Generator, rank: int) -> SL2Rep:
    return SL2Rep(tuple(random_sl2(rng) for _ in range(rank)))


def load_rep(path) -> SL2Rep:
    with open(path) as fh:
        return SL2Rep.from_json(json.load(fh))
