"""Finite-dimensional representations of the quantum torus at odd roots of unity.

Given the integer matrix ``Omega`` of the Thurston form on a lattice basis
``b_1..b_n``, an integral congruence ``P Omega P^T`` brings it to blocks
``[[0, d], [-d, 0]]`` plus zeros.  Each block pair ``(u, v)`` is sent to a
clock matrix and a shift matrix of size ``N / gcd(d, N)``; kernel directions
act by scalars.  Images of the original basis follow from the Weyl ordering
rule ``rho(sum n_j c_j) = A^(-1/2 sum_{i<j} n_i n_j omega_ij) prod rho(c_j)^n_j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

from .exactalg import RootOfUnity

RELATION_TOL = 1e-10
SCHUR_TOL = 1e-8


class EvenN(ValueError):
    pass


class ZeroScalar(ValueError):
    pass


class NormalFormFailure(RuntimeError):
    pass


class NotScalar(RuntimeError):
    pass


def omega_matrix(tt, basis: Sequence[Sequence[int]]) -> np.ndarray:
    from .traintrack import thurston_form

    n = len(basis)
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            w = thurston_form(tt, basis[i], basis[j])
            out[i, j], out[j, i] = w, -w
    return out


def integer_rank(M) -> int:
    """Rank over Q by fraction-free elimination."""
    rows = [list(map(int, r)) for r in np.asarray(M)]
    return _rank_mod(rows, None)


def rank_mod(M, p: int) -> int:
    """Rank over Z/p for a prime p."""
    rows = [[int(v) % p for v in r] for r in np.asarray(M)]
    return _rank_mod(rows, p)


def _rank_mod(rows, p):
    # Gaussian elimination over Z/p, or fraction-free over Z when p is None
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][c]
        for r in range(rank + 1, len(rows)):
            f = rows[r][c]
            if not f:
                continue
            if p:
                g = f * pow(pv, -1, p)
                rows[r] = [(x - g * y) % p for x, y in zip(rows[r], rows[rank])]
            else:
                rows[r] = [pv * x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class AlternatingForm:
    """``P Omega P^T = blocks(ds) + 0``; rows of ``P`` are the new basis."""

    P: np.ndarray
    ds: tuple[int, ...]

    @property
    def n_pairs(self) -> int:
        return len(self.ds)

    @property
    def kernel_rows(self) -> range:
        return range(2 * len(self.ds), self.P.shape[0])


def alternating_normal_form(Omega) -> AlternatingForm:
    M = [list(map(int, r)) for r in np.asarray(Omega)]
    n = len(M)
    P = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap(i, j):
        if i == j:
            return
        M[i], M[j] = M[j], M[i]
        for r in M:
            r[i], r[j] = r[j], r[i]
        P[i], P[j] = P[j], P[i]

    def add(i, j, q):
        # b_i <- b_i + q b_j (congruence on M)
        if q == 0:
            return
        M[i] = [x + q * y for x, y in zip(M[i], M[j])]
        for r in M:
            r[i] += q * r[j]
        P[i] = [x + q * y for x, y in zip(P[i], P[j])]

    def negate(i):
        M[i] = [-x for x in M[i]]
        for r in M:
            r[i] = -r[i]
        P[i] = [-x for x in P[i]]

    ds = []
    k = 0
    while k + 1 < n:
        entries = [(abs(M[i][j]), i, j) for i in range(k, n) for j in range(i + 1, n) if M[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap(k, i)
        # j may have moved if it was k
        j = i if j == k else j
        swap(k + 1, j)
        if M[k][k + 1] < 0:
            negate(k + 1)
        while True:
            d = M[k][k + 1]
            for j in range(k + 2, n):
                add(j, k + 1, -(M[k][j] // d))
                add(j, k, M[k + 1][j] // d)
            rest = [(abs(M[r][j]), r, j) for r in (k, k + 1) for j in range(k + 2, n) if M[r][j]]
            if not rest:
                break
            # a smaller remainder exists: move it into the pivot slot and retry
            _, r, j = min(rest)
            if r == k + 1:
                swap(k, k + 1)
                negate(k + 1)
            swap(k + 1, j)
            if M[k][k + 1] < 0:
                negate(k + 1)
        ds.append(M[k][k + 1])
        k += 2
    Pm = np.array(P, dtype=np.int64)
    form = AlternatingForm(Pm, tuple(ds))
    _check_form(np.asarray(Omega, dtype=np.int64), form)
    return form


def _check_form(Omega, form: AlternatingForm) -> None:
    P = form.P
    B = P @ Omega @ P.T
    n = len(P)
    target = np.zeros_like(B)
    for i, d in enumerate(form.ds):
        target[2 * i, 2 * i + 1], target[2 * i + 1, 2 * i] = d, -d
    det = round(abs(np.linalg.det(P.astype(float)))) if n else 1
    if not np.array_equal(B, target) or det != 1:
        raise NormalFormFailure("congruence did not reach block form")


# -- central characters and representations ---------------------------------------

@dataclass(frozen=True)
class CentralCharacter:
    """``nth_powers[i] = rho(N b_i)``; ``kernel_values[j] = rho(kappa_j)`` (optional)."""

    nth_powers: tuple[complex, ...]
    kernel_values: tuple[complex | None, ...] = ()

    def __post_init__(self):
        vals = [v for v in self.nth_powers] + [v for v in self.kernel_values if v is not None]
        if any(v == 0 for v in vals):
            raise ZeroScalar("central character values must be nonzero")

    def to_json(self) -> dict:
        return {
            "nth_powers": [[complex(v).real, complex(v).imag] for v in self.nth_powers],
            "kernel_values": [None if v is None else [complex(v).real, complex(v).imag]
                              for v in self.kernel_values],
        }

    @classmethod
    def from_json(cls, data) -> "CentralCharacter":
        return cls(tuple(complex(*v) for v in data["nth_powers"]),
                   tuple(None if v is None else complex(*v) for v in data.get("kernel_values", [])))


@dataclass(eq=False)
class MatrixRep:
    root: RootOfUnity
    Omega: np.ndarray
    images: list[np.ndarray]
    scalars: list[complex]
    form: AlternatingForm
    _inverses: list[np.ndarray] = field(default_factory=list, repr=False)

    @property
    def dim(self) -> int:
        return self.images[0].shape[0] if self.images else 1

    @property
    def N(self) -> int:
        return self.root.N

    def inverse_image(self, i: int) -> np.ndarray:
        if not self._inverses:
            self._inverses = [np.linalg.inv(m) for m in self.images]
        return self._inverses[i]

    def evaluate(self, coords: Sequence[int]) -> np.ndarray:
        """``rho`` of the lattice vector ``sum coords[i] b_i``."""
        n = len(self.images)
        if len(coords) != n:
            raise ValueError("coordinate length does not match the basis")
        doubled = 0
        for i in range(n):
            for j in range(i + 1, n):
                doubled -= int(coords[i]) * int(coords[j]) * int(self.Omega[i, j])
        out = np.eye(self.dim, dtype=complex) * self.root.power(doubled)
        for i, c in enumerate(coords):
            if c:
                base = self.images[i] if c > 0 else self.inverse_image(i)
                out = out @ np.linalg.matrix_power(base, abs(int(c)))
        return out

    def to_json(self) -> dict:
        return {
            "N": self.root.N,
            "k": self.root.k,
            "omega": self.Omega.tolist(),
            "images": [[[z.real, z.imag] for z in m.ravel()] for m in self.images],
            "dim": self.dim,
            "scalars": [[complex(z).real, complex(z).imag] for z in self.scalars],
        }

    @classmethod
    def from_json(cls, data) -> "MatrixRep":
        root = RootOfUnity(data["N"], data.get("k", 1))
        Omega = np.array(data["omega"], dtype=np.int64)
        d = data["dim"]
        images = [np.array([complex(*z) for z in m]).reshape(d, d) for m in data["images"]]
        scalars = [complex(*z) for z in data.get("scalars", [])]
        return cls(root, Omega, images, scalars, alternating_normal_form(Omega))


def clock(m: int, zeta: complex) -> np.ndarray:
    return np.diag([zeta ** k for k in range(m)]).astype(complex)


def shift(m: int) -> np.ndarray:
    return np.roll(np.eye(m, dtype=complex), 1, axis=0)


def _as_root(N) -> RootOfUnity:
    if isinstance(N, RootOfUnity):
        return N
    N = int(N)
    if N % 2 == 0:
        raise EvenN(f"N={N} is even")
    return RootOfUnity(N)


def build_rep(Omega, N, character: CentralCharacter | None = None,
              kernel_roots: Sequence[int] | None = None) -> MatrixRep:
    """Clock-and-shift representation with the requested central character.

    ``kernel_roots`` picks, for kernel directions without a prescribed value,
    which N-th root of ``rho(N kappa)`` to use (default: the principal one).
    """
    if not isinstance(N, RootOfUnity) and int(N) % 2 == 0:
        raise EvenN(f"N={N} is even")
    root = _as_root(N)
    Omega = np.asarray(Omega, dtype=np.int64)
    if not np.array_equal(Omega, -Omega.T):
        raise NormalFormFailure("Omega is not antisymmetric")
    n = len(Omega)
    if character is None:
        character = CentralCharacter((1,) * n)
    if len(character.nth_powers) != n:
        raise ValueError("character length does not match the basis")
    form = alternating_normal_form(Omega)
    P = form.P
    Q = np.rint(np.linalg.inv(P.astype(float))).astype(np.int64)
    if not np.array_equal(Q @ P, np.eye(n, dtype=np.int64)):
        raise NormalFormFailure("basis change is not unimodular")
    NN = root.N
    # block generators of the new basis c_j
    sizes = [NN // math.gcd(d, NN) for d in form.ds]
    dim = reduce(lambda a, b: a * b, sizes, 1)

    def embed(k, mat):
        mats = [np.eye(s, dtype=complex) for s in sizes]
        mats[k] = mat
        return reduce(np.kron, mats, np.eye(1, dtype=complex))

    c_images: list[np.ndarray] = []
    for k, d in enumerate(form.ds):
        zeta = root.power(2 * d)
        c_images.append(embed(k, clock(sizes[k], zeta)))
        c_images.append(embed(k, shift(sizes[k])))
    # scalar parameters: lambda_j^N = prod_i chi_i^{P_ji}
    nth = np.array(character.nth_powers, dtype=complex)
    lambdas = []
    kvals = list(character.kernel_values) + [None] * n
    for j in range(n):
        target = complex(np.prod([nth[i] ** int(P[j, i]) for i in range(n)]))
        if target == 0:
            raise ZeroScalar("central character produces a zero scalar")
        if j >= 2 * form.n_pairs:
            given = kvals[j - 2 * form.n_pairs]
            if given is not None:
                if abs(given ** NN - target) > 1e-8 * max(1.0, abs(target)):
                    raise ValueError("kernel value inconsistent with the N-th power data")
                lambdas.append(complex(given))
                continue
            r = 0 if kernel_roots is None else kernel_roots[j - 2 * form.n_pairs]
            lambdas.append(_nth_root(target, NN) * np.exp(2j * np.pi * r / NN))
            continue
        # block generators: C^N = S^N = 1, so lambda^N carries the whole value
        lambdas.append(_nth_root(target, NN))
    full = [lam * (c_images[j] if j < len(c_images) else np.eye(dim, dtype=complex))
            for j, lam in enumerate(lambdas)]
    # omega on the new basis
    Bc = P @ Omega @ P.T
    images = []
    for i in range(n):
        coords = Q[i]
        doubled = 0
        for a in range(n):
            for b in range(a + 1, n):
                doubled -= int(coords[a]) * int(coords[b]) * int(Bc[a, b])
        m = np.eye(dim, dtype=complex) * root.power(doubled)
        for j, c in enumerate(coords):
            if c:
                base = full[j] if c > 0 else np.linalg.inv(full[j])
                m = m @ np.linalg.matrix_power(base, abs(int(c)))
        images.append(m)
    return MatrixRep(root, Omega, images, lambdas, form)


def _nth_root(z: complex, N: int) -> complex:
    return complex(z) ** (1.0 / N) if complex(z) != 0 else 0j


def verify_rep(rho: MatrixRep) -> float:
    """Max norm of ``rho(b_i) rho(b_j) - A^omega_ij rho(b_j) rho(b_i)``."""
    worst = 0.0
    n = len(rho.images)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = rho.images[i], rho.images[j]
            ph = rho.root.power(2 * int(rho.Omega[i, j]))
            worst = max(worst, float(np.linalg.norm(a @ b - ph * b @ a)))
    return worst


def irreducibility_rank(rho: MatrixRep, max_len: int | None = None) -> int:
    """Dimension of the span of all products of the images and their inverses.

    Words are extended until the span stops growing (at most ``d^2`` rounds),
    or up to ``max_len`` letters when given.
    """
    d = rho.dim
    gens = list(rho.images) + [rho.inverse_image(i) for i in range(len(rho.images))]
    if max_len is None:
        max_len = d * d
    Q = np.eye(d, dtype=complex).reshape(1, -1) / math.sqrt(d)
    frontier = [np.eye(d, dtype=complex)]
    for _ in range(max_len):
        if Q.shape[0] == d * d or not frontier:
            break
        cands = [m @ g for m in frontier for g in gens]
        C = np.array([c.ravel() / np.linalg.norm(c) for c in cands])
        # two projection passes keep the residual orthogonal to Q numerically
        R = C - (C @ Q.conj().T) @ Q
        R = R - (R @ Q.conj().T) @ Q
        keep = np.linalg.norm(R, axis=1) > 1e-8
        if not keep.any():
            break
        _, sv, vh = np.linalg.svd(R[keep], full_matrices=False)
        new = vh[sv > 1e-8 * max(1.0, sv[0])]
        Q = np.vstack([Q, new])
        # the span is closed once the new directions map back into it
        frontier = [v.reshape(d, d) for v in new]
    return Q.shape[0]


def scalar_value(M: np.ndarray, tol: float = SCHUR_TOL) -> complex:
    """The scalar ``c`` with ``M = c I``; raises NotScalar otherwise."""
    d = M.shape[0]
    c = complex(np.trace(M)) / d
    resid = off_scalar_residual(M)
    if resid > tol:
        raise NotScalar(f"off-scalar residual {resid:.3e} exceeds {tol:.0e}")
    return c


def off_scalar_residual(M: np.ndarray) -> float:
    d = M.shape[0]
    c = complex(np.trace(M)) / d
    return float(np.linalg.norm(M - c * np.eye(d)) / max(1.0, abs(c)))


def central_character(rho: MatrixRep, extra: Sequence[Sequence[int]] = ()) -> dict:
    """Schur scalars of ``rho(N b_i)``, kernel directions and ``extra`` lattice vectors."""
    nth = [scalar_value(np.linalg.matrix_power(m, rho.N)) for m in rho.images]
    kern = []
    for j in rho.form.kernel_rows:
        kern.append(scalar_value(rho.evaluate([int(v) for v in rho.form.P[j]])))
    out = {"nth_powers": nth, "kernel_values": kern}
    if extra:
        out["extra"] = [scalar_value(rho.evaluate(v)) for v in extra]
    return out


def lattice_coordinates(basis: Sequence[Sequence[int]], w: Sequence[int]) -> list[int]:
    """Integer coordinates of ``w`` in ``basis``; raises if ``w`` is not in the lattice."""
    B = np.array(basis, dtype=float).T
    sol, *_ = np.linalg.lstsq(B, np.array(w, dtype=float), rcond=None)
    coords = [int(round(x)) for x in sol]
    back = np.array(basis, dtype=np.int64).T @ np.array(coords, dtype=np.int64)
    if not np.array_equal(back, np.array(w, dtype=np.int64)):
        raise ValueError(f"{list(w)} is not in the lattice spanned by the basis")
    return coords


def irreducible_blocks(images: Sequence[np.ndarray], rng: np.random.Generator | None = None,
                       tol: float = 1e-7) -> list[np.ndarray]:
    """Orthonormal bases of invariant subspaces from eigenspaces of a commutant element.

    Assumes the representation is semisimple (true for the reps built here).
    """
    rng = rng or np.random.default_rng(0)
    d = images[0].shape[0]
    eye = np.eye(d)
    # X M - M X = 0  <=>  (I kron M^T - M kron I) vec(X) = 0  (row-major vec)
    rows = [np.kron(eye, m.T) - np.kron(m, eye) for m in images]
    K = np.vstack(rows)
    _, sv, vh = np.linalg.svd(K)
    null = vh[np.sum(sv > tol * max(1.0, sv.max(initial=0))):].conj()
    if null.shape[0] <= 1:
        return [eye.astype(complex)]
    coeffs = rng.normal(size=null.shape[0]) + 1j * rng.normal(size=null.shape[0])
    X = (coeffs @ null).reshape(d, d)
    vals, vecs = np.linalg.eig(X)
    blocks = []
    used = np.zeros(d, dtype=bool)
    for i in range(d):
        if used[i]:
            continue
        group = np.abs(vals - vals[i]) < 1e-6 * max(1.0, abs(vals[i]))
        used |= group
        q, _ = np.linalg.qr(vecs[:, group])
        blocks.append(q)
    return blocks


def restrict(images: Sequence[np.ndarray], block: np.ndarray) -> list[np.ndarray]:
    """Matrices of the images on an invariant subspace spanned by ``block``'s columns."""
    pinv = np.linalg.pinv(block)
    return [pinv @ m @ block for m in images]
