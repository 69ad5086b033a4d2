"""Holonomy from shear weights, trace polynomials, the punctured-torus quantum
trace, and the root-of-unity shadow pipeline.

Holonomy convention.  Positions are triangle sides ``(t, s)``.  Crossing the
edge from the first listed side of its gluing to the second multiplies by
``E(s_e) = [[0, s_e], [-1/s_e, 0]]`` (``E(s_e)^-1 = E(-s_e)`` the other way);
rotating counterclockwise inside a triangle to the next side multiplies by
``TURN = [[0, 1], [-1, -1]]`` with ``TURN^3 = 1``.  A closed path of such moves
defines an element of ``SL2`` that depends only on its homotopy class.

Since ``E(s) TURN = -diag(s, 1/s) [[1, 1], [0, 1]]``, the loop around a
puncture is upper triangular and its eigenvalue is the signed product of
the square roots met along the way; both numbers are computed independently.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from . import qrep
from .charvar import GroupWord, SL2Rep, christoffel_word, word_matrix
from .exactalg import (A, QDIFF, LaurentHalf, RootOfUnity, chebyshev, eval_at_root,
                       exact_divide)
from .traintrack import (QTorusElement, Triangulation, build_train_track, puncture_vector,
                         weight_basis)

TURN = np.array([[0, 1], [-1, -1]], dtype=complex)
EIGEN_TOL = 1e-8
SHADOW_TOL = 1e-6
GENERIC_MARGIN = 1e-6


class ZeroWeight(ValueError):
    pass


class ConventionMismatch(RuntimeError):
    pass


class UnsupportedCurve(ValueError):
    pass


class SearchExhausted(RuntimeError):
    pass


class NonScalar(RuntimeError):
    pass


class NonGeneric(ValueError):
    pass


# -- sparse Laurent polynomials in the square roots ----------------------------------

class SPoly:
    """Sparse Laurent polynomial with integer coefficients in ``s_0..s_{n-1}``."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, n, c):
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n, i, power=1, coef=1):
        k = [0] * n
        k[i] = power
        return cls(n, {tuple(k): coef})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SPoly(self.n, out)

    def __neg__(self):
        return SPoly(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return SPoly(self.n, {k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return SPoly(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SPoly) and self.n == other.n and self.terms == other.terms

    def __call__(self, s: Sequence[complex]) -> complex:
        s = np.asarray(s, dtype=complex)
        return complex(sum(v * np.prod(s ** np.array(k)) for k, v in self.terms.items()))

    def to_json(self) -> list:
        return [[list(k), v] for k, v in sorted(self.terms.items())]

    def __repr__(self):
        parts = []
        for k, v in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"s{i}" + (f"^{e}" if e != 1 else "") for i, e in enumerate(k) if e)
            parts.append(f"{v}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) or "0"


# -- shear data and paths --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ShearData:
    triangulation: Triangulation
    x: tuple[complex, ...]
    s: tuple[complex, ...]

    def __post_init__(self):
        if len(self.x) != self.triangulation.n_edges or len(self.s) != len(self.x):
            raise ValueError("one weight and one square root per edge are required")
        for e, (xe, se) in enumerate(zip(self.x, self.s)):
            if xe == 0 or se == 0:
                raise ZeroWeight(f"edge {e} has zero weight")
            if abs(se * se - xe) > 1e-12 * max(1.0, abs(xe)):
                raise ValueError(f"s_{e}^2 does not match x_{e}")

    @classmethod
    def from_roots(cls, T: Triangulation, s: Sequence[complex]) -> "ShearData":
        s = tuple(complex(v) for v in s)
        return cls(T, tuple(v * v for v in s), s)

    @classmethod
    def from_weights(cls, T: Triangulation, x: Sequence[complex],
                     signs: Sequence[int] | None = None) -> "ShearData":
        signs = signs or [1] * len(x)
        s = tuple(sg * np.sqrt(complex(v)) for sg, v in zip(signs, x))
        return cls(T, tuple(complex(v) for v in x), s)

    def flip(self, e: int) -> "ShearData":
        s = list(self.s)
        s[e] = -s[e]
        return ShearData(self.triangulation, self.x, tuple(s))

    def to_json(self) -> dict:
        return {"x": [[v.real, v.imag] for v in self.x], "s": [[v.real, v.imag] for v in self.s]}


def random_shear(T: Triangulation, rng: np.random.Generator) -> ShearData:
    """Square roots of modulus in [0.5, 2] with uniform argument, avoiding |Tr P| near 2."""
    while True:
        mod = np.exp(rng.uniform(np.log(0.5), np.log(2.0), size=T.n_edges))
        arg = rng.uniform(-np.pi, np.pi, size=T.n_edges)
        sd = ShearData.from_roots(T, mod * np.exp(1j * arg))
        try:
            genericity_guard(sd)
        except NonGeneric:
            continue
        return sd


# a path step is ("x", edge, forward) or ("r", k) for k counterclockwise rotations

def _cross(T: Triangulation, pos):
    t, side = pos
    e = T.triangles[t][side]
    first, second = T.edge_sides[e]
    if pos == first:
        return ("x", e, True), second
    return ("x", e, False), first


def _rotate(pos, target_side):
    k = (target_side - pos[1]) % 3
    return ("r", k), (pos[0], target_side)


def _tree_paths(T: Triangulation):
    """Paths from the base position ``(0, 0)`` to a landing side in each triangle."""
    paths = {0: ([], (0, 0))}
    tree_edges = set()
    queue = deque([0])
    while queue:
        t = queue.popleft()
        steps, pos = paths[t]
        for side in range(3):
            rot, p = _rotate(pos, side)
            step, q = _cross(T, p)
            if q[0] not in paths:
                paths[q[0]] = (steps + [rot, step], q)
                tree_edges.add(step[1])
                queue.append(q[0])
    return paths, tree_edges


def _invert(steps):
    out = []
    for st in reversed(steps):
        if st[0] == "x":
            out.append(("x", st[1], not st[2]))
        else:
            out.append(("r", (-st[1]) % 3))
    return out


@lru_cache(maxsize=None)
def generator_paths(T: Triangulation) -> tuple[tuple, ...]:
    """Closed paths at the base position, one per edge outside a dual spanning tree."""
    paths, tree = _tree_paths(T)
    gens = []
    for e in sorted(T.edge_sides):
        if e in tree:
            continue
        (t, side), _ = T.edge_sides[e]
        steps, pos = paths[t]
        rot, p = _rotate(pos, side)
        step, q = _cross(T, p)
        back, land = paths[q[0]]
        rot2, _ = _rotate(q, land[1])
        gens.append(tuple(steps + [rot, step, rot2] + _invert(back)))
    return tuple(gens)


@lru_cache(maxsize=None)
def puncture_path(T: Triangulation, i: int) -> tuple:
    """Loop once around puncture ``i`` (closed at a side of the first corner there)."""
    corners = sorted(c for c, p in T.corner_puncture.items() if p == i)
    if not corners:
        raise IndexError(f"puncture {i} out of range")
    start = corners[0]  # position (t, c) circles corner c of triangle t
    pos = start
    steps = []
    while True:
        step, q = _cross(T, pos)
        rot, pos = _rotate(q, (q[1] + 1) % 3)
        steps += [step, rot]
        if pos == start:
            return tuple(steps)


def _edge_matrix(s: complex, forward: bool) -> np.ndarray:
    s = s if forward else -s
    return np.array([[0, s], [-1 / s, 0]], dtype=complex)


def path_matrix(sd: ShearData, steps) -> np.ndarray:
    M = np.eye(2, dtype=complex)
    turns = [np.eye(2, dtype=complex), TURN, TURN @ TURN]
    for st in steps:
        if st[0] == "x":
            M = M @ _edge_matrix(sd.s[st[1]], st[2])
        else:
            M = M @ turns[st[1]]
    return M


def path_matrix_symbolic(T: Triangulation, steps) -> list[list[SPoly]]:
    n = T.n_edges
    zero, one = SPoly(n), SPoly.const(n, 1)
    M = [[one, zero], [zero, one]]
    turn = [[zero, one], [SPoly.const(n, -1), SPoly.const(n, -1)]]
    turns = [None, turn, _smul(turn, turn)]
    for st in steps:
        if st[0] == "x":
            sign = 1 if st[2] else -1
            e = st[1]
            mat = [[zero, SPoly.var(n, e, 1, sign)], [SPoly.var(n, e, -1, -sign), zero]]
            M = _smul(M, mat)
        elif st[1]:
            M = _smul(M, turns[st[1]])
    return M


def _smul(X, Y):
    return [[X[i][0] * Y[0][j] + X[i][1] * Y[1][j] for j in range(2)] for i in range(2)]


def holonomy(sd: ShearData) -> SL2Rep:
    """SL2 lift of the pleated-surface holonomy on the free generators."""
    return SL2Rep(tuple(path_matrix(sd, g) for g in generator_paths(sd.triangulation)))


def puncture_eigenvalue(sd: ShearData, i: int) -> complex:
    """Eigenvalue of the puncture loop on its invariant line, computed two ways."""
    T = sd.triangulation
    if not 0 <= i < T.punctures:
        raise IndexError(f"puncture {i} out of range")
    steps = puncture_path(T, i)
    M = path_matrix(sd, steps)
    eig = np.linalg.eigvals(M)
    prod = complex(1)
    for st in steps:
        if st[0] == "x":
            prod *= -(sd.s[st[1]] if st[2] else -sd.s[st[1]])
    # the invariant line is the first basis vector, whose eigenvalue is M[0, 0]
    if abs(M[1, 0]) > EIGEN_TOL * max(1.0, np.abs(M).max()):
        raise ConventionMismatch("puncture loop is not upper triangular")
    best = min(eig, key=lambda z: abs(z - prod))
    if abs(best - prod) > EIGEN_TOL * max(1.0, abs(prod)) or abs(M[0, 0] - prod) > \
            EIGEN_TOL * max(1.0, abs(prod)):
        raise ConventionMismatch(f"eigenvalue {best} differs from signed product {prod}")
    return complex(best)


def genericity_guard(sd: ShearData) -> None:
    for i in range(sd.triangulation.punctures):
        lam = puncture_eigenvalue(sd, i)
        tr = lam + 1 / lam
        if min(abs(tr - 2), abs(tr + 2)) < GENERIC_MARGIN:
            raise NonGeneric(f"puncture {i} has trace {tr:.6g}, too close to +-2")


# -- curves on the punctured torus ------------------------------------------------

def _is_punctured_torus(T: Triangulation) -> bool:
    return T.genus == 1 and T.punctures == 1


def pt_curve_word(p: int, q: int) -> GroupWord:
    """Word in the holonomy generators for the (p, q) curve of the punctured torus.

    ``a = G0^-1`` and ``b = G1`` where ``G0, G1`` are the generator paths; with
    these, ``a``, ``b`` and ``ab`` avoid edges 2, 1 and 0 respectively.
    """
    w = christoffel_word(p, q)
    return GroupWord(tuple((0, -e) if g == 0 else (1, e) for g, e in w.letters))


def curve_label(K) -> str:
    if isinstance(K, str):
        return K
    return f"({K[0]},{K[1]})"


def parse_curve(text: str):
    text = text.strip()
    if text.upper().startswith("P"):
        return text.upper()
    try:
        p, q = (int(v) for v in text.strip("()").split(","))
    except ValueError as exc:
        raise UnsupportedCurve(f"cannot parse curve {text!r}") from exc
    return (p, q)


def curve_steps(T: Triangulation, K) -> tuple:
    """Concatenated path for a supported curve label."""
    if isinstance(K, str):
        if not K.startswith("P"):
            raise UnsupportedCurve(K)
        idx = int(K[1:] or 0)
        if not 0 <= idx < T.punctures:
            raise UnsupportedCurve(f"no puncture {idx}")
        return puncture_path(T, idx)
    if not _is_punctured_torus(T):
        raise UnsupportedCurve("(p, q) curves are only supported on the punctured torus")
    p, q = K
    if math.gcd(p, q) != 1:
        raise UnsupportedCurve(f"({p}, {q}) is not primitive")
    gens = generator_paths(T)
    steps = []
    for g, e in pt_curve_word(p, q).letters:
        steps += list(gens[g]) if e == 1 else _invert(gens[g])
    return tuple(steps)


def curve_trace(sd: ShearData, K) -> complex:
    """Trace of the SL2 lift on the curve, from the generator matrices."""
    if isinstance(K, str):
        return complex(np.trace(path_matrix(sd, curve_steps(sd.triangulation, K))))
    if not _is_punctured_torus(sd.triangulation):
        raise UnsupportedCurve("(p, q) curves are only supported on the punctured torus")
    if math.gcd(*K) != 1:
        raise UnsupportedCurve(f"{K} is not primitive")
    return complex(np.trace(word_matrix(pt_curve_word(*K), holonomy(sd))))


@lru_cache(maxsize=None)
def classical_trace_poly(K, T: Triangulation) -> SPoly:
    M = path_matrix_symbolic(T, curve_steps(T, K))
    return M[0][0] + M[1][1]


def spin_sign(K) -> int:
    """``(-1)^sigma(K)`` for the spin structure carried by the holonomy lift.

    It is the quadratic form with value 1 on both generators, so every
    primitive (p, q) curve has monodromy 1; peripheral loops have monodromy 0.
    """
    if isinstance(K, str):
        return 1
    p, q = K
    return -1 if (p + q + p * q) % 2 else 1


def spinned_trace(sd: ShearData, K) -> complex:
    return spin_sign(K) * curve_trace(sd, K)


# -- quantum trace on the punctured torus ----------------------------------------------

PT_CURVES = ((1, 0), (0, 1), (1, 1))
SEARCH_SHIFTS = (0, 1, -1, 2, -2)


@dataclass(frozen=True)
class QuantumTrace:
    Y: tuple[QTorusElement, QTorusElement, QTorusElement]
    curves: tuple  # curve label attached to each Y_i
    shifts: tuple  # doubled A-exponents found for the coefficients of Y_1, Y_2
    candidates_tried: int


def _monomial_vectors(tt, poly: SPoly):
    out = []
    for k, c in sorted(poly.terms.items()):
        w = tt.from_edge_coordinates(k)
        out.append((w, c))
    return out


def _relation_residual(Y, i):
    a, b, c = Y[i % 3], Y[(i + 1) % 3], Y[(i + 2) % 3]
    return (a * b).scale(A) - (b * a).scale(A ** -1) - c.scale(QDIFF)


@lru_cache(maxsize=None)
def quantum_trace_pt(T: Triangulation, shifts: tuple[int, ...] = SEARCH_SHIFTS) -> QuantumTrace:
    """Constraint search for the images of the three generator curves.

    Supports and specializations come from the classical trace polynomials;
    coefficients ``c * A^(j/2)`` with ``j`` in ``shifts`` are tried for the
    first two elements, the third is solved from the first relation, and all
    three relations plus the specialization are checked exactly.
    """
    if not _is_punctured_torus(T):
        raise UnsupportedCurve("the quantum trace search is implemented for the punctured torus")
    tt = build_train_track(T)
    polys = {K: classical_trace_poly(K, T) for K in PT_CURVES}
    supports = {K: _monomial_vectors(tt, polys[K]) for K in PT_CURVES}
    for K, sup in supports.items():
        if len(sup) > 4 or any(abs(v) > 1 for w, _ in sup for v in w):
            raise SearchExhausted(f"support of {K} lies outside the search bound")
    tried = 0
    n1 = 3
    combos = sorted(itertools.product(shifts, repeat=2 * n1),
                    key=lambda js: (sum(abs(j) for j in js), js))
    # smallest total shift first, across every assignment of curves to labels
    for js in combos:
        for order in itertools.permutations(PT_CURVES):
            K1, K2, K3 = order
            s1, s2 = supports[K1], supports[K2]
            if len(s1) != n1 or len(s2) != n1:
                raise SearchExhausted("trace polynomials do not have three terms")
            tried += 1
            y1 = QTorusElement(tt, {w: LaurentHalf.half(j) * c for (w, c), j in zip(s1, js)})
            y2 = QTorusElement(tt, {w: LaurentHalf.half(j) * c for (w, c), j in zip(s2, js[n1:])})
            lhs = (y1 * y2).scale(A) - (y2 * y1).scale(A ** -1)
            terms = {}
            for w, c in lhs.terms.items():
                q = exact_divide(c, QDIFF)
                if q is None:
                    break
                terms[w] = q
            else:
                y3 = QTorusElement(tt, terms)
                if y3.specialize(1) != dict(supports[K3]):
                    continue
                Y = (y1, y2, y3)
                if all(_relation_residual(Y, i).is_zero() for i in (1, 2)):
                    return QuantumTrace(Y, order, js, tried)
    raise SearchExhausted(f"no element found after {tried} candidates")


def relation_residuals(qt: QuantumTrace) -> list[QTorusElement]:
    return [_relation_residual(qt.Y, i) for i in range(3)]


# -- shadow pipeline ------------------------------------------------------------------

@dataclass
class CurveRecord:
    curve: str
    label: str
    lam: complex
    spinned_target: complex
    raw_target: complex
    error: float
    raw_error: float
    schur_residual: float

    def to_json(self):
        return {
            "curve": self.curve,
            "label": self.label,
            "lambda": [self.lam.real, self.lam.imag],
            "target": [self.spinned_target.real, self.spinned_target.imag],
            "raw_target": [self.raw_target.real, self.raw_target.imag],
            "error": self.error,
            "raw_error": self.raw_error,
            "schur_residual": self.schur_residual,
        }


@dataclass
class PunctureRecord:
    index: int
    p: complex
    h: complex
    chebyshev_value: complex
    chebyshev_from_power: complex
    target: complex
    error: float
    bookkeeping_error: float

    def to_json(self):
        return {
            "index": self.index,
            "p": [self.p.real, self.p.imag],
            "h": [self.h.real, self.h.imag],
            "T_N_p": [self.chebyshev_value.real, self.chebyshev_value.imag],
            "T_N_p_from_power": [self.chebyshev_from_power.real, self.chebyshev_from_power.imag],
            "target": [self.target.real, self.target.imag],
            "error": self.error,
            "bookkeeping_error": self.bookkeeping_error,
        }


@dataclass
class ShadowReport:
    N: int
    dim: int
    relation_residual: float
    irreducibility_rank: int
    blocks: int
    curves: list[CurveRecord] = field(default_factory=list)
    punctures: list[PunctureRecord] = field(default_factory=list)

    @property
    def max_error(self) -> float:
        errs = [c.error for c in self.curves] + [p.error for p in self.punctures]
        return max(errs, default=0.0)

    @property
    def max_schur(self) -> float:
        return max((c.schur_residual for c in self.curves), default=0.0)

    def to_json(self):
        return {
            "N": self.N,
            "dim": self.dim,
            "relation_residual": self.relation_residual,
            "irreducibility_rank": self.irreducibility_rank,
            "blocks": self.blocks,
            "curves": [c.to_json() for c in self.curves],
            "punctures": [p.to_json() for p in self.punctures],
        }


def _matrix_poly(coeffs, M):
    # Horner on matrices; coefficients low to high
    out = np.zeros_like(M)
    eye = np.eye(M.shape[0], dtype=complex)
    for c in reversed(coeffs):
        out = out @ M + c * eye
    return out


def element_matrix(rho: qrep.MatrixRep, basis, elem: QTorusElement) -> np.ndarray:
    out = np.zeros((rho.dim, rho.dim), dtype=complex)
    for w, c in elem.terms.items():
        coords = qrep.lattice_coordinates(basis, w)
        out = out + complex(np.asarray(_eval_coef(c, rho.root))) * rho.evaluate(coords)
    return out


def _eval_coef(c, root):
    return eval_at_root(c, root) if isinstance(c, LaurentHalf) else complex(c)


def shadow_character(sd: ShearData, basis) -> qrep.CentralCharacter:
    """``rho(N b) = s^k(b)``: the Frobenius image of each basis monomial."""
    tt = build_train_track(sd.triangulation)
    vals = []
    for b in basis:
        k = tt.edge_coordinates(b)
        vals.append(complex(np.prod([se ** ke for se, ke in zip(sd.s, k)])))
    return qrep.CentralCharacter(tuple(vals))


def shadow_pipeline(sd: ShearData, N: int | RootOfUnity, h_choice: int = -2,
                    block: int | None = None) -> ShadowReport:
    """Build the representation with the shear central character and compare.

    ``h_choice`` is the doubled exponent of the power of ``A`` multiplying the
    principal N-th root in the puncture scalar (default ``A^-1``).
    """
    T = sd.triangulation
    if not _is_punctured_torus(T):
        raise UnsupportedCurve("the shadow pipeline is implemented for the punctured torus")
    root = N if isinstance(N, RootOfUnity) else RootOfUnity(int(N))
    genericity_guard(sd)
    tt = build_train_track(T)
    basis = weight_basis(tt)
    Omega = qrep.omega_matrix(tt, basis)
    chi = shadow_character(sd, basis)
    form = qrep.alternating_normal_form(Omega)
    pv = puncture_vector(tt, 0)
    # kernel direction value: h = A^(h_choice/2) * principal root of h^N
    kernel_vals = []
    for j in form.kernel_rows:
        kvec = [int(v) for v in form.P[j] @ np.array(basis)]
        if list(kvec) == list(pv) or list(kvec) == [-v for v in pv]:
            sgn = 1 if list(kvec) == list(pv) else -1
            hN = complex(np.prod([chi.nth_powers[i] ** int(form.P[j][i])
                                  for i in range(len(basis))])) ** sgn
            h = root.power(h_choice) * qrep._nth_root(hN, root.N)
            kernel_vals.append(h ** sgn)
        else:
            kernel_vals.append(None)
    chi = qrep.CentralCharacter(chi.nth_powers, tuple(kernel_vals))
    rho = qrep.build_rep(Omega, root, chi)
    resid = qrep.verify_rep(rho)
    irr = qrep.irreducibility_rank(rho)
    images = rho.images
    blocks = [np.eye(rho.dim, dtype=complex)]
    if irr != rho.dim ** 2:
        blocks = qrep.irreducible_blocks(images)
    B = blocks[block or 0]
    qt = quantum_trace_pt(T)
    report = ShadowReport(root.N, B.shape[1], resid, irr, len(blocks))
    cheb = chebyshev(root.N).coeffs
    pinv = np.linalg.pinv(B)
    for idx, (Y, K) in enumerate(zip(qt.Y, qt.curves)):
        M = pinv @ element_matrix(rho, basis, Y) @ B
        TN = _matrix_poly(cheb, M)
        schur = qrep.off_scalar_residual(TN)
        if schur > qrep.SCHUR_TOL:
            raise NonScalar(f"T_N(Y_{idx + 1}) is not scalar (residual {schur:.2e})")
        lam = complex(np.trace(TN)) / TN.shape[0]
        raw = -curve_trace(sd, K)
        target = spin_sign(K) * raw
        report.curves.append(CurveRecord(curve_label(K), f"Y{idx + 1}", lam, target, raw,
                                         abs(lam - target), abs(lam - raw), schur))
    # puncture: p = rho(H) + rho(H)^-1 with H the puncture monomial
    Hm = pinv @ rho.evaluate(qrep.lattice_coordinates(basis, pv)) @ B
    h = qrep.scalar_value(Hm)
    p = h + 1 / h
    tn_p = complex(chebyshev(root.N)(p))
    from_power = h ** root.N + h ** -root.N
    target = -spinned_trace(sd, "P0")
    report.punctures.append(PunctureRecord(0, p, h, tn_p, from_power, target,
                                           abs(tn_p - target), abs(tn_p - from_power)))
    return report


def run_corpus(T: Triangulation, N: int, samples: int, seed: int) -> list[ShadowReport]:
    rng = np.random.default_rng(seed)
    return [shadow_pipeline(random_shear(T, rng), N) for _ in range(samples)]
