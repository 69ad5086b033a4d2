"""Ideal triangulations, their train tracks and the Chekhov-Fock quantum torus.

Conventions
-----------
Triangle ``t`` lists its edges on sides 0, 1, 2 in counterclockwise order.
Corner ``c`` of a triangle sits between side ``c-1`` and side ``c``.  Side
``i`` runs from corner ``i`` to corner ``i+1``, and gluings reverse it, so
gluing ``(t, i)`` to ``(u, j)`` identifies corner ``i`` of ``t`` with corner
``j+1`` of ``u``.

The train track has one branch per corner, indexed ``3*t + c``; it joins the
midpoints of the two sides adjacent to the corner.  The switch at an edge
sees, on the side ``(t, i)``, the branch of corner ``i`` on the left and that
of corner ``i+1`` on the right (looking from the edge into the triangle).

The Thurston form is the switch rule

    omega(a, b) = FORM_SCALE * sum over triangle sides of (a_L b_R - a_R b_L)

and the quantum torus product is ``alpha . beta = A^(omega/2) (alpha+beta)``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .exactalg import LaurentHalf, RootOfUnity, eval_at_root

# sign and scale of the switch rule: omega(2 delta_i, 2 delta_j) = -4 sigma_ij in edge
# coordinates, the exponent of the Chekhov-Fock relation at q = A^-2
FORM_SCALE = Fraction(-1)


class SchemaError(ValueError):
    pass


class EulerMismatch(ValueError):
    pass


class SelfLoopEdge(ValueError):
    pass


class RankMismatch(RuntimeError):
    pass


class TrackMismatch(ValueError):
    pass


WeightVector = tuple[int, ...]


@dataclass(frozen=True)
class Triangulation:
    genus: int
    punctures: int
    triangles: tuple[tuple[int, int, int], ...]
    gluings: tuple[tuple[int, int, int, int], ...]
    name: str = ""

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def n_edges(self) -> int:
        return len(self.gluings)

    @cached_property
    def edge_sides(self) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
        out = {}
        for t, s, u, r in self.gluings:
            out[self.triangles[t][s]] = ((t, s), (u, r))
        return out

    @cached_property
    def corner_puncture(self) -> dict[tuple[int, int], int]:
        """Puncture index of every corner ``(t, c)``."""
        parent = {(t, c): (t, c) for t in range(self.n_triangles) for c in range(3)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t, s, u, r in self.gluings:
            for x, y in (((t, s), (u, (r + 1) % 3)), ((t, (s + 1) % 3), (u, r))):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
        labels: dict = {}
        out = {}
        for key in sorted(parent):
            root = find(key)
            if root not in labels:
                labels[root] = len(labels)
            out[key] = labels[root]
        return out

    @property
    def vertex_count(self) -> int:
        return len(set(self.corner_puncture.values()))

    def edge_endpoints(self, e: int) -> tuple[int, int]:
        (t, s), _ = self.edge_sides[e]
        return self.corner_puncture[(t, s)], self.corner_puncture[(t, (s + 1) % 3)]

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "punctures": self.punctures,
            "triangles": [list(t) for t in self.triangles],
            "gluings": [list(g) for g in self.gluings],
        }


def load_triangulation(text: str | dict, distinct_endpoints: bool = False,
                       name: str = "") -> Triangulation:
    """Validate a triangulation document.

    ``distinct_endpoints=True`` additionally rejects edges whose two ends
    sit at the same puncture (not possible on a once-punctured surface).
    """
    if isinstance(text, str):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    else:
        data = text
    try:
        g = data["genus"]
        p = data["punctures"]
        triangles = data["triangles"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"missing field: {exc}") from exc
    if not (isinstance(g, int) and isinstance(p, int) and g >= 0 and p >= 1):
        raise SchemaError("genus must be >= 0 and punctures >= 1")
    if not isinstance(triangles, list) or not all(
        isinstance(t, list) and len(t) == 3 and all(isinstance(e, int) for e in t)
        for t in triangles
    ):
        raise SchemaError("triangles must be a list of integer triples")
    tris = tuple(tuple(t) for t in triangles)
    gluings = data.get("gluings")
    if gluings is None:
        where: dict[int, list[tuple[int, int]]] = {}
        for t, tri in enumerate(tris):
            for s, e in enumerate(tri):
                where.setdefault(e, []).append((t, s))
        gluings = []
        for e in sorted(where):
            if len(where[e]) != 2:
                raise SchemaError(f"edge {e} has {len(where[e])} incidences")
            (t, s), (u, r) = where[e]
            gluings.append([t, s, u, r])
    if not all(isinstance(x, list) and len(x) == 4 and all(isinstance(v, int) for v in x)
               for x in gluings):
        raise SchemaError("gluings must be a list of [t, s, t, s] quadruples")
    glue = tuple(tuple(x) for x in gluings)
    used = Counter()
    for t, s, u, r in glue:
        if not (0 <= t < len(tris) and 0 <= u < len(tris) and 0 <= s < 3 and 0 <= r < 3):
            raise SchemaError(f"gluing {[t, s, u, r]} out of range")
        if (t, s) == (u, r):
            raise SelfLoopEdge(f"side {(t, s)} is glued to itself")
        if tris[t][s] != tris[u][r]:
            raise SchemaError(f"gluing {[t, s, u, r]} joins different edge labels")
        used[(t, s)] += 1
        used[(u, r)] += 1
    if any(used[(t, s)] != 1 for t in range(len(tris)) for s in range(3)):
        raise SchemaError("every triangle side must be glued exactly once")
    edges = {tris[t][s] for t, s, _, _ in glue}
    if len(edges) != len(glue):
        raise SchemaError("edge labels must be unique per gluing")
    if len(tris) != 4 * g + 2 * p - 4 or len(glue) != 6 * g + 3 * p - 6:
        raise EulerMismatch(
            f"{len(tris)} triangles / {len(glue)} edges do not fit genus {g} with {p} punctures"
        )
    T = Triangulation(g, p, tris, glue, name)
    if T.vertex_count != p:
        raise EulerMismatch(f"gluing produces {T.vertex_count} punctures, expected {p}")
    if distinct_endpoints:
        for e in sorted(T.edge_sides):
            a, b = T.edge_endpoints(e)
            if a == b:
                raise SelfLoopEdge(f"edge {e} has both ends at puncture {a}")
    return T


def load_triangulation_file(path, **kw) -> Triangulation:
    with open(path) as fh:
        return load_triangulation(fh.read(), name=str(path), **kw)


# -- train track -----------------------------------------------------------------

@dataclass(frozen=True)
class Switch:
    edge: int
    # (left branch, right branch) on each of the two sides
    sides: tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class TrainTrack:
    triangulation: Triangulation
    switches: tuple[Switch, ...]

    @property
    def n_branches(self) -> int:
        return 3 * self.triangulation.n_triangles

    @cached_property
    def switch_matrix(self) -> list[list[int]]:
        rows = []
        for sw in self.switches:
            row = [0] * self.n_branches
            for b in sw.sides[0]:
                row[b] += 1
            for b in sw.sides[1]:
                row[b] -= 1
            rows.append(row)
        return rows

    @cached_property
    def form_matrix2(self) -> np.ndarray:
        """Integer matrix of ``2 * omega`` in branch coordinates."""
        W = np.zeros((self.n_branches, self.n_branches), dtype=object)
        scale2 = 2 * FORM_SCALE
        for sw in self.switches:
            for left, right in sw.sides:
                W[left, right] += scale2
                W[right, left] -= scale2
        if any(Fraction(v).denominator != 1 for v in W.ravel()):
            raise ValueError("form scale must make 2*omega integral")
        return W.astype(np.int64)

    def satisfies_switch(self, w: Sequence[int]) -> bool:
        if len(w) != self.n_branches:
            return False
        return all(sum(r * x for r, x in zip(row, w)) == 0 for row in self.switch_matrix)

    def edge_weight(self, w: Sequence[int], e: int) -> int:
        (t, s), _ = self.triangulation.edge_sides[e]
        return w[3 * t + s] + w[3 * t + (s + 1) % 3]

    def edge_coordinates(self, w: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.edge_weight(w, e) for e in sorted(self.triangulation.edge_sides))

    def from_edge_coordinates(self, k: Mapping[int, int] | Sequence[int]) -> WeightVector:
        """Branch weights with the given edge totals; requires even triangle sums."""
        if not isinstance(k, Mapping):
            k = dict(zip(sorted(self.triangulation.edge_sides), k))
        w = []
        for tri in self.triangulation.triangles:
            ks = [k.get(e, 0) for e in tri]
            if sum(ks) % 2:
                raise ValueError("edge weights must have even sum on every triangle")
            for c in range(3):
                w.append((ks[(c - 1) % 3] + ks[c] - ks[(c + 1) % 3]) // 2)
        return tuple(w)


def build_train_track(T: Triangulation) -> TrainTrack:
    switches = []
    for e in sorted(T.edge_sides):
        sides = tuple((3 * t + s, 3 * t + (s + 1) % 3) for t, s in T.edge_sides[e])
        switches.append(Switch(e, sides))
    return TrainTrack(T, tuple(switches))


# -- integer linear algebra ----------------------------------------------------

def integer_kernel(M: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Z-basis of ``{x : M x = 0}`` by unimodular column reduction (Hermite form)."""
    rows = [list(map(int, r)) for r in M]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    U = [[int(i == j) for j in range(n)] for i in range(n)]  # columns of U
    H = [r[:] for r in rows]
    pivot_col = 0

    def col_op(i, j, a, b, c, d):
        # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
        for R in H:
            R[i], R[j] = a * R[i] + b * R[j], c * R[i] + d * R[j]
        for R in U:
            R[i], R[j] = a * R[i] + b * R[j], c * R[i] + d * R[j]

    for r in range(len(H)):
        if pivot_col >= n:
            break
        for j in range(pivot_col + 1, n):
            x, y = H[r][pivot_col], H[r][j]
            if y == 0:
                continue
            g, s, t = _ext_gcd(x, y)
            # unimodular: [s t; -y/g x/g]
            col_op(pivot_col, j, s, t, -y // g, x // g)
        if H[r][pivot_col] != 0:
            if H[r][pivot_col] < 0:
                col_op(pivot_col, pivot_col, -1, 0, -1, 0)
            pivot_col += 1
    return [[U[i][j] for i in range(n)] for j in range(pivot_col, n)]


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s a + t b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _lll_free_cleanup(basis: list[list[int]]) -> list[list[int]]:
    # size-reduce greedily so basis entries stay small; keeps the lattice
    basis = [b[:] for b in basis]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                for sign in (1, -1):
                    cand = [x - sign * y for x, y in zip(basis[i], basis[j])]
                    if sum(v * v for v in cand) < sum(v * v for v in basis[i]):
                        basis[i] = cand
                        changed = True
    return basis


def weight_basis(tt: TrainTrack) -> list[WeightVector]:
    T = tt.triangulation
    basis = integer_kernel(tt.switch_matrix, tt.n_branches)
    expected = 6 * T.genus + 3 * T.punctures - 6
    if len(basis) != expected:
        raise RankMismatch(f"kernel rank {len(basis)} != {expected}")
    basis = _lll_free_cleanup(basis)
    return [tuple(b) for b in basis]


# -- Thurston form ---------------------------------------------------------------

def thurston_form(tt: TrainTrack, a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != tt.n_branches or len(b) != tt.n_branches:
        raise TrackMismatch("weight vectors do not match the track")
    two = 0
    W = tt.form_matrix2
    for i, ai in enumerate(a):
        if ai:
            row = W[i]
            two += int(ai) * sum(int(row[j]) * int(bj) for j, bj in enumerate(b) if bj)
    if two % 2:
        raise ValueError("Thurston form is not integral on these vectors")
    return two // 2


def corner_counts(T: Triangulation) -> dict[tuple[int, int], int]:
    """``a[i, j]``: corners where edge ``i`` is followed counterclockwise by edge ``j``."""
    a: Counter = Counter()
    for tri in T.triangles:
        for c in range(3):
            a[(tri[(c - 1) % 3], tri[c])] += 1
    return dict(a)


def corner_count_form(tt: TrainTrack, a: Sequence[int], b: Sequence[int]) -> int:
    """Independent evaluation through edge coordinates and corner counts.

    ``omega = FORM_SCALE * sum_ij sigma_ij k_i(a) k_j(b)`` with
    ``sigma_ij = a_ij - a_ji``.
    """
    T = tt.triangulation
    cc = corner_counts(T)
    ka = dict(zip(sorted(T.edge_sides), tt.edge_coordinates(a)))
    kb = dict(zip(sorted(T.edge_sides), tt.edge_coordinates(b)))
    total = Fraction(0)
    for i in ka:
        for j in kb:
            sigma = cc.get((i, j), 0) - cc.get((j, i), 0)
            if sigma:
                total += sigma * ka[i] * kb[j]
    value = FORM_SCALE * total
    if value.denominator != 1:
        raise ValueError("corner-count form is not integral")
    return int(value)


def even_edge_vector(tt: TrainTrack, e: int) -> WeightVector:
    """Branch weights of the vector with edge coordinate 2 on ``e`` and 0 elsewhere."""
    return tt.from_edge_coordinates({e: 2})


def is_even_parity(tt: TrainTrack, w: Sequence[int]) -> bool:
    return all((w[l] - w[r]) % 2 == 0 for sw in tt.switches for l, r in sw.sides)


def puncture_vector(tt: TrainTrack, i: int) -> WeightVector:
    """Weight 1 on every corner branch at puncture ``i``."""
    T = tt.triangulation
    if not 0 <= i < T.punctures:
        raise IndexError(f"puncture {i} out of range")
    w = [0] * tt.n_branches
    for (t, c), p in T.corner_puncture.items():
        if p == i:
            w[3 * t + c] += 1
    return tuple(w)


# -- quantum torus ------------------------------------------------------------------

class QTorusElement:
    """Finite linear combination of weight vectors in the Chekhov-Fock algebra.

    Coefficients are ``LaurentHalf`` (symbolic) or ``complex`` at a fixed
    root of unity; the two modes are not mixed.
    """

    __slots__ = ("track", "terms", "root")

    def __init__(self, track: TrainTrack, terms: Mapping[Sequence[int], object] | None = None,
                 root: RootOfUnity | None = None):
        self.track = track
        self.root = root
        clean = {}
        for k, c in (terms or {}).items():
            k = tuple(int(v) for v in k)
            if root is None:
                c = LaurentHalf.coerce(c)
                if c.is_zero():
                    continue
            else:
                c = complex(c)
                if c == 0:
                    continue
            clean[k] = c
        self.terms = clean

    @classmethod
    def monomial(cls, track, w, coef=1, root=None):
        if not track.satisfies_switch(w):
            raise ValueError(f"{w} violates the switch conditions")
        return cls(track, {tuple(w): coef}, root)

    def _check(self, other: "QTorusElement"):
        if other.track is not self.track:
            raise TrackMismatch("elements live on different train tracks")
        if (self.root is None) != (other.root is None) or (
            self.root is not None and self.root != other.root
        ):
            raise TrackMismatch("coefficient modes differ")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return QTorusElement(self.track, out, self.root)

    def __neg__(self):
        return QTorusElement(self.track, {k: -c for k, c in self.terms.items()}, self.root)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "QTorusElement":
        return QTorusElement(self.track, {k: v * c for k, v in self.terms.items()}, self.root)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentHalf, complex, float)):
            return self.scale(other)
        return qt_multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, QTorusElement):
            return NotImplemented
        return self.track is other.track and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def specialize(self, half_value: int = 1) -> dict[WeightVector, int]:
        """Integer coefficients at ``A^(1/2) = half_value``."""
        if self.root is not None:
            raise ValueError("specialize needs symbolic coefficients")
        out = {}
        for k, c in self.terms.items():
            v = c.substitute_sign(half_value)
            if v:
                out[k] = v
        return out

    def at_root(self, root: RootOfUnity) -> "QTorusElement":
        return QTorusElement(self.track, {k: eval_at_root(c, root) for k, c in self.terms.items()},
                             root)

    def __repr__(self):
        return " + ".join(f"({c})*{list(k)}" for k, c in sorted(self.terms.items())) or "0"


def qt_multiply(u: QTorusElement, v: QTorusElement) -> QTorusElement:
    u._check(v)
    tt = u.track
    W = tt.form_matrix2
    out: dict = {}
    for ka, ca in u.terms.items():
        wa = np.asarray(ka, dtype=np.int64) @ W
        for kb, cb in v.terms.items():
            two_omega = int(wa @ np.asarray(kb, dtype=np.int64))
            if two_omega % 2:
                raise ValueError("Thurston form is not integral on these vectors")
            omega = two_omega // 2
            key = tuple(x + y for x, y in zip(ka, kb))
            if u.root is None:
                term = (ca * cb).shift(omega)
            else:
                term = ca * cb * u.root.power(omega)
            out[key] = out[key] + term if key in out else term
    return QTorusElement(tt, out, u.root)


def qt_unit(track: TrainTrack, root: RootOfUnity | None = None) -> QTorusElement:
    return QTorusElement(track, {(0,) * track.n_branches: 1}, root)
