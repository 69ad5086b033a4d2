"""Framed link diagrams and the Kauffman bracket state sum.

A diagram is a list of crossings in PD form.  Each crossing lists four arc
labels clockwise, starting from the incoming under-strand, so slots 0 and 2
belong to the under-strand and slots 1 and 3 to the over-strand.

Smoothing convention (pinned by the test-suite):

* ``ZERO`` joins slots (0, 3) and (1, 2) and carries the coefficient ``A^-1``;
* ``INFINITY`` joins slots (0, 1) and (2, 3) and carries ``A``.

This is the textbook bracket with ``A`` and ``A^-1`` exchanged, i.e. the
textbook bracket of the mirror diagram.  The loop value is ``-A^2 - A^-2``.
"""

from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .exactalg import DELTA, LaurentHalf

MAX_CROSSINGS = 24
# states evaluated per numpy batch
_CHUNK = 1 << 14


class MalformedPD(ValueError):
    pass


class NonPlanarDiagram(MalformedPD):
    pass


class SchemaError(ValueError):
    pass


class CapacityError(RuntimeError):
    pass


class Smoothing(enum.Enum):
    ZERO = 0
    INFINITY = 1


_PAIRS = {
    Smoothing.ZERO: ((0, 3), (1, 2)),
    Smoothing.INFINITY: ((0, 1), (2, 3)),
}


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    free_loops: int = 0
    planar: bool = field(default=True, compare=False)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def arcs(self) -> set[int]:
        return {a for x in self.crossings for a in x}

    def components(self) -> int:
        """Number of link components (strands pass straight through crossings)."""
        n = len(self.crossings)
        if n == 0:
            return self.free_loops
        parent = list(range(4 * n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i, j):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj

        for i, j in _arc_partner_pairs(self.crossings):
            union(i, j)
        for c in range(n):
            union(4 * c, 4 * c + 2)
            union(4 * c + 1, 4 * c + 3)
        return len({find(i) for i in range(4 * n)}) + self.free_loops

    def to_json(self) -> dict:
        return {"crossings": [list(x) for x in self.crossings], "free_loops": self.free_loops}

    def relabel(self, offset: int) -> "LinkDiagram":
        return LinkDiagram(tuple(tuple(a + offset for a in x) for x in self.crossings),
                           self.free_loops, self.planar)


def _arc_partner_pairs(crossings) -> list[tuple[int, int]]:
    """Dart pairs (4*crossing + slot) that share an arc label."""
    where: dict[int, list[int]] = {}
    for c, x in enumerate(crossings):
        for s, a in enumerate(x):
            where.setdefault(a, []).append(4 * c + s)
    return [tuple(v) for v in where.values()]


def _count_faces(crossings) -> tuple[int, int]:
    """Return (faces, connected components) of the 4-valent diagram graph."""
    n = len(crossings)
    alpha = [0] * (4 * n)
    for i, j in _arc_partner_pairs(crossings):
        alpha[i], alpha[j] = j, i
    seen = [False] * (4 * n)
    faces = 0
    for start in range(4 * n):
        if seen[start]:
            continue
        faces += 1
        d = start
        while not seen[d]:
            seen[d] = True
            a = alpha[d]
            d = 4 * (a // 4) + (a % 4 + 1) % 4
    # graph components
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in _arc_partner_pairs(crossings):
        ri, rj = find(i // 4), find(j // 4)
        if ri != rj:
            parent[ri] = rj
    comps = len({find(i) for i in range(n)})
    return faces, comps


def is_planar(crossings) -> bool:
    """Euler check per component: ``V - E + F = 2`` with ``E = 2V``."""
    if not crossings:
        return True
    faces, comps = _count_faces(crossings)
    return faces - len(crossings) == 2 * comps


def make_diagram(crossings, free_loops: int = 0, require_planar: bool = True) -> LinkDiagram:
    xs = tuple(tuple(int(a) for a in x) for x in crossings)
    for x in xs:
        if len(x) != 4:
            raise MalformedPD(f"crossing {x} does not have 4 arcs")
    counts = Counter(a for x in xs for a in x)
    bad = sorted(a for a, k in counts.items() if k != 2)
    if bad:
        raise MalformedPD(f"arcs {bad} do not appear exactly twice")
    if free_loops < 0:
        raise MalformedPD("free_loops must be non-negative")
    planar = is_planar(xs)
    if require_planar and not planar:
        raise NonPlanarDiagram("PD code does not describe a planar diagram")
    return LinkDiagram(xs, free_loops, planar)


def parse_pd(text: str | dict, require_planar: bool = True) -> LinkDiagram:
    """Parse ``{"crossings": [[a,b,c,d], ...], "free_loops": n}``."""
    if isinstance(text, str):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    else:
        data = text
    if not isinstance(data, dict) or "crossings" not in data:
        raise SchemaError("expected an object with a 'crossings' array")
    crossings = data["crossings"]
    free_loops = data.get("free_loops", 0)
    if not isinstance(crossings, list) or not isinstance(free_loops, int):
        raise SchemaError("'crossings' must be a list and 'free_loops' an integer")
    for x in crossings:
        if not isinstance(x, list) or not all(isinstance(a, int) and a > 0 for a in x):
            raise SchemaError("each crossing must be a list of positive integers")
    return make_diagram(crossings, free_loops, require_planar)


def resolve_crossing(d: LinkDiagram, c: int, mode: Smoothing) -> LinkDiagram:
    if not 0 <= c < len(d.crossings):
        raise IndexError(f"crossing index {c} out of range for {len(d.crossings)} crossings")
    x = d.crossings[c]
    rest = [list(y) for i, y in enumerate(d.crossings) if i != c]
    loops = d.free_loops
    pairs = [[x[i], x[j]] for i, j in _PAIRS[mode]]
    for k, (a, b) in enumerate(pairs):
        if a == b:
            loops += 1
            continue
        # merge arc b into arc a everywhere, including the pending pair
        for y in rest:
            for s in range(4):
                if y[s] == b:
                    y[s] = a
        for later in pairs[k + 1:]:
            for s in range(2):
                if later[s] == b:
                    later[s] = a
    return LinkDiagram(tuple(tuple(y) for y in rest), loops, d.planar)


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    offset = max(d1.arcs(), default=0)
    d2 = d2.relabel(offset)
    return LinkDiagram(d1.crossings + d2.crossings, d1.free_loops + d2.free_loops,
                       d1.planar and d2.planar)


def _state_histogram(d: LinkDiagram) -> Counter:
    """Counter keyed by (#INFINITY - #ZERO, loops) over all 2^n states."""
    n = len(d.crossings)
    if n > MAX_CROSSINGS:
        raise CapacityError(f"{n} crossings exceeds the state-sum limit of {MAX_CROSSINGS}")
    if n == 0:
        return Counter({(0, d.free_loops): 1})
    ndarts = 4 * n
    alpha = np.empty(ndarts, dtype=np.int64)
    for i, j in _arc_partner_pairs(d.crossings):
        alpha[i], alpha[j] = j, i
    base = 4 * np.arange(n)
    # smoothing partner of each slot for ZERO / INFINITY
    zero_partner = np.array([3, 2, 1, 0])
    inf_partner = np.array([1, 0, 3, 2])
    hist: Counter = Counter()
    steps = max(1, int(np.ceil(np.log2(ndarts))) + 1)
    total = 1 << n
    for start in range(0, total, _CHUNK):
        states = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        bits = (states[:, None] >> np.arange(n)) & 1  # 1 = INFINITY
        # sigma[s, dart] = smoothing partner
        partner = np.where(bits[:, :, None] == 1, inf_partner, zero_partner)
        sigma = (base[None, :, None] + partner).reshape(len(states), ndarts)
        # P = sigma o alpha; loops = orbits(P) / 2
        perm = sigma[:, alpha]
        label = np.broadcast_to(np.arange(ndarts), perm.shape).copy()
        p = perm
        for _ in range(steps):
            label = np.minimum(label, np.take_along_axis(label, p, axis=1))
            p = np.take_along_axis(p, p, axis=1)
        orbits = (label == np.arange(ndarts)).sum(axis=1)
        loops = orbits // 2 + d.free_loops
        ninf = bits.sum(axis=1)
        expo = 2 * ninf - n
        keys, counts = np.unique(np.stack([expo, loops], axis=1), axis=0, return_counts=True)
        for (e, l), k in zip(keys.tolist(), counts.tolist()):
            hist[(e, l)] += k
    return hist


def state_histogram(d: LinkDiagram) -> dict[tuple[int, int], int]:
    """Exposed for symbolic checks: maps (A-exponent, loop count) to multiplicity."""
    return dict(_state_histogram(d))


def kauffman_bracket(d: LinkDiagram) -> LaurentHalf:
    """State sum with ``A^-1`` per ZERO, ``A`` per INFINITY, ``DELTA`` per loop."""
    hist = _state_histogram(d)
    max_loops = max(l for _, l in hist)
    powers = [LaurentHalf.const(1)]
    for _ in range(max_loops):
        powers.append(powers[-1] * DELTA)
    total = LaurentHalf()
    for (e, l), k in sorted(hist.items()):
        total = total + powers[l].shift(2 * e) * k
    return total


# -- braid closures: a planar diagram generator for move corpora ------------

def braid_closure(word: list[int], strands: int) -> LinkDiagram:
    """PD code of the closure of a braid word.

    ``i > 0`` is ``sigma_i`` and ``i < 0`` its inverse (1-based generators).
    Positions never touched by a crossing close up into free loops.
    """
    if any(not 1 <= abs(g) < strands for g in word):
        raise ValueError("generator out of range")
    labels = list(range(1, strands + 1))
    nxt = strands + 1
    crossings = []
    for g in word:
        i = abs(g) - 1
        bl, br = labels[i], labels[i + 1]
        tl, tr = nxt, nxt + 1
        nxt += 2
        if g > 0:
            # under-strand runs bottom-left to top-right
            crossings.append([bl, tl, tr, br])
        else:
            crossings.append([br, bl, tl, tr])
        labels[i], labels[i + 1] = tl, tr
    rename = {top: bottom for bottom, top in zip(range(1, strands + 1), labels)}
    used = {a for x in crossings for a in x}
    free = sum(1 for j in range(1, strands + 1) if labels[j - 1] == j and j not in used)
    xs = [[rename.get(a, a) for a in x] for x in crossings]
    # compact labels to 1..2n
    order = {a: k + 1 for k, a in enumerate(sorted({a for x in xs for a in x}))}
    xs = [[order[a] for a in x] for x in xs]
    return make_diagram(xs, free)
