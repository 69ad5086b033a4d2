import itertools
import json
import math
from functools import reduce

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinlab import io
from skeinlab.exactalg import A, LaurentHalf, RootOfUnity
from skeinlab.traintrack import (EulerMismatch, QTorusElement, SchemaError, SelfLoopEdge,
                                 TrackMismatch, build_train_track, corner_count_form,
                                 corner_counts, even_edge_vector, integer_kernel,
                                 is_even_parity, load_triangulation, puncture_vector, qt_multiply,
                                 qt_unit, thurston_form, weight_basis)

from conftest import CORPUS, load

coeffs = st.lists(st.integers(-3, 3), min_size=6, max_size=6)


def combo(basis, cs):
    return tuple(int(sum(c * b[i] for c, b in zip(cs, basis))) for i in range(len(basis[0])))


# -- loading --------------------------------------------------------------------

def test_punctured_torus_counts(torus):
    assert (torus.genus, torus.punctures, torus.n_edges, torus.n_triangles) == (1, 1, 3, 2)


def test_four_punctured_sphere_counts():
    T = load("four_punctured_sphere")
    assert (T.n_triangles, T.n_edges, T.vertex_count) == (4, 6, 4)
    # every tetrahedron edge joins two distinct punctures
    strict = load_triangulation(T.to_json(), distinct_endpoints=True)
    assert strict.gluings == T.gluings


def test_self_glued_side_rejected():
    doc = {"genus": 1, "punctures": 1, "triangles": [[0, 1, 2], [0, 1, 2]],
           "gluings": [[0, 0, 0, 0], [0, 1, 1, 1], [0, 2, 1, 2]]}
    with pytest.raises(SelfLoopEdge):
        load_triangulation(doc)


def test_distinct_endpoints_flag(torus):
    with pytest.raises(SelfLoopEdge):
        load_triangulation(torus.to_json(), distinct_endpoints=True)


def test_euler_checks():
    torus = {"triangles": [[0, 1, 2], [0, 1, 2]]}
    sphere = {"triangles": [[0, 1, 2], [0, 2, 1]]}
    with pytest.raises(EulerMismatch):
        load_triangulation({"genus": 1, "punctures": 2, **torus})
    # right counts, wrong vertex count
    with pytest.raises(EulerMismatch):
        load_triangulation({"genus": 1, "punctures": 1, **sphere})
    with pytest.raises(EulerMismatch):
        load_triangulation({"genus": 0, "punctures": 3, **torus})


@pytest.mark.parametrize("doc", [
    "{", '{"genus": 1}', '{"genus": -1, "punctures": 1, "triangles": []}',
    '{"genus": 0, "punctures": 3, "triangles": [[0, 1]]}',
    '{"genus": 0, "punctures": 3, "triangles": [[0, 1, 2], [0, 1, 3]]}',
])
def test_schema_errors(doc):
    with pytest.raises(SchemaError):
        load_triangulation(doc)


def test_corpus_roundtrip_and_schema(surface):
    io.validate(surface.to_json(), "triangulation")
    again = load_triangulation(json.dumps(surface.to_json()))
    assert again.triangles == surface.triangles and again.gluings == surface.gluings


# -- train track and lattice ----------------------------------------------------

@pytest.mark.parametrize("name,branches,switches", [("punctured_torus", 6, 3),
                                                    ("four_punctured_sphere", 12, 6)])
def test_track_sizes(name, branches, switches):
    tt = build_train_track(load(name))
    assert (tt.n_branches, len(tt.switches)) == (branches, switches)


def test_basis_rank_and_saturation(surface):
    tt = build_train_track(surface)
    basis = weight_basis(tt)
    expected = 6 * surface.genus + 3 * surface.punctures - 6
    assert len(basis) == expected
    M = sympy.Matrix(tt.switch_matrix)
    assert tt.n_branches - M.rank() == expected
    assert all(tt.satisfies_switch(b) for b in basis)
    # saturated: gcd of the maximal minors is 1
    B = sympy.Matrix(basis)
    minors = (B.extract(list(range(len(basis))), list(cols)).det()
              for cols in itertools.combinations(range(tt.n_branches), len(basis)))
    assert reduce(math.gcd, (int(m) for m in minors), 0) == 1


def test_punctured_torus_basis(torus):
    basis = weight_basis(build_train_track(torus))
    assert sorted(basis) == sorted([(1, 0, 0, 1, 0, 0), (0, 1, 0, 0, 1, 0), (0, 0, 1, 0, 0, 1)])


def test_integer_kernel_small():
    ker = integer_kernel([[2, 4, 6]])
    assert len(ker) == 2
    assert all(2 * a + 4 * b + 6 * c == 0 for a, b, c in ker)
    assert integer_kernel([[1, 0], [0, 1]]) == []


# -- Thurston form --------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), coeffs, coeffs, coeffs, st.integers(-3, 3))
def test_form_bilinear_antisymmetric(name, ca, cb, cc, t):
    tt = build_train_track(load(name))
    basis = weight_basis(tt)
    a, b, c = (combo(basis, x[:len(basis)]) for x in (ca, cb, cc))
    assert thurston_form(tt, a, a) == 0
    assert thurston_form(tt, a, b) == -thurston_form(tt, b, a)
    ab = tuple(x + t * y for x, y in zip(a, b))
    assert thurston_form(tt, ab, c) == thurston_form(tt, a, c) + t * thurston_form(tt, b, c)


def test_form_matches_corner_counts(surface):
    tt = build_train_track(surface)
    edges = sorted(surface.edge_sides)
    vecs = [even_edge_vector(tt, e) for e in edges]
    assert all(is_even_parity(tt, v) for v in vecs)
    for a in vecs:
        for b in vecs:
            assert thurston_form(tt, a, b) == corner_count_form(tt, a, b)
    rng = np.random.default_rng(len(edges))
    for _ in range(20):
        ka, kb = (2 * rng.integers(-3, 4, size=len(edges)) for _ in range(2))
        a, b = tt.from_edge_coordinates(ka.tolist()), tt.from_edge_coordinates(kb.tolist())
        assert thurston_form(tt, a, b) == corner_count_form(tt, a, b)


def test_punctured_torus_edge_pairs(torus):
    tt = build_train_track(torus)
    cc = corner_counts(torus)
    for i, j in itertools.permutations(range(3), 2):
        sigma = cc.get((i, j), 0) - cc.get((j, i), 0)
        assert abs(sigma) == 2
        value = thurston_form(tt, even_edge_vector(tt, i), even_edge_vector(tt, j))
        assert value == -4 * sigma


def test_puncture_vectors_central(surface):
    tt = build_train_track(surface)
    basis = weight_basis(tt)
    for i in range(surface.punctures):
        pv = puncture_vector(tt, i)
        assert tt.satisfies_switch(pv)
        assert all(thurston_form(tt, pv, b) == 0 for b in basis)
    total = [sum(col) for col in zip(*(puncture_vector(tt, i) for i in range(surface.punctures)))]
    assert total == [1] * tt.n_branches
    with pytest.raises(IndexError):
        puncture_vector(tt, surface.punctures)


def test_form_rejects_wrong_length(torus):
    tt = build_train_track(torus)
    with pytest.raises(TrackMismatch):
        thurston_form(tt, (1, 0), (0, 1))


# -- quantum torus --------------------------------------------------------------

def _monomials(tt, rng, count):
    basis = weight_basis(tt)
    return [combo(basis, rng.integers(-2, 3, size=len(basis)).tolist()) for _ in range(count)]


def test_qt_unit_and_commutation(surface):
    tt = build_train_track(surface)
    rng = np.random.default_rng(1)
    one = qt_unit(tt)
    for a, b in zip(_monomials(tt, rng, 10), _monomials(tt, rng, 10)):
        x, y = QTorusElement.monomial(tt, a), QTorusElement.monomial(tt, b)
        assert one * x == x and x * one == x
        w = thurston_form(tt, a, b)
        key = tuple(p + q for p, q in zip(a, b))
        assert (x * y).terms[key] == (y * x).terms[key] * A ** w


def test_qt_associativity(surface):
    tt = build_train_track(surface)
    rng = np.random.default_rng(2)
    ms = _monomials(tt, rng, 9)
    for a, b, c in zip(ms[0::3], ms[1::3], ms[2::3]):
        x, y, z = (QTorusElement.monomial(tt, v, coef=A + 2) for v in (a, b, c))
        assert (x * y) * z == x * (y * z)


def test_even_subalgebra_closed(torus):
    tt = build_train_track(torus)
    vecs = [even_edge_vector(tt, e) for e in range(3)]
    x = QTorusElement.monomial(tt, vecs[0]) + QTorusElement.monomial(tt, vecs[1])
    y = QTorusElement.monomial(tt, vecs[2], coef=LaurentHalf.half(1))
    assert all(is_even_parity(tt, k) for k in (x * y).terms)


def test_qt_modes_do_not_mix(torus):
    tt = build_train_track(torus)
    x = QTorusElement.monomial(tt, (1, 0, 0, 1, 0, 0))
    z = x.at_root(RootOfUnity(5))
    with pytest.raises(TrackMismatch):
        x * z
    other = build_train_track(load("punctured_torus"))
    with pytest.raises(TrackMismatch):
        x * QTorusElement.monomial(other, (1, 0, 0, 1, 0, 0))
    with pytest.raises(ValueError):
        QTorusElement.monomial(tt, (1, 0, 0, 0, 0, 0))


def test_root_mode_matches_symbolic(torus):
    tt = build_train_track(torus)
    root = RootOfUnity(7, 3)
    x = QTorusElement.monomial(tt, (1, 0, 0, 1, 0, 0), coef=A + 1)
    y = QTorusElement.monomial(tt, (0, 1, 0, 0, 1, 0), coef=A ** -1)
    sym = (x * y).at_root(root)
    num = qt_multiply(x.at_root(root), y.at_root(root))
    assert sym.terms.keys() == num.terms.keys()
    assert all(abs(sym.terms[k] - num.terms[k]) < 1e-12 for k in sym.terms)
