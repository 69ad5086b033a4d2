
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.domains import GF
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.matrices import DomainMatrix

from skeinlab import qrep
from skeinlab.exactalg import RootOfUnity
from skeinlab.qrep import (CentralCharacter, EvenN, MatrixRep, ZeroScalar,
                           alternating_normal_form, build_rep, central_character, clock,
                           integer_rank, irreducibility_rank, irreducible_blocks,
                           lattice_coordinates, omega_matrix, rank_mod, restrict, shift,
                           verify_rep)
from skeinlab.traintrack import build_train_track, weight_basis

from conftest import CORPUS, load


def omega_of(name):
    tt = build_train_track(load(name))
    basis = weight_basis(tt)
    return omega_matrix(tt, basis), basis


def gf_rank(M, p):
    return DomainMatrix([[GF(p)(int(v)) for v in row] for row in np.asarray(M)],
                        (len(M), len(M)), GF(p)).rank()


def brute_span(images, length):
    gens = list(images) + [np.linalg.inv(m) for m in images]
    d = images[0].shape[0]
    mats = [np.eye(d)]
    words = [np.eye(d)]
    for _ in range(length):
        words = [w @ g for w in words for g in gens]
        mats.extend(words)
    return np.linalg.matrix_rank(np.array([m.ravel() for m in mats]), tol=1e-8)


@st.composite
def antisymmetric(draw):
    n = draw(st.integers(1, 6))
    M = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            v = draw(st.integers(-6, 6))
            M[i, j], M[j, i] = v, -v
    return M


# -- forms ----------------------------------------------------------------------

def test_omega_shape(torus):
    Omega, _ = omega_of("punctured_torus")
    assert Omega.shape == (3, 3)
    assert not np.diag(Omega).any()
    assert not (Omega + Omega.T).any()
    assert integer_rank(Omega) == sympy.Matrix(Omega).rank() == 2


@pytest.mark.parametrize("name", CORPUS)
def test_omega_rank_matches_sympy(name):
    Omega, _ = omega_of(name)
    assert integer_rank(Omega) == sympy.Matrix(Omega).rank()
    for p in (3, 5, 7):
        assert rank_mod(Omega, p) == gf_rank(Omega, p)


@settings(max_examples=80, deadline=None)
@given(antisymmetric())
def test_normal_form(M):
    form = alternating_normal_form(M)
    B = form.P @ M @ form.P.T
    assert round(abs(np.linalg.det(form.P.astype(float)))) == 1
    for i, d in enumerate(form.ds):
        assert d > 0 and B[2 * i, 2 * i + 1] == d
    assert 2 * form.n_pairs == integer_rank(M)
    # the blocks carry the same determinant data as the Smith form
    snf = smith_normal_form(sympy.Matrix(M), domain=sympy.ZZ)
    invariants = [abs(int(snf[i, i])) for i in range(len(M)) if snf[i, i]]
    assert int(np.prod([d * d for d in form.ds])) == int(np.prod(invariants))


# -- construction ---------------------------------------------------------------

def test_zero_form_gives_scalars():
    chi = CentralCharacter((8, 27))
    rho = build_rep(np.zeros((2, 2), dtype=np.int64), 3, chi)
    assert rho.dim == 1
    assert verify_rep(rho) == 0
    assert irreducibility_rank(rho) == 1
    got = central_character(rho)["nth_powers"]
    assert np.allclose(got, [8, 27])


@pytest.mark.parametrize("N", [3, 5])
def test_torus_dimension(N):
    Omega, _ = omega_of("punctured_torus")
    rho = build_rep(Omega, N, CentralCharacter((1.5 + 0.5j, -2.0, 0.3j)))
    assert rho.dim == N
    assert verify_rep(rho) < 1e-10


@pytest.mark.parametrize("name", CORPUS)
@pytest.mark.parametrize("N", [3, 5, 7])
def test_dimension_law(name, N):
    Omega, _ = omega_of(name)
    rho = build_rep(Omega, N)
    assert rho.dim == N ** (gf_rank(Omega, N) // 2)
    assert verify_rep(rho) < qrep.RELATION_TOL


def test_clock_shift_commutation():
    for m in (3, 5, 7):
        zeta = np.exp(2j * np.pi * 2 / m)
        C, S = clock(m, zeta), shift(m)
        assert np.allclose(C @ S, zeta * S @ C)
        assert np.allclose(np.linalg.matrix_power(S, m), np.eye(m))


def test_corruption_is_detected():
    Omega, _ = omega_of("punctured_torus")
    rho = build_rep(Omega, 3)
    rho.images[0] = rho.images[0].copy()
    rho.images[0][0, 1] += 1e-3
    assert verify_rep(rho) >= 1e-4


def test_errors():
    Omega, _ = omega_of("punctured_torus")
    with pytest.raises(EvenN):
        build_rep(Omega, 4)
    with pytest.raises(ZeroScalar):
        CentralCharacter((0, 1, 1))
    with pytest.raises(ValueError):
        build_rep(Omega, 3, CentralCharacter((1, 1)))


# -- irreducibility -------------------------------------------------------------

def test_irreducibility_matches_brute_force():
    Omega, _ = omega_of("punctured_torus")
    rho = build_rep(Omega, 3, CentralCharacter((2.0, 1j, -1.0)))
    assert irreducibility_rank(rho) == brute_span(rho.images, 3) == 9


def test_diagonal_rep_is_reducible():
    root = RootOfUnity(3)
    Omega = np.zeros((2, 2), dtype=np.int64)
    images = [np.diag([1, 2, 3]).astype(complex), np.diag([1, -1, 1j])]
    rho = MatrixRep(root, Omega, images, [], alternating_normal_form(Omega))
    assert irreducibility_rank(rho) == 3 == brute_span(images, 4)


@pytest.mark.parametrize("N", [3, 5, 7])
def test_torus_irreducible(N):
    Omega, _ = omega_of("punctured_torus")
    rho = build_rep(Omega, N, CentralCharacter((0.7 - 1j, 1.3, 2j)))
    assert irreducibility_rank(rho) == rho.dim ** 2


def test_blocks_of_direct_sum():
    Omega, _ = omega_of("punctured_torus")
    r1 = build_rep(Omega, 3, CentralCharacter((2.0, 1.0, 1.0)))
    r2 = build_rep(Omega, 3, CentralCharacter((3.0, 1.0, 1.0)))
    images = [np.block([[a, np.zeros((3, 3))], [np.zeros((3, 3)), b]])
              for a, b in zip(r1.images, r2.images)]
    blocks = irreducible_blocks(images)
    assert sorted(b.shape[1] for b in blocks) == [3, 3]
    for b in blocks:
        sub = restrict(images, b)
        powers = [np.linalg.matrix_power(m, 3) for m in sub]
        assert all(qrep.off_scalar_residual(p) < 1e-8 for p in powers)


# -- central characters ---------------------------------------------------------

@pytest.mark.parametrize("name", ["punctured_torus", "four_punctured_sphere"])
def test_central_character_roundtrip(name):
    Omega, _ = omega_of(name)
    rng = np.random.default_rng(4)
    n = len(Omega)
    chi = CentralCharacter(tuple(complex(z) for z in rng.normal(size=n) + 1j * rng.normal(size=n)))
    rho = build_rep(Omega, 5, chi)
    got = central_character(rho)
    assert np.allclose(got["nth_powers"], chi.nth_powers, rtol=1e-9)
    for v in got["kernel_values"]:
        assert abs(v) > 0


def test_prescribed_kernel_value():
    Omega, basis = omega_of("punctured_torus")
    form = alternating_normal_form(Omega)
    chi0 = CentralCharacter((2.0, 3.0, 5.0))
    rho0 = build_rep(Omega, 3, chi0)
    k = central_character(rho0)["kernel_values"][0]
    other = k * np.exp(2j * np.pi / 3)
    rho = build_rep(Omega, 3, CentralCharacter(chi0.nth_powers, (other,)))
    assert abs(central_character(rho)["kernel_values"][0] - other) < 1e-9
    with pytest.raises(ValueError):
        build_rep(Omega, 3, CentralCharacter(chi0.nth_powers, (k * 1.1,)))
    assert len(form.kernel_rows) == 1


def test_equal_characters_equal_traces():
    # the same lattice with permuted basis goes through a different normal form
    Omega, _ = omega_of("four_punctured_sphere")
    n = len(Omega)
    perm = np.random.default_rng(9).permutation(n)
    Pi = np.eye(n, dtype=np.int64)[perm]
    Omega2 = Pi @ Omega @ Pi.T
    rng = np.random.default_rng(10)
    vals = tuple(complex(z) for z in np.exp(rng.normal(size=n) + 1j * rng.normal(size=n)))
    r1 = build_rep(Omega, 5, CentralCharacter(vals))
    # kernel values of the second rep are read off the first through the basis change
    prescribed = [qrep.scalar_value(r1.evaluate((Pi.T @ form_row).tolist()))
                  for form_row in (alternating_normal_form(Omega2).P[j]
                                   for j in alternating_normal_form(Omega2).kernel_rows)]
    r2 = build_rep(Omega2, 5, CentralCharacter(tuple(vals[i] for i in perm), tuple(prescribed)))
    for _ in range(50):
        c = rng.integers(-2, 3, size=n)
        t1 = np.trace(r1.evaluate(c.tolist()))
        t2 = np.trace(r2.evaluate((Pi @ c).tolist()))
        assert abs(t1 - t2) < 1e-7 * max(1.0, abs(t1))


def test_json_roundtrip():
    Omega, basis = omega_of("punctured_torus")
    rho = build_rep(Omega, 5, CentralCharacter((2.0, 1j, -1.0)))
    back = MatrixRep.from_json(rho.to_json())
    assert back.dim == rho.dim and verify_rep(back) < 1e-10
    assert all(np.allclose(a, b) for a, b in zip(back.images, rho.images))
    chi = CentralCharacter((2.0, 1j), (None, 3.0))
    assert CentralCharacter.from_json(chi.to_json()) == chi


def test_lattice_coordinates():
    _, basis = omega_of("four_punctured_sphere")
    w = tuple(3 * a - b for a, b in zip(basis[0], basis[2]))
    assert lattice_coordinates(basis, w) == [3, 0, -1, 0, 0, 0]
    with pytest.raises(ValueError):
        lattice_coordinates(basis, (1,) + (0,) * (len(basis[0]) - 1))
