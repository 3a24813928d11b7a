"""Linear-algebra helper tests: coordinates, shuffles, randomness."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from freespec import linalg
from freespec.errors import InputError


# ---------------------------------------------------------------------------
# Hermitian coordinates
# ---------------------------------------------------------------------------

@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_herm_vec_roundtrip_and_isometry(n, seed):
    rng = np.random.default_rng(seed)
    vec = rng.standard_normal(n * n)
    mat = linalg.vec_to_herm(vec, n)
    assert np.abs(mat - mat.conj().T).max() < 1e-14
    back = linalg.herm_to_vec(mat)
    assert np.abs(back - vec).max() < 1e-12
    # the coordinate map preserves the Frobenius inner product
    assert abs(np.linalg.norm(vec) - np.linalg.norm(mat, "fro")) < 1e-12


@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_herm_vec_inner_products(n, seed):
    rng = np.random.default_rng(seed)
    a = linalg.random_herm(n, rng)
    b = linalg.random_herm(n, rng)
    va, vb = linalg.herm_to_vec(a), linalg.herm_to_vec(b)
    assert abs(float(va @ vb) - np.trace(a @ b).real) < 1e-10


@pytest.mark.parametrize("n", [1, 2, 3])
def test_herm_basis_is_orthonormal(n):
    basis = linalg.herm_basis(n)
    assert basis.shape == (n * n, n, n)
    # tr(A* B) = tr(A B) for Hermitian A
    gram = np.einsum("aij,bji->ab", basis, basis).real
    assert np.abs(gram - np.eye(n * n)).max() < 1e-12
    for b in basis:
        assert np.abs(b - b.conj().T).max() < 1e-14


# ---------------------------------------------------------------------------
# eigen machinery
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(5))
def test_eigh_reconstructs(seed):
    rng = np.random.default_rng(seed)
    a = linalg.random_herm(5, rng)
    w, v = linalg.eigh(a)
    assert np.all(np.diff(w) >= -1e-12)
    assert np.abs(v @ np.diag(w) @ v.conj().T - a).max() < 1e-9
    assert np.abs(v.conj().T @ v - np.eye(5)).max() < 1e-10


def test_min_eig_examples():
    assert abs(linalg.min_eig(np.diag([3.0, -2.0, 5.0])) + 2.0) < 1e-12
    assert abs(linalg.min_eig(np.eye(3)) - 1.0) < 1e-12


def test_null_space_known_kernels():
    k = linalg.null_space(np.diag([1.0, 0.0, 2.0]))
    assert k.shape == (3, 1)
    assert abs(abs(k[1, 0]) - 1.0) < 1e-10
    k2 = linalg.null_space(np.array([[1.0, 1.0], [1.0, 1.0]]))
    assert k2.shape == (2, 1)
    assert np.abs(np.array([[1.0, 1.0], [1.0, 1.0]]) @ k2).max() < 1e-10
    # full-rank matrix has no kernel
    assert linalg.null_space(np.eye(2)).shape == (2, 0)


@pytest.mark.parametrize("seed", range(4))
def test_null_space_random_wide(seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((2, 5)) + 1j * rng.standard_normal((2, 5))
    k = linalg.null_space(m)
    assert k.shape[1] >= 3
    assert np.abs(m @ k).max() < 10 * linalg.TOL * np.abs(m).max()
    assert np.abs(k.conj().T @ k - np.eye(k.shape[1])).max() < 1e-10


def test_pinv_examples():
    assert np.abs(linalg.pinv(np.diag([2.0, 0.0])) - np.diag([0.5, 0.0])).max() < 1e-12
    assert np.abs(linalg.pinv(np.eye(3)) - np.eye(3)).max() < 1e-12
    u = np.array([1.0, 2.0, 2.0]) / 3.0
    proj = np.outer(u, u)
    assert np.abs(linalg.pinv(proj) - proj).max() < 1e-10


def test_psd_clip():
    a = np.diag([2.0, -1.0])
    c = linalg.psd_clip(a)
    assert np.abs(c - np.diag([2.0, 0.0])).max() < 1e-12
    # PSD inputs pass through
    assert np.abs(linalg.psd_clip(np.eye(2)) - np.eye(2)).max() < 1e-12
    lifted = linalg.psd_clip(a, floor=0.5)
    assert linalg.min_eig(lifted) >= 0.5 - 1e-12


# ---------------------------------------------------------------------------
# tensor helpers
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(3))
def test_kron_mixed_product(seed):
    rng = np.random.default_rng(seed)
    a, c = rng.standard_normal((2, 3, 3)) + 1j * rng.standard_normal((2, 3, 3))
    b, d = rng.standard_normal((2, 2, 2)) + 1j * rng.standard_normal((2, 2, 2))
    lhs = linalg.kron(a, b) @ linalg.kron(c, d)
    rhs = linalg.kron(a @ c, b @ d)
    assert np.abs(lhs - rhs).max() < 1e-10


def shuffle_oracle(d, n):
    """Index-permutation construction of the shuffle: e_i⊗e_k -> e_k⊗e_i."""
    p = np.zeros((d * n, d * n))
    for i in range(d):
        for k in range(n):
            p[k * d + i, i * n + k] = 1.0
    return p


@pytest.mark.parametrize("d,n", [(1, 1), (2, 2), (2, 3), (3, 2), (4, 3)])
def test_canonical_shuffle_swaps_factors(d, n):
    p = linalg.canonical_shuffle(d, n)
    assert np.abs(p - shuffle_oracle(d, n)).max() < 1e-14
    rng = np.random.default_rng(7)
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    assert np.abs(p @ linalg.kron(a, x) @ p.conj().T - linalg.kron(x, a)).max() < 1e-12
    # the inverse shuffle swaps the roles of d and n
    assert np.abs(p.conj().T - linalg.canonical_shuffle(n, d)).max() < 1e-14


# ---------------------------------------------------------------------------
# seeded randomness
# ---------------------------------------------------------------------------

def test_random_unitary_properties():
    rng = linalg.default_rng(3)
    u = linalg.random_unitary(4, rng)
    assert np.abs(u.conj().T @ u - np.eye(4)).max() < 1e-10
    u2 = linalg.random_unitary(4, linalg.default_rng(3))
    assert np.abs(u - u2).max() == 0.0


def test_random_isometry_properties():
    rng = linalg.default_rng(5)
    v = linalg.random_isometry(2, 6, rng)
    assert v.shape == (6, 2)
    assert np.abs(v.conj().T @ v - np.eye(2)).max() < 1e-10
    with pytest.raises(InputError):
        linalg.random_isometry(6, 2, rng)


def test_random_herm_tuple_shape_and_determinism():
    a = linalg.random_herm_tuple(3, 4, linalg.default_rng(11))
    b = linalg.random_herm_tuple(3, 4, linalg.default_rng(11))
    assert a.shape == (3, 4, 4)
    assert np.abs(a - b).max() == 0.0
    for m in a:
        assert np.abs(m - m.conj().T).max() < 1e-12


# ---------------------------------------------------------------------------
# hermiticity guards
# ---------------------------------------------------------------------------

def test_check_hermitian_accepts_and_rejects():
    good = np.array([[1.0, 2.0], [2.0, -1.0]])
    out = linalg.check_hermitian(good)
    assert np.abs(out - good).max() < 1e-14
    with pytest.raises(InputError):
        linalg.check_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_hermitian_part_and_defect():
    m = np.array([[1.0, 1.0], [0.0, 1.0]])
    h = linalg.hermitian_part(m)
    assert np.abs(h - np.array([[1.0, 0.5], [0.5, 1.0]])).max() < 1e-14
    assert linalg.herm_defect(m) > 0.4
    assert linalg.herm_defect(h) < 1e-15
