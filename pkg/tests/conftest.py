"""Shared generators for the test suite.

Everything here is seeded: tests must be reproducible run to run.
"""
import numpy as np
import pytest

from freespec import linalg, pencil


def random_bounded_pencil(rng, g, d, tries=60):
    """Rejection-sample a Hermitian tuple whose spectrahedron is bounded."""
    for _ in range(tries):
        a = linalg.random_herm_tuple(g, d, rng)
        rep = pencil.bounded(a, trials=16, seed=int(rng.integers(2**31)))
        if rep.verdict == pencil.BOUNDED:
            return a
    raise RuntimeError(f"no bounded pencil found in {tries} tries (g={g}, d={d})")


def boundary_point(a, n, rng, tries=40):
    """Random boundary point of the spectrahedron at level n."""
    for _ in range(tries):
        h = linalg.random_herm_tuple(a.shape[0], n, rng)
        hit = pencil.scale_to_boundary(a, h)
        if hit is not None:
            return hit[1]
    raise RuntimeError("no boundary point found; is the pencil bounded?")


def interior_point(a, n, rng, shrink=0.5, tries=40):
    """Random interior point: a boundary point pulled toward the origin."""
    return shrink * boundary_point(a, n, rng, tries=tries)


def wild_corank1_pair(rng, n=2):
    """Boundary pair of the wild disk with I - X^2 - Y^2 of corank one.

    Scaling any pair by 1/sqrt(lambda_max(X0^2 + Y0^2)) puts the top
    eigenvalue of X^2 + Y^2 exactly at 1; for generic draws that eigenvalue
    is simple, so the defect matrix has a one-dimensional kernel.
    """
    while True:
        x0 = linalg.random_herm(n, rng)
        y0 = linalg.random_herm(n, rng)
        w = np.linalg.eigvalsh(x0 @ x0 + y0 @ y0)
        if w[-1] < 1e-10 or (n > 1 and w[-1] - w[-2] < 1e-6 * w[-1]):
            continue
        t = 1.0 / np.sqrt(w[-1])
        x, y = t * x0, t * y0
        p = np.eye(n) - x @ x - y @ y
        wp = np.linalg.eigvalsh(p)
        if abs(wp[0]) < 1e-10 and (n == 1 or wp[1] > 1e-8):
            return x.astype(complex), y.astype(complex)


@pytest.fixture(scope="session")
def pencil_pool():
    """Bounded pencils across the (g, d) range used by the random batteries."""
    rng = linalg.default_rng(20240901)
    pool = []
    for g in (2, 3):
        for d in (2, 3, 4):
            pool.append(random_bounded_pencil(rng, g, d))
    return pool
