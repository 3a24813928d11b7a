"""Affine-PSD feasibility, Choi problems, hulls, duality, projections."""
import numpy as np
import pytest

from freespec import feasibility as F
from freespec import gallery, linalg, pencil
from conftest import random_bounded_pencil

NAIMARK = gallery.build("naimark").pencil
CUBE = gallery.cube(2).pencil
SPIN = gallery.spin_disk().pencil
INTERVAL = gallery.interval().pencil


def scalar_pair(u, v):
    return np.array([[[float(u)]], [[float(v)]]])


def herm_row(b):
    return linalg.herm_to_vec(np.asarray(b, dtype=complex))


# ---------------------------------------------------------------------------
# the affine-PSD solver
# ---------------------------------------------------------------------------

def test_trace_one_psd_feasible():
    prob = F.FeasibilityProblem(dim=2, base=np.zeros((2, 2)),
                                extra=[herm_row(np.eye(2))], extra_rhs=[1.0])
    res = F.solve_affine_psd(prob)
    assert res.feasible
    assert res.residual <= 1e-6
    assert abs(np.trace(res.z).real - 1.0) < 1e-6
    assert linalg.min_eig(res.z) >= -1e-6


def test_negative_trace_infeasible():
    # tr Z = -1 with Z PSD has no solution
    prob = F.FeasibilityProblem(dim=2, base=np.zeros((2, 2)),
                                extra=[herm_row(np.eye(2))], extra_rhs=[-1.0])
    res = F.solve_affine_psd(prob)
    assert res.status == F.NO_CERTIFICATE
    assert not res.feasible


def test_generator_mode_feasible():
    # Z = I + s*sigma_z is PSD for |s| <= 1; the line is feasible
    gens = np.stack([np.eye(2, dtype=complex),
                     np.diag([1.0, -1.0]).astype(complex)])
    prob = F.FeasibilityProblem(dim=2, base=np.zeros((2, 2)), generators=gens,
                                extra=[[1.0, 0.0]], extra_rhs=[1.0])
    res = F.solve_affine_psd(prob)
    assert res.feasible
    z = gens[0] * res.s[0] + gens[1] * res.s[1]
    assert np.abs(z - res.z).max() < 1e-8


def test_generator_mode_infeasible():
    # Z = sigma_z is forced and is not PSD
    gens = np.diag([1.0, -1.0]).astype(complex)[None]
    prob = F.FeasibilityProblem(dim=2, base=np.zeros((2, 2)), generators=gens,
                                extra=[[1.0]], extra_rhs=[1.0])
    res = F.solve_affine_psd(prob)
    assert res.status == F.NO_CERTIFICATE


def test_unique_boundary_completion_polished():
    """Feasible set = one rank-one matrix; plain alternating projections
    stall on such boundary-touching sets, so this exercises the polish.

    Pinning z11=z22=z33=z12=z23=1 leaves only z13 free; the {1,2} block
    [[1,1],[1,1]] is singular with kernel (1,-1), and PSD-ness forces
    Z(1,-1,0)* = 0, i.e. z13 = z23 = 1: the all-ones matrix is the unique
    completion.
    """
    e = np.zeros((3, 3))
    cons, rhs = [], []
    for i in range(3):
        b = e.copy()
        b[i, i] = 1.0
        cons.append(herm_row(b))
        rhs.append(1.0)
    for (i, j) in ((0, 1), (1, 2)):
        b = e.astype(complex).copy()
        b[i, j] = 0.5
        b[j, i] = 0.5
        cons.append(herm_row(b))
        rhs.append(1.0)
        b2 = e.astype(complex).copy()
        b2[i, j] = 0.5j
        b2[j, i] = -0.5j
        cons.append(herm_row(b2))
        rhs.append(0.0)
    prob = F.FeasibilityProblem(dim=3, base=np.zeros((3, 3)),
                                extra=np.array(cons), extra_rhs=np.array(rhs))
    res = F.solve_affine_psd(prob)
    assert res.feasible
    assert np.abs(res.z - np.ones((3, 3))).max() < 1e-8


def test_base_offset_handled():
    # Z = base + coords, base already PSD and no constraints: base itself works
    base = np.diag([2.0, 1.0]).astype(complex)
    res = F.solve_affine_psd(F.FeasibilityProblem(dim=2, base=base))
    assert res.feasible


# ---------------------------------------------------------------------------
# Choi problems and hull membership
# ---------------------------------------------------------------------------

def test_hull_membership_identity_map():
    rep = F.hull_membership(NAIMARK, NAIMARK)
    assert rep.status == F.MEMBER
    cert = rep.certificate
    assert cert.residual <= 1e-6
    d = NAIMARK.shape[1]
    for oj, xj in zip(NAIMARK, NAIMARK):
        assert np.abs(F.apply_choi(cert.choi, oj, d, d) - xj).max() < 1e-5


@pytest.mark.parametrize("seed,m,k", [(0, 2, 1), (1, 3, 2), (2, 1, 2)])
def test_hull_membership_compressions(seed, m, k):
    rng = linalg.default_rng(seed)
    omega = linalg.random_herm_tuple(2, 3, rng)
    amp = pencil.direct_sum([omega] * k)
    v = linalg.random_isometry(m, 3 * k, rng)
    x = np.stack([v.conj().T @ aj @ v for aj in amp])
    rep = F.hull_membership(omega, x)
    assert rep.status == F.MEMBER
    assert rep.residual <= 1e-6


def test_hull_membership_certificate_is_ucp():
    rng = linalg.default_rng(3)
    omega = linalg.random_herm_tuple(2, 3, rng)
    v = linalg.random_isometry(2, 3, rng)
    x = np.stack([v.conj().T @ oj @ v for oj in omega])
    rep = F.hull_membership(omega, x)
    assert rep.status == F.MEMBER
    choi = rep.certificate.choi
    assert linalg.min_eig(choi) >= -1e-6
    # unitality: the map sends I_d to I_n
    assert np.abs(F.apply_choi(choi, np.eye(3), 3, 2) - np.eye(2)).max() < 1e-5
    # Stinespring isometry reproduces the map on the generators
    iso = rep.certificate.isometry
    amp = pencil.direct_sum([omega] * rep.certificate.kraus_rank)
    for oj, xj in zip(omega, x):
        assert np.abs(iso.conj().T @ oj_amp(oj, rep.certificate.kraus_rank) @ iso - xj).max() < 1e-4


def oj_amp(oj, k):
    return np.kron(np.eye(k), oj)


def test_hull_membership_vertex_rows_of_simplex():
    # level-one hull points of the reference simplex: joint eigenvalue rows
    for u, v in ((-1.0, 0.0), (0.0, -1.0), (1.0 / 3.0, 1.0 / 3.0)):
        rep = F.hull_membership(NAIMARK, scalar_pair(u, v))
        assert rep.status == F.MEMBER, (u, v)
        assert rep.residual <= 1e-6


def test_hull_membership_barycenter():
    rep = F.hull_membership(NAIMARK, scalar_pair(-2.0 / 9.0, -2.0 / 9.0))
    assert rep.status == F.MEMBER


def test_hull_membership_outside_spectrahedron_rejected():
    # far outside D_Omega: sound fast rejection
    rep = F.hull_membership(NAIMARK, scalar_pair(9.0, 9.0))
    assert rep.status == F.NOT_MEMBER


def test_hull_membership_in_spectrahedron_but_not_hull():
    # (4, -1) is a vertex of D_N at level one but not a compression of N
    # itself, so no certificate can exist; the solver must not invent one
    rep = F.hull_membership(NAIMARK, scalar_pair(4.0, -1.0))
    assert rep.status == F.NO_CERTIFICATE


def test_choi_problem_shapes():
    prob = F.choi_problem(NAIMARK, list(NAIMARK))
    assert prob.dim == NAIMARK.shape[1] ** 2
    res = F.solve_affine_psd(prob)
    assert res.feasible


# ---------------------------------------------------------------------------
# inclusion of spectrahedra
# ---------------------------------------------------------------------------

def test_inclusion_reflexive():
    rep = F.inclusion(NAIMARK, NAIMARK, samples=10, level_cap=2)
    assert rep.status == F.INCLUDED


def test_inclusion_interval_in_double_interval():
    wide = 0.5 * INTERVAL  # L(x) = I - (A/2) x, so D = [-2, 2]
    rep = F.inclusion(INTERVAL, wide, samples=10)
    assert rep.status == F.INCLUDED


def test_inclusion_cube_not_in_spin():
    rep = F.inclusion(CUBE, SPIN, samples=20, seed=1)
    assert rep.status == F.NOT_INCLUDED
    assert rep.witness is not None
    # witness soundness: inside the cube, outside the spin disk
    assert pencil.membership(CUBE, rep.witness).is_member
    assert pencil.membership(SPIN, rep.witness).status == pencil.OUTSIDE
    # hand oracle: the corner (1, 1) already separates, exactly as the witness
    corner = scalar_pair(1.0, 1.0)
    assert pencil.membership(CUBE, corner).is_member
    assert linalg.min_eig(pencil.eval_monic(SPIN, corner)) < -0.4


def test_inclusion_spin_in_cube():
    # X1^2 + X2^2 <= I forces X_j^2 <= I, so the spin disk sits in the cube
    rep = F.inclusion(SPIN, CUBE, samples=20, seed=2)
    assert rep.status == F.INCLUDED


def test_inclusion_transports_membership():
    rng = linalg.default_rng(8)
    a = random_bounded_pencil(rng, 2, 2)
    wide = 0.5 * a
    assert F.inclusion(a, wide, samples=10).status == F.INCLUDED
    for _ in range(5):
        x = linalg.random_herm_tuple(2, 2, rng, scale=0.4)
        if pencil.membership(a, x).is_member:
            assert pencil.membership(wide, x).is_member


# ---------------------------------------------------------------------------
# boundary detection inside the hull
# ---------------------------------------------------------------------------

def test_arveson_in_hull_generator_is_boundary():
    rep = F.arveson_in_hull(NAIMARK, NAIMARK)
    assert rep.status == F.BOUNDARY
    assert rep.is_boundary


def test_arveson_in_hull_barycenter_is_not():
    rep = F.arveson_in_hull(NAIMARK, scalar_pair(-2.0 / 9.0, -2.0 / 9.0))
    assert rep.status == F.NOT_BOUNDARY
    # the certifying dilation must itself be a hull member
    assert rep.dilated is not None
    assert F.hull_membership(NAIMARK, rep.dilated).status == F.MEMBER


def test_arveson_in_hull_vertex_row():
    rep = F.arveson_in_hull(NAIMARK, scalar_pair(-1.0, 0.0))
    assert rep.status == F.BOUNDARY


def test_arveson_in_hull_direct_sum_of_rows():
    x = pencil.direct_sum([scalar_pair(-1.0, 0.0), scalar_pair(0.0, -1.0)])
    rep = F.arveson_in_hull(NAIMARK, x)
    assert rep.status == F.BOUNDARY


# ---------------------------------------------------------------------------
# polar duality
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("omega,label", [(NAIMARK, "simplex"), (CUBE, "cube")])
def test_polar_dual_no_counterexamples(omega, label):
    rep = F.polar_dual_check(omega, level=1, samples=25, seed=0)
    assert rep.counterexamples == 0, label
    assert rep.samples == 25


def test_polar_dual_level_two():
    rep = F.polar_dual_check(NAIMARK, level=2, samples=10, seed=1)
    assert rep.counterexamples == 0


# ---------------------------------------------------------------------------
# projections of spectrahedra with hidden variables
# ---------------------------------------------------------------------------

def test_drop_membership_no_hidden_variables_degenerates_to_membership():
    inside = scalar_pair(4.0, -1.0)     # vertex of D_N at level one
    outside = scalar_pair(5.0, 5.0)
    assert F.spectrahedrop_membership(NAIMARK, 2, inside).status == F.MEMBER
    assert F.spectrahedrop_membership(NAIMARK, 2, outside).status != F.MEMBER


def test_drop_membership_tv_exceptional_point():
    tv = gallery.tv_lift(1.0)
    ex = gallery.tv_exceptional_point()
    x = np.stack([ex["x"], ex["y"]])
    rep = F.spectrahedrop_membership(tv.pencil, tv.visible_vars, x)
    assert rep.status == F.MEMBER
    assert rep.residual <= 1e-6
    # the pencil stores the hidden coordinate in shifted/scaled form
    w_hat = (rep.hidden[0] + tv.aux["hidden_shift"] * np.eye(2)) / tv.aux["hidden_scale"]
    assert np.abs(w_hat - ex["w"]).max() < 1e-6


def test_drop_membership_tv_origin():
    tv = gallery.tv_lift(1.0)
    x = np.zeros((2, 1, 1))
    rep = F.spectrahedrop_membership(tv.pencil, tv.visible_vars, x)
    assert rep.status == F.MEMBER


def test_drop_membership_tv_outside():
    tv = gallery.tv_lift(1.0)
    ex = gallery.tv_exceptional_point()
    bad = np.stack([1.5 * ex["x"], 1.5 * ex["y"]])
    rep = F.spectrahedrop_membership(tv.pencil, tv.visible_vars, bad)
    assert rep.status != F.MEMBER
