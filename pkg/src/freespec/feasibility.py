"""Affine-PSD feasibility problems and the convex machinery built on them.

The workhorse is :func:`solve_affine_psd`, alternating projections with
Dykstra's correction between an affine set and the PSD cone. On top of it:

* :func:`hull_membership` — is ``X`` in the matrix convex hull of a single
  tuple ``Omega``? Decided through a unital completely positive map
  ``Omega_j -> X_j`` encoded as a Choi-matrix feasibility problem.
* :func:`inclusion` — spectrahedron inclusion ``D_B ⊆ D_A`` (Choi certificate
  for inclusion, sampled counterexamples for exclusion).
* :func:`arveson_in_hull` — column-dilation search inside a hull, used for
  boundary detection in finitely generated matrix convex sets.
* :func:`polar_dual_check` — sampled verification that the polar dual of
  ``mco({Omega})`` is the spectrahedron of ``Omega`` and vice versa.
* :func:`spectrahedrop_membership` — membership in a projection of a
  spectrahedron (hidden-variable completion).

``NoCertificate`` outcomes are exactly that: the solver gave up. They are
never reported as proofs of infeasibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg, pencil
from .errors import InputError, NumericalError
from .linalg import TOL

FEASIBLE = "feasible"
NO_CERTIFICATE = "no_certificate"

MEMBER = "member"
NOT_MEMBER = "not_member"

INCLUDED = "included"
NOT_INCLUDED = "not_included"

BOUNDARY = "boundary"
NOT_BOUNDARY = "not_boundary"

#: default residual target for feasibility claims
FEAS_TOL = 1e-6


@dataclass
class FeasibilityProblem:
    """Find a PSD matrix inside an affine family.

    The unknown is ``Z = base + sum_i s_i * generators[i]`` subject to the
    affine equalities ``extra @ s = extra_rhs`` and ``Z >= 0``. Generators may
    be any Hermitian matrices (zero generators give free scalar unknowns that
    only enter through ``extra``).

    As a special case ``generators=None`` parameterizes the full Hermitian
    space: ``s`` is then the realified coordinate vector of ``Z - base``
    (see :func:`linalg.herm_to_vec`) and ``extra`` acts on those coordinates.
    """

    dim: int
    base: np.ndarray
    generators: Optional[np.ndarray] = None
    extra: Optional[np.ndarray] = None
    extra_rhs: Optional[np.ndarray] = None

    def __post_init__(self):
        self.base = linalg.check_hermitian(self.base, what="base")
        if self.base.shape[0] != self.dim:
            raise InputError("base has wrong dimension")
        if self.generators is not None:
            gens = np.asarray(self.generators, dtype=complex)
            if gens.ndim == 2:
                gens = gens[None]
            if gens.shape[1:] != (self.dim, self.dim):
                raise InputError("generators have wrong dimension")
            self.generators = gens
        if (self.extra is None) != (self.extra_rhs is None):
            raise InputError("extra and extra_rhs must be given together")
        if self.extra is not None:
            self.extra = np.atleast_2d(np.asarray(self.extra, dtype=float))
            self.extra_rhs = np.atleast_1d(np.asarray(self.extra_rhs, dtype=float))
            if self.extra.shape[0] != self.extra_rhs.shape[0]:
                raise InputError("extra rows and rhs length differ")
            width = self.dim ** 2 if self.generators is None else self.generators.shape[0]
            if self.extra.shape[1] != width:
                raise InputError(
                    f"extra rows have width {self.extra.shape[1]}, expected {width}"
                )


@dataclass
class FeasibilityResult:
    """Outcome of :func:`solve_affine_psd`.

    ``residual`` is ``max(affine residual, |most negative eigenvalue|)`` at the
    reported iterate. ``status`` is feasible / no_certificate only; the solver
    cannot certify infeasibility.
    """

    status: str
    z: np.ndarray
    s: np.ndarray
    residual: float
    iterations: int

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


def _affine_projector(rows: np.ndarray, rhs: np.ndarray, tol: float):
    """Least-squares projector onto {v : rows @ v = rhs} with cached SVD.

    Returns (project, consistent) where ``consistent`` is False when the rows
    are inconsistent (the affine set is empty).
    """
    pinv_rows = linalg.pinv(rows, tol=1e-12).real
    # min-norm solution; if it does not satisfy the rows the system is empty
    v0 = pinv_rows @ rhs
    gap = float(np.abs(rows @ v0 - rhs).max(initial=0.0))
    consistent = gap <= 1e-9 * max(1.0, float(np.abs(rhs).max(initial=0.0)))

    def project(v):
        return v - pinv_rows @ (rows @ v - rhs)

    return project, consistent


def _polish_directions(problem: FeasibilityProblem):
    """Hermitian matrices spanning the free moves of the affine family.

    Returns ``(dirs, coeffs)`` where ``dirs[i]`` is the matrix change caused
    by the i-th free direction and ``coeffs`` maps free coordinates back to
    the problem's ``s`` vector, or ``None`` when the family is rigid.
    """
    if problem.extra is not None and problem.extra.size:
        null = linalg.null_space(problem.extra).real
    else:
        width = problem.dim ** 2 if problem.generators is None else problem.generators.shape[0]
        null = np.eye(width)
    if null.shape[1] == 0:
        return None
    if problem.generators is None:
        dirs = np.stack([linalg.vec_to_herm(col, problem.dim) for col in null.T])
    else:
        dirs = np.tensordot(null.T, problem.generators, axes=(1, 0))
    return dirs, null


def _bottom_block(zmat: np.ndarray, q: int):
    """Realified bottom-q eigenblock of a Hermitian matrix and its frame."""
    w, vecs = linalg.eigh(zmat)
    frame = vecs[:, :q]
    return linalg.herm_to_vec(frame.conj().T @ zmat @ frame), frame


def _gn_stage(zmat, y, dirs, q, max_rounds):
    """Drive the bottom-q eigenblock towards zero by damped Gauss-Newton."""
    z_cur, y_cur = zmat, y
    f_vec, frame = _bottom_block(z_cur, q)
    f_norm = float(np.linalg.norm(f_vec))
    for _ in range(max_rounds):
        if f_norm <= 1e-15:
            break
        blocks = np.einsum("ra,fab,bs->frs", frame.conj().T, dirs, frame)
        m = np.stack([linalg.herm_to_vec(b) for b in blocks]).T
        step, *_ = np.linalg.lstsq(m, -f_vec, rcond=None)
        accepted = False
        for damp in (1.0, 0.5, 0.25, 0.1, 0.03):
            z_new = z_cur + np.tensordot(damp * step, dirs, axes=(0, 0))
            f_new, frame_new = _bottom_block(z_new, q)
            norm_new = float(np.linalg.norm(f_new))
            if norm_new < f_norm * (1.0 - 0.05 * damp):
                z_cur = z_new
                y_cur = y_cur + damp * step
                f_vec, frame, f_norm = f_new, frame_new, norm_new
                accepted = True
                break
        if not accepted:
            break
    return z_cur, y_cur


def _eigenblock_polish(zmat, dirs, tol, max_rounds=120, passes=3):
    """Local refinement of an affine-exact iterate against the PSD cone.

    Alternating projections slow to a crawl whenever the feasible set touches
    the cone without interior — exactly the situation for boundary
    certificates and unique completions. There the solution has a null block
    of some size q, so we cascade damped Gauss-Newton runs that zero the
    bottom-q eigenblock for q = 1, 2, ... and keep whatever strictly improves
    the true residual. Every candidate is measured honestly, so the polish
    can never turn an infeasible problem into a certificate.
    """
    dim = zmat.shape[0]
    nfree = dirs.shape[0]
    scale = max(1.0, float(np.abs(linalg.eigh(zmat).w).max(initial=0.0)))
    best_z, best_y = zmat, np.zeros(nfree)
    best_r = float(max(0.0, -linalg.min_eig(zmat)))
    target = 1e-4 * tol
    for _ in range(passes):
        improved = False
        w = linalg.eigh(best_z).w
        q_max = int(np.searchsorted(w, 0.3 * scale))
        q_max = max(1, min(q_max, dim - 1, 8))
        z_cur, y_cur = best_z, best_y
        for q in range(1, q_max + 1):
            z_cur, y_cur = _gn_stage(z_cur, y_cur, dirs, q, max_rounds)
            r = float(max(0.0, -linalg.min_eig(z_cur)))
            if r < best_r:
                best_z, best_y, best_r = z_cur, y_cur, r
                improved = True
            else:
                z_cur, y_cur = best_z, best_y
            if best_r <= target:
                return best_z, best_y, best_r
        if not improved:
            break
    return best_z, best_y, best_r


def solve_affine_psd(
    problem: FeasibilityProblem,
    max_iter: int = 5000,
    tol: float = FEAS_TOL,
    stall_window: int = 400,
    stall_factor: float = 0.5,
    inflate: Optional[float] = None,
) -> FeasibilityResult:
    """Alternating projections with Dykstra correction on the PSD side.

    The reported residual is ``max(affine residual, |min negative
    eigenvalue|)`` at the final affine-exact iterate; ``feasible`` means it is
    at most ``tol``. To keep convergence linear when the exact feasible set
    has empty interior, the cone is inflated to ``Z >= -inflate * I``
    (default ``tol / 2``) — any point of the inflated set still satisfies the
    residual contract. Iteration stops at ``max_iter`` or when a whole
    ``stall_window`` of iterations improved the best gap by less than the
    factor ``stall_factor``.
    """
    d = problem.dim
    zdim = d * d
    if inflate is None:
        inflate = 0.5 * tol
    shifted = problem.base + inflate * np.eye(d)
    base_vec = linalg.herm_to_vec(shifted)

    if problem.generators is None:
        # variable is z (realified coordinates of Z); extra rows act on
        # s = z - base, so in z coordinates the rhs picks up rows @ base
        if problem.extra is not None:
            rows_z = problem.extra
            rhs_z = problem.extra_rhs + rows_z @ base_vec
        else:
            rows_z = np.zeros((0, zdim))
            rhs_z = np.zeros(0)
        width = zdim

        def split(v):
            return v, v - base_vec
    else:
        p = problem.generators.shape[0]
        ghat = np.stack([linalg.herm_to_vec(g) for g in problem.generators]).T  # (zdim, p)
        cons = np.hstack([np.eye(zdim), -ghat])
        cons_rhs = base_vec
        if problem.extra is not None:
            extra = np.hstack([np.zeros((problem.extra.shape[0], zdim)), problem.extra])
            rows_z = np.vstack([cons, extra])
            rhs_z = np.concatenate([cons_rhs, problem.extra_rhs])
        else:
            rows_z, rhs_z = cons, cons_rhs
        width = zdim + p

        def split(v):
            return v[:zdim], v[zdim:]

    project_affine, consistent = _affine_projector(rows_z, rhs_z, tol)
    if not consistent:
        zero = np.zeros(width)
        zv, sv = split(project_affine(zero))
        return FeasibilityResult(NO_CERTIFICATE, linalg.vec_to_herm(zv, d), sv,
                                 residual=np.inf, iterations=0)

    u = project_affine(np.zeros(width))
    corr = np.zeros(width)
    best = np.inf
    best_state = None
    checkpoint = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        # PSD projection (on the matrix part only) with Dykstra correction
        v = u + corr
        zv, _ = split(v)
        zmat = linalg.vec_to_herm(zv, d)
        w, vecs = linalg.eigh(zmat)
        zclip = (vecs * np.maximum(w, 0.0)) @ vecs.conj().T
        y = v.copy()
        y[:zdim] = linalg.herm_to_vec(linalg.hermitian_part(zclip))
        corr = v - y
        # affine projection; the y-u gap bounds both constraint violations
        u = project_affine(y)
        gap = float(np.abs(y - u).max(initial=0.0))
        if gap < best:
            best = gap
            best_state = u.copy()
        if best <= 0.25 * tol:
            break
        if it % stall_window == 0:
            # give up when a whole window brought no real progress
            if best > stall_factor * checkpoint:
                break
            checkpoint = best

    state = best_state if best_state is not None else u
    zv, sv = split(state)
    # undo the cone inflation and report the residual of the true iterate
    zmat = linalg.vec_to_herm(zv, d) - inflate * np.eye(d)
    neg = float(max(0.0, -linalg.min_eig(zmat)))
    gap = float(np.abs(rows_z @ state - rhs_z).max(initial=0.0)) if rows_z.size else 0.0
    residual = max(neg, gap)
    if residual > 0.25 * tol:
        # boundary-touching solutions defeat plain alternating projections;
        # finish with Gauss-Newton steps that stay inside the affine set
        moves = _polish_directions(problem)
        if moves is not None:
            dirs, coeffs = moves
            z_new, y_new, neg_new = _eigenblock_polish(zmat, dirs, tol)
            if max(neg_new, gap) < residual:
                zmat = z_new
                sv = sv + coeffs @ y_new
                residual = max(neg_new, gap)
    status = FEASIBLE if residual <= tol else NO_CERTIFICATE
    return FeasibilityResult(status, zmat, sv, residual=residual, iterations=it)


# ---------------------------------------------------------------------------
# Choi-matrix problems (unital completely positive interpolation)
# ---------------------------------------------------------------------------

def _unitality_rows(d: int, n: int):
    """Rows enforcing sum_k C[k-block, k-block] = I_n on the Choi matrix."""
    basis = linalg.herm_basis(n)
    eye_d = np.eye(d)
    rows = [linalg.herm_to_vec(np.kron(eye_d, h)) for h in basis]
    rhs = [float(np.trace(h).real) for h in basis]
    return rows, rhs

def _matching_rows(omega: np.ndarray, targets, block: Optional[np.ndarray] = None):
    """Rows enforcing Phi(Omega_j) = targets[j] (optionally on a sub-block).

    ``block`` is an (n, m) isometry-like selector; when given, the constraint
    is ``block* Phi(Omega_j) block = targets[j]`` with targets of size m.
    """
    m = targets[0].shape[0]
    basis = linalg.herm_basis(m)
    rows, rhs = [], []
    for oj, tj in zip(omega, targets):
        for h in basis:
            hb = h if block is None else block @ h @ block.conj().T
            rows.append(linalg.herm_to_vec(np.kron(oj.T, hb)))
            rhs.append(float(np.trace(h @ tj).real))
    return rows, rhs


def apply_choi(choi: np.ndarray, t: np.ndarray, d: int, n: int) -> np.ndarray:
    """Apply the map encoded by a Choi matrix to ``t`` (a d x d matrix)."""
    c4 = choi.reshape(d, n, d, n)
    return np.einsum("kl,krls->rs", t, c4)


@dataclass
class ChoiCertificate:
    """A unital completely positive map certifying hull membership.

    ``choi`` is the PSD Choi matrix, ``isometry`` the Stinespring isometry
    ``V`` with ``X_j ≈ V* (I_m ⊗ Omega_j) V`` (kron-rank ``m`` Kraus pieces),
    and ``residual`` the worst matching/unitality/positivity defect.
    """

    choi: np.ndarray
    isometry: np.ndarray
    kraus_rank: int
    residual: float

    def to_json(self) -> dict:
        return {"kraus_rank": self.kraus_rank, "residual": self.residual}


def _stinespring(choi: np.ndarray, d: int, n: int, tol: float = 1e-9):
    """Extract Kraus pieces / isometry from a (nearly) PSD Choi matrix."""
    w, v = linalg.eigh(choi)
    cut = tol * max(1.0, float(w[-1]) if w.size else 0.0)
    keep = w > cut
    kraus = []
    for lam, vec in zip(w[keep], v[:, keep].T):
        kraus.append(np.sqrt(lam) * vec.reshape(d, n).conj())
    if not kraus:
        kraus = [np.zeros((d, n), dtype=complex)]
    vstack = np.vstack(kraus)
    return vstack, len(kraus)


@dataclass
class HullMembershipReport:
    status: str
    certificate: Optional[ChoiCertificate]
    min_eig: float
    residual: float

    @property
    def is_member(self) -> bool:
        return self.status == MEMBER

    def to_json(self) -> dict:
        out = {"status": self.status, "min_eig": self.min_eig, "residual": self.residual}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def choi_problem(omega, targets, extra_rows=None, extra_rhs=None) -> FeasibilityProblem:
    """Build the Choi feasibility problem for a UCP map Omega_j -> targets[j].

    ``targets`` must be Hermitian of a common size n; extra rows (already in
    realified Choi coordinates) can append e.g. normalization functionals.
    """
    omega = pencil.as_tuple(omega, what="generator tuple")
    targets = [linalg.check_hermitian(t, what="target") for t in targets]
    d = omega.shape[1]
    n = targets[0].shape[0]
    rows, rhs = _unitality_rows(d, n)
    mrows, mrhs = _matching_rows(omega, targets)
    rows += mrows
    rhs += mrhs
    if extra_rows is not None:
        rows += list(extra_rows)
        rhs += list(extra_rhs)
    return FeasibilityProblem(
        dim=d * n,
        base=np.zeros((d * n, d * n), dtype=complex),
        generators=None,
        extra=np.array(rows, dtype=float),
        extra_rhs=np.array(rhs, dtype=float),
    )


def hull_membership(
    omega,
    x,
    tol: float = TOL,
    feas_tol: float = FEAS_TOL,
    max_iter: int = 5000,
) -> HullMembershipReport:
    """Decide membership of ``X`` in the matrix convex hull of ``Omega``.

    Membership is equivalent to the existence of a unital completely positive
    map with ``Omega_j -> X_j``; that is a Choi-matrix feasibility problem.
    When ``Omega`` lies in its own spectrahedron, ``min_eig(L_Omega(X)) < -tol``
    is a sound fast rejection (the hull lies inside the spectrahedron).
    """
    omega = pencil.as_tuple(omega, what="generator tuple")
    x = pencil.as_tuple(x, what="point")
    d, n = omega.shape[1], x.shape[1]
    me = linalg.min_eig(pencil.eval_monic(omega, x))
    omega_self = linalg.min_eig(pencil.eval_monic(omega, omega)) >= -tol
    if omega_self and me < -tol:
        return HullMembershipReport(NOT_MEMBER, None, min_eig=me, residual=np.inf)

    problem = choi_problem(omega, list(x))
    res = solve_affine_psd(problem, max_iter=max_iter, tol=feas_tol)
    if not res.feasible:
        return HullMembershipReport(NO_CERTIFICATE, None, min_eig=me, residual=res.residual)
    choi = res.z
    iso, rank = _stinespring(choi, d, n)
    # worst defect of the recovered certificate
    defects = [float(np.abs(apply_choi(choi, oj, d, n) - xj).max()) for oj, xj in zip(omega, x)]
    defects.append(float(np.abs(apply_choi(choi, np.eye(d), d, n) - np.eye(n)).max()))
    defects.append(res.residual)
    cert = ChoiCertificate(choi=choi, isometry=iso, kraus_rank=rank,
                           residual=float(max(defects)))
    return HullMembershipReport(MEMBER, cert, min_eig=me, residual=cert.residual)


# ---------------------------------------------------------------------------
# spectrahedron inclusion
# ---------------------------------------------------------------------------

@dataclass
class InclusionReport:
    status: str
    witness: Optional[np.ndarray]
    certificate: Optional[ChoiCertificate]
    checked_samples: int

    def to_json(self) -> dict:
        out = {"status": self.status, "checked_samples": self.checked_samples}
        if self.witness is not None:
            out["witness"] = pencil.tuple_to_json(self.witness)
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def inclusion(
    b,
    a,
    level_cap: int = 2,
    samples: int = 40,
    seed=0,
    tol: float = TOL,
    feas_tol: float = FEAS_TOL,
    max_iter: int = 5000,
) -> InclusionReport:
    """Decide whether the spectrahedron of ``B`` sits inside that of ``A``.

    Sampled boundary points of ``D_B`` at levels up to ``level_cap`` give sound
    ``not_included`` witnesses; the Choi problem ``B_j -> A_j`` gives a sound
    ``included`` certificate (complete when ``D_B`` is bounded). Otherwise
    ``no_certificate``.
    """
    b = pencil.as_tuple(b, what="inner pencil")
    a = pencil.as_tuple(a, what="outer pencil")
    if b.shape[0] != a.shape[0]:
        raise InputError("inclusion needs pencils in the same number of variables")
    rng = linalg.default_rng(seed)
    g = b.shape[0]
    checked = 0
    for _ in range(samples):
        n = int(rng.integers(1, level_cap + 1))
        h = linalg.random_herm_tuple(g, n, rng)
        hit = pencil.scale_to_boundary(b, h, tol=tol)
        if hit is None:
            continue
        _, x = hit
        checked += 1
        if linalg.min_eig(pencil.eval_monic(a, x)) < -max(tol, 1e-9):
            return InclusionReport(NOT_INCLUDED, x, None, checked)
    rep = hull_membership(b, a, tol=tol, feas_tol=feas_tol, max_iter=max_iter)
    if rep.status == MEMBER:
        return InclusionReport(INCLUDED, None, rep.certificate, checked)
    return InclusionReport(NO_CERTIFICATE, None, None, checked)


# ---------------------------------------------------------------------------
# Arveson boundary inside a hull (column dilations)
# ---------------------------------------------------------------------------

def _alpha_directions(g: int, n: int, extra: int, rng):
    """Coordinate (real and imaginary) plus random unit directions in (C^n)^g."""
    dirs = []
    for j in range(g):
        for i in range(n):
            e = np.zeros((g, n), dtype=complex)
            e[j, i] = 1.0
            dirs.append(e)
            e2 = np.zeros((g, n), dtype=complex)
            e2[j, i] = 1j
            dirs.append(e2)
    for _ in range(extra):
        v = rng.standard_normal((g, n)) + 1j * rng.standard_normal((g, n))
        dirs.append(v / np.linalg.norm(v))
    return dirs


@dataclass
class HullBoundaryReport:
    status: str
    alpha: Optional[np.ndarray]
    beta: Optional[np.ndarray]
    dilated: Optional[np.ndarray]
    directions_tried: int

    @property
    def is_boundary(self) -> bool:
        return self.status == BOUNDARY

    def to_json(self) -> dict:
        out = {"status": self.status, "directions_tried": self.directions_tried}
        if self.dilated is not None:
            out["dilated"] = pencil.tuple_to_json(self.dilated)
        return out


def arveson_in_hull(
    omega,
    x,
    directions: int = 6,
    seed=0,
    tol: float = TOL,
    feas_tol: float = FEAS_TOL,
    max_iter: int = 4000,
    delta: float = 1e-2,
) -> HullBoundaryReport:
    """Column-dilation test for the Arveson boundary of ``mco({Omega})``.

    For each normalized direction ``c`` the Choi problem for the dilated
    target ``[[X, alpha], [alpha*, beta]]`` is solved jointly in the Choi
    matrix with the off-diagonal column and corner left free except for the
    normalization ``Re<c, alpha> = delta``. A feasible solve is verified by
    an independent hull-membership run on the dilated tuple; if every
    direction fails under two seeds, the point is reported as boundary.
    """
    omega = pencil.as_tuple(omega, what="generator tuple")
    x = pencil.as_tuple(x, what="point")
    base_rep = hull_membership(omega, x, tol=tol, feas_tol=feas_tol, max_iter=max_iter)
    if base_rep.status == NOT_MEMBER:
        raise InputError("point is not in the hull; Arveson test needs a member")
    g, n = x.shape[0], x.shape[1]
    d = omega.shape[1]

    # constraints shared by every direction: unitality + matching on the
    # top-left n x n corner of the dilated (n+1)-level target
    sel = np.zeros((n + 1, n), dtype=complex)
    sel[:n, :n] = np.eye(n)
    rows, rhs = _unitality_rows(d, n + 1)
    mrows, mrhs = _matching_rows(omega, list(x), block=sel)
    rows += mrows
    rhs += mrhs
    rows = np.array(rows, dtype=float)
    rhs = np.array(rhs, dtype=float)

    e_last = np.zeros(n + 1)
    e_last[n] = 1.0

    tried = 0
    for attempt_seed in (seed, None if seed is None else seed + 104729):
        rng = linalg.default_rng(attempt_seed)
        for c in _alpha_directions(g, n, directions, rng):
            tried += 1
            norm_mat = np.zeros((d * (n + 1), d * (n + 1)), dtype=complex)
            for j in range(g):
                # functional Re<alpha_j, c_j> = tr(S_j Y_j) with
                # S_j = (c_j e* + e c_j*) / 2 acting on the dilated level
                cvec = np.zeros(n + 1, dtype=complex)
                cvec[:n] = c[j]
                sj = 0.5 * (np.outer(cvec, e_last) + np.outer(e_last, cvec.conj()))
                norm_mat += np.kron(omega[j].T, sj)
            norm_row = linalg.herm_to_vec(linalg.hermitian_part(norm_mat))
            problem = FeasibilityProblem(
                dim=d * (n + 1),
                base=np.zeros((d * (n + 1), d * (n + 1)), dtype=complex),
                generators=None,
                extra=np.vstack([rows, norm_row]),
                extra_rhs=np.concatenate([rhs, [delta]]),
            )
            res = solve_affine_psd(problem, max_iter=max_iter, tol=feas_tol)
            if not res.feasible:
                continue
            dilated = np.stack(
                [linalg.hermitian_part(apply_choi(res.z, oj, d, n + 1)) for oj in omega]
            )
            alpha = dilated[:, :n, n]
            beta = dilated[:, n, n].real
            if np.linalg.norm(alpha) < 0.25 * delta:
                continue
            check = hull_membership(omega, dilated, tol=tol, feas_tol=feas_tol,
                                    max_iter=max_iter)
            if check.status == MEMBER:
                return HullBoundaryReport(NOT_BOUNDARY, alpha, beta, dilated, tried)
    return HullBoundaryReport(BOUNDARY, None, None, None, tried)


# ---------------------------------------------------------------------------
# polar duality
# ---------------------------------------------------------------------------

@dataclass
class PolarDualReport:
    level: int
    samples: int
    counterexamples: int
    battery_size: int

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "samples": self.samples,
            "counterexamples": self.counterexamples,
            "battery_size": self.battery_size,
        }


def polar_dual_check(
    omega,
    level: int = 1,
    samples: int = 100,
    seed=0,
    tol: float = TOL,
    battery: int = 4,
) -> PolarDualReport:
    """Sampled two-sided check of hull/spectrahedron polar duality.

    For random tuples ``A`` at the given level, membership of ``A`` in the
    spectrahedron of ``Omega`` must coincide with ``L_A(Y) >= 0`` for every
    battery member ``Y`` of the hull of ``Omega`` (the battery always contains
    ``Omega`` itself plus random isometry compressions of ``I_m ⊗ Omega``).
    """
    omega = pencil.as_tuple(omega, what="generator tuple")
    g, d = omega.shape[0], omega.shape[1]
    rng = linalg.default_rng(seed)
    members = [omega]
    for _ in range(battery):
        m = int(rng.integers(1, 3))
        size = int(rng.integers(1, m * d + 1))
        v = linalg.random_isometry(size, m * d, rng)
        big = np.stack([np.kron(np.eye(m), oj) for oj in omega])
        members.append(np.stack([v.conj().T @ bj @ v for bj in big]))

    bad = 0
    radii = [0.5, 1.0, 1.5]
    for i in range(samples):
        h = linalg.random_herm_tuple(g, level, rng)
        hit = pencil.scale_to_boundary(omega, h, tol=tol)
        if hit is None:
            a = h
        else:
            t, _ = hit
            a = radii[i % len(radii)] * t * h
        lhs = linalg.min_eig(pencil.eval_monic(omega, a)) >= -tol
        rhs = all(
            linalg.min_eig(pencil.eval_monic(a, y)) >= -tol for y in members
        )
        if lhs != rhs:
            bad += 1
    return PolarDualReport(level=level, samples=samples, counterexamples=bad,
                           battery_size=len(members))


# ---------------------------------------------------------------------------
# projections of spectrahedra (hidden variables)
# ---------------------------------------------------------------------------

@dataclass
class DropMembershipReport:
    status: str
    hidden: Optional[np.ndarray]
    residual: float

    @property
    def is_member(self) -> bool:
        return self.status == MEMBER

    def to_json(self) -> dict:
        out = {"status": self.status, "residual": self.residual}
        if self.hidden is not None:
            out["hidden"] = pencil.tuple_to_json(self.hidden)
        return out


def spectrahedrop_membership(
    a,
    visible: int,
    x,
    tol: float = TOL,
    feas_tol: float = FEAS_TOL,
    max_iter: int = 5000,
) -> DropMembershipReport:
    """Membership of ``x`` in the projection of a spectrahedron.

    The pencil ``a`` has ``visible`` visible variables followed by hidden
    ones; the solver looks for Hermitian hidden assignments ``W`` with
    ``L_a(x, W) >= 0``. A ``member`` verdict returns the completion.
    """
    a = pencil.as_tuple(a, what="pencil")
    x = pencil.as_tuple(x, what="point")
    g, d = a.shape[0], a.shape[1]
    if not 0 < visible <= g:
        raise InputError("visible variable count out of range")
    if x.shape[0] != visible:
        raise InputError(f"point has {x.shape[0]} coordinates, expected {visible}")
    hidden_count = g - visible
    n = x.shape[1]
    base = pencil.eval_monic(a[:visible], x)
    if hidden_count == 0:
        me = linalg.min_eig(base)
        status = MEMBER if me >= -feas_tol else NO_CERTIFICATE
        return DropMembershipReport(status, None, residual=max(0.0, -me))
    basis = linalg.herm_basis(n)
    gens = []
    for h in range(hidden_count):
        for bmat in basis:
            gens.append(-np.kron(a[visible + h], bmat))
    problem = FeasibilityProblem(dim=d * n, base=base, generators=np.stack(gens))
    res = solve_affine_psd(problem, max_iter=max_iter, tol=feas_tol)
    if not res.feasible:
        return DropMembershipReport(NO_CERTIFICATE, None, residual=res.residual)
    nb = n * n
    hidden = np.stack(
        [
            linalg.hermitian_part(
                sum(res.s[h * nb + b] * basis[b] for b in range(nb))
            )
            for h in range(hidden_count)
        ]
    )
    # report the true residual of the recovered completion
    full = np.concatenate([x, hidden])
    me = linalg.min_eig(pencil.eval_monic(a, full))
    return DropMembershipReport(MEMBER, hidden, residual=float(max(0.0, -me)))
