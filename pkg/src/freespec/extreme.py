"""Extreme-point tests for free spectrahedra via kernel containment.

For a member ``X`` of the free spectrahedron of ``A`` the three relevant
notions are characterized through the kernel of ``L_A(X)``:

* Euclidean extreme: the only Hermitian tuple ``Y`` with
  ``ker L_A(X) ⊆ ker Lam_A(Y)`` is ``Y = 0``.
* Arveson boundary: the only column tuple ``alpha`` with
  ``ker L_A(X) ⊆ ker (sum_j A_j ⊗ alpha_j)*`` is ``alpha = 0``; equivalently
  ``X`` admits no nontrivial one-column dilation inside the spectrahedron.
* Absolute extreme: Arveson boundary and irreducible.

Failed tests return verified witnesses: a perturbation ``Y`` with
``X ± tY`` both members, or a dilation ``[[X, t alpha], [t alpha*, beta]]``
that is again a member. :func:`dilation_oracle` is an independent
feasibility-solver route to the same dilation question, kept deliberately
separate from the kernel test so the two can cross-check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import feasibility, linalg, pencil, structure
from .errors import InputError
from .linalg import TOL

#: eigenvalue slack accepted when verifying witnesses by direct membership
WITNESS_TOL = 1e-9


def _require_member(a, x, tol):
    a = pencil.as_tuple(a, what="pencil")
    _, x = pencil.check_compatible(a, x)
    rep = pencil.membership(a, x, tol=tol)
    if rep.status == pencil.OUTSIDE:
        raise InputError(
            f"point is outside the spectrahedron (min_eig {rep.min_eig:.3e})"
        )
    return a, x, rep


def column_dilation(x, alpha, beta=None) -> np.ndarray:
    """One-column dilation ``[[X_j, alpha_j], [alpha_j*, beta_j]]``.

    ``alpha`` is a (g, n) array of columns; ``beta`` a length-g real vector
    (zero when omitted). Result is a (g, n+1, n+1) Hermitian tuple.
    """
    x = pencil.as_tuple(x, what="point")
    alpha = np.asarray(alpha, dtype=complex)
    if alpha.ndim == 1:
        alpha = alpha[None]
    g, n = x.shape[0], x.shape[1]
    if alpha.shape != (g, n):
        raise InputError(f"alpha must be shaped ({g}, {n}), got {alpha.shape}")
    if beta is None:
        beta = np.zeros(g)
    beta = np.asarray(beta, dtype=float).reshape(g)
    out = np.zeros((g, n + 1, n + 1), dtype=complex)
    out[:, :n, :n] = x
    out[:, :n, n] = alpha
    out[:, n, :n] = alpha.conj()
    out[:, n, n] = beta
    return out


def _bisect_scale(feasible, max_iter: int = 40) -> float:
    """Largest t in (0, 1] with feasible(t), by bisection from above."""
    if feasible(1.0):
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# Euclidean extreme points
# ---------------------------------------------------------------------------

@dataclass
class EuclideanVerdict:
    """Outcome of the Euclidean extreme-point test.

    For non-extreme points, ``witness`` is a unit Frobenius-norm Hermitian
    tuple ``Y`` and ``t > 0`` a verified scale with ``X ± t Y`` both members;
    ``solution_dim`` is the dimension of the space of admissible ``Y``.
    """

    extreme: bool
    witness: Optional[np.ndarray]
    t: Optional[float]
    kernel_dim: int
    solution_dim: int

    def __bool__(self) -> bool:
        return self.extreme

    def to_json(self) -> dict:
        out = {
            "extreme": self.extreme,
            "kernel_dim": self.kernel_dim,
            "solution_dim": self.solution_dim,
        }
        if self.witness is not None:
            out["witness"] = pencil.tuple_to_json(self.witness)
            out["t"] = self.t
        return out


def _euclidean_system(a, kernel, basis):
    """Real matrix of the constraints ``Lam_A(Y) k = 0`` over Y coordinates.

    Columns are indexed by (variable j, Hermitian basis element b); each
    kernel vector contributes ``d*n`` complex rows split into real and
    imaginary parts. Uses ``(A_j ⊗ H) k = vec(A_j K H^T)`` with K the
    (d, n) matrix reshape of ``k``.
    """
    g, d = a.shape[0], a.shape[1]
    n = basis.shape[1]
    cols = []
    for j in range(g):
        for h in basis:
            col = []
            for k in kernel.T:
                km = k.reshape(d, n)
                col.append((a[j] @ km @ h.T).ravel())
            v = np.concatenate(col)
            cols.append(np.concatenate([v.real, v.imag]))
    return np.array(cols).T


def is_euclidean_extreme(a, x, tol: float = TOL) -> EuclideanVerdict:
    """Kernel test for Euclidean (classical) extreme points.

    Interior points are never extreme; the witness is then the first
    coordinate direction. On the boundary the admissible perturbations form
    the nullspace of a real linear system; a nonzero solution is returned as
    a witness scaled by bisection so that ``X ± t Y`` stay members.
    """
    a, x, rep = _require_member(a, x, tol)
    g, n = a.shape[0], x.shape[1]
    basis = linalg.herm_basis(n)

    if rep.status == pencil.INTERIOR:
        witness = np.zeros((g, n, n), dtype=complex)
        witness[0] = np.eye(n) / np.sqrt(n)
        t = _scale_witness(a, x, witness, tol)
        return EuclideanVerdict(False, witness, t, kernel_dim=0,
                                solution_dim=g * n * n)

    system = _euclidean_system(a, rep.kernel, basis)
    null = linalg.null_space(system, tol=tol)
    if null.shape[1] == 0:
        return EuclideanVerdict(True, None, None,
                                kernel_dim=rep.kernel.shape[1], solution_dim=0)
    y = null[:, -1].real
    witness = np.stack(
        [np.tensordot(y[j * n * n:(j + 1) * n * n], basis, axes=1) for j in range(g)]
    )
    witness = witness / np.linalg.norm(witness)
    t = _scale_witness(a, x, witness, tol)
    return EuclideanVerdict(False, witness, t, kernel_dim=rep.kernel.shape[1],
                            solution_dim=null.shape[1])


def _scale_witness(a, x, y, tol) -> float:
    def feasible(t):
        lo = linalg.min_eig(pencil.eval_monic(a, x - t * y))
        hi = linalg.min_eig(pencil.eval_monic(a, x + t * y))
        return min(lo, hi) >= -WITNESS_TOL

    t = _bisect_scale(feasible)
    if t > 0.0:
        return t
    # bisection can only fail by landing at 0; any small enough step works
    top = float(np.abs(linalg.eigh(pencil.eval_hom(a, y)).w).max())
    return WITNESS_TOL / max(1.0, top)


# ---------------------------------------------------------------------------
# Arveson boundary
# ---------------------------------------------------------------------------

@dataclass
class ArvesonVerdict:
    """Outcome of the Arveson boundary test.

    For non-boundary points ``alpha`` (a (g, n) column tuple, unit norm) and
    ``t > 0`` give a verified member dilation ``column_dilation(X, t*alpha)``;
    ``solution_dim`` is the complex dimension of admissible columns.
    """

    boundary: bool
    alpha: Optional[np.ndarray]
    t: Optional[float]
    kernel_dim: int
    solution_dim: int

    def __bool__(self) -> bool:
        return self.boundary

    def to_json(self) -> dict:
        out = {
            "boundary": self.boundary,
            "kernel_dim": self.kernel_dim,
            "solution_dim": self.solution_dim,
        }
        if self.alpha is not None:
            out["alpha"] = [
                [[float(v.real), float(v.imag)] for v in row] for row in self.alpha
            ]
            out["t"] = self.t
        return out


def _arveson_system(a, kernel, n):
    """Complex matrix of ``k* (sum_j A_j ⊗ alpha_j) = 0`` over alpha coords.

    Unknowns are the ``g*n`` complex entries of alpha; each kernel vector
    gives ``d`` complex equations with coefficient ``(K[:, i]* A_j)[c]`` for
    the (j, i) unknown, where K is the (d, n) reshape of the kernel vector.
    """
    g, d = a.shape[0], a.shape[1]
    rows = []
    for k in kernel.T:
        km = k.reshape(d, n)
        block = np.zeros((d, g * n), dtype=complex)
        for j in range(g):
            coef = km.conj().T @ a[j]  # (n, d): row i = K[:, i]* A_j
            block[:, j * n:(j + 1) * n] = coef.T
        rows.append(block)
    return np.vstack(rows)


def is_arveson(a, x, tol: float = TOL) -> ArvesonVerdict:
    """Kernel test for membership in the Arveson boundary.

    ``X`` is in the boundary exactly when no nonzero column tuple ``alpha``
    satisfies ``ker L_A(X) ⊆ ker (sum_j A_j ⊗ alpha_j)*``; such an ``alpha``
    yields a one-column member dilation, returned as a verified witness.
    """
    a, x, rep = _require_member(a, x, tol)
    g, n = a.shape[0], x.shape[1]

    if rep.status == pencil.INTERIOR:
        alpha = np.zeros((g, n), dtype=complex)
        alpha[0, 0] = 1.0
        t = _scale_alpha(a, x, alpha)
        return ArvesonVerdict(False, alpha, t, kernel_dim=0, solution_dim=g * n)

    system = _arveson_system(a, rep.kernel, n)
    null = linalg.null_space(system, tol=tol)
    if null.shape[1] == 0:
        return ArvesonVerdict(True, None, None, kernel_dim=rep.kernel.shape[1],
                              solution_dim=0)
    alpha = null[:, -1].reshape(g, n)
    alpha = alpha / np.linalg.norm(alpha)
    t = _scale_alpha(a, x, alpha)
    return ArvesonVerdict(False, alpha, t, kernel_dim=rep.kernel.shape[1],
                          solution_dim=null.shape[1])


def _scale_alpha(a, x, alpha) -> float:
    def feasible(t):
        z = column_dilation(x, t * alpha)
        return linalg.min_eig(pencil.eval_monic(a, z)) >= -WITNESS_TOL

    t = _bisect_scale(feasible)
    if t > 0.0:
        return t
    return 0.0  # should not happen for admissible columns; report honestly


# ---------------------------------------------------------------------------
# irreducibility and absolute extreme points
# ---------------------------------------------------------------------------

@dataclass
class IrreducibilityVerdict:
    irreducible: bool
    commutant_dim: int
    projection: Optional[np.ndarray]

    def __bool__(self) -> bool:
        return self.irreducible

    def to_json(self) -> dict:
        out = {"irreducible": self.irreducible, "commutant_dim": self.commutant_dim}
        if self.projection is not None:
            out["projection_rank"] = int(round(float(np.trace(self.projection).real)))
        return out


def is_irreducible(x, tol: float = TOL) -> IrreducibilityVerdict:
    """Trivial-commutant test, with a reducing projection as witness."""
    x = pencil.as_tuple(x, what="tuple")
    dim = structure.commutant_dim(x, tol=tol)
    if dim == 1:
        return IrreducibilityVerdict(True, dim, None)
    proj = structure.reducing_projection(x, tol=tol)
    return IrreducibilityVerdict(False, dim, proj)


@dataclass
class AbsoluteVerdict:
    absolute: bool
    arveson: ArvesonVerdict
    irreducibility: IrreducibilityVerdict

    def __bool__(self) -> bool:
        return self.absolute

    def to_json(self) -> dict:
        return {
            "absolute": self.absolute,
            "arveson": self.arveson.to_json(),
            "irreducibility": self.irreducibility.to_json(),
        }


def is_absolute_extreme(a, x, tol: float = TOL) -> AbsoluteVerdict:
    """Absolute extreme points are the irreducible Arveson boundary points."""
    arv = is_arveson(a, x, tol=tol)
    irr = is_irreducible(x, tol=tol)
    return AbsoluteVerdict(arv.boundary and irr.irreducible, arv, irr)


@dataclass
class MatrixExtremeReport:
    status: str  # "yes" / "no" / "unknown"
    reason: str

    def to_json(self) -> dict:
        return {"status": self.status, "reason": self.reason}


def matrix_extreme_status(a, x, tol: float = TOL) -> MatrixExtremeReport:
    """Partial test for matrix extreme points.

    Matrix extreme points sit between the Euclidean extreme points and the
    absolute extreme points, so only a sandwich argument is available:
    irreducible Arveson boundary points are matrix extreme; points that are
    reducible or not Euclidean extreme are not; the rest stay unknown.
    """
    irr = is_irreducible(x, tol=tol)
    if not irr.irreducible:
        return MatrixExtremeReport("no", "reducible points are never matrix extreme")
    arv = is_arveson(a, x, tol=tol)
    if arv.boundary:
        return MatrixExtremeReport(
            "yes", "irreducible Arveson boundary points are matrix extreme"
        )
    euc = is_euclidean_extreme(a, x, tol=tol)
    if not euc.extreme:
        return MatrixExtremeReport(
            "no", "matrix extreme points must be Euclidean extreme"
        )
    return MatrixExtremeReport(
        "unknown",
        "Euclidean extreme and irreducible but not Arveson; the implemented "
        "tests cannot separate matrix extreme from merely Euclidean here",
    )


# ---------------------------------------------------------------------------
# independent dilation oracle
# ---------------------------------------------------------------------------

@dataclass
class OracleVerdict:
    """Outcome of the feasibility-solver dilation search.

    ``dilation_found`` means a verified nontrivial one-column dilation exists
    (the point is not in the Arveson boundary); the converse direction is
    only as strong as the direction battery and solver effort.
    """

    dilation_found: bool
    alpha: Optional[np.ndarray]
    beta: Optional[np.ndarray]
    residual: float
    directions_tried: int

    def to_json(self) -> dict:
        return {
            "dilation_found": self.dilation_found,
            "residual": self.residual,
            "directions_tried": self.directions_tried,
        }


def dilation_oracle(
    a,
    x,
    directions: int = 6,
    seed=0,
    tol: float = TOL,
    feas_tol: float = 1e-7,
    max_iter: int = 4000,
    delta: float = 1e-2,
) -> OracleVerdict:
    """Search for one-column dilations with a convex feasibility solver.

    The dilation ``[[X, alpha], [alpha*, beta]]`` stays in the spectrahedron
    exactly when the block matrix ``[[L_A(X), -c(alpha)], [-c(alpha)*,
    L_A(beta)]]`` is PSD, an affine condition in ``(alpha, beta)``. For each
    direction ``c`` the solver runs with the normalization
    ``Re<c, alpha> = delta``; any hit is verified by direct membership of the
    dilated tuple before being reported.

    This deliberately shares no code path with :func:`is_arveson`.
    """
    a, x, rep = _require_member(a, x, tol)
    g, d, n = a.shape[0], a.shape[1], x.shape[1]
    lx = pencil.eval_monic(a, x)
    dim = d * n + d

    base = np.zeros((dim, dim), dtype=complex)
    base[:d * n, :d * n] = lx
    base[d * n:, d * n:] = np.eye(d)

    # real parameters: alpha over the 2*g*n coordinate directions, then beta
    alpha_dirs = []
    for j in range(g):
        for i in range(n):
            e = np.zeros((g, n), dtype=complex)
            e[j, i] = 1.0
            alpha_dirs.append(e)
            e2 = np.zeros((g, n), dtype=complex)
            e2[j, i] = 1j
            alpha_dirs.append(e2)
    gens = []
    for e in alpha_dirs:
        c = pencil.eval_hom_col(a, e)
        m = np.zeros((dim, dim), dtype=complex)
        m[:d * n, d * n:] = -c
        m[d * n:, :d * n] = -c.conj().T
        gens.append(m)
    for j in range(g):
        m = np.zeros((dim, dim), dtype=complex)
        m[d * n:, d * n:] = -a[j]
        gens.append(m)
    gens = np.stack(gens)
    p_alpha = len(alpha_dirs)

    rng = linalg.default_rng(seed)
    cands = []
    for _ in range(directions):
        v = rng.standard_normal((g, n)) + 1j * rng.standard_normal((g, n))
        cands.append(v / np.linalg.norm(v))
    for e in alpha_dirs:
        cands.append(e)

    tried = 0
    for c in cands:
        tried += 1
        row = np.zeros(gens.shape[0])
        for p, e in enumerate(alpha_dirs):
            row[p] = float(np.vdot(c, e).real)
        problem = feasibility.FeasibilityProblem(
            dim=dim, base=base, generators=gens,
            extra=row[None], extra_rhs=np.array([delta]),
        )
        res = feasibility.solve_affine_psd(problem, max_iter=max_iter, tol=feas_tol,
                                           stall_window=200)
        if not res.feasible:
            continue
        alpha = np.zeros((g, n), dtype=complex)
        for p, e in enumerate(alpha_dirs):
            alpha += res.s[p] * e
        beta = res.s[p_alpha:].real
        if np.linalg.norm(alpha) < 0.25 * delta:
            continue
        z = column_dilation(x, alpha, beta)
        me = linalg.min_eig(pencil.eval_monic(a, z))
        if me >= -1e-6:
            return OracleVerdict(True, alpha, beta, residual=float(max(0.0, -me)),
                                 directions_tried=tried)
    return OracleVerdict(False, None, None, residual=np.inf, directions_tried=tried)
