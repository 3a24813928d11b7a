"""Monic linear pencils, tuple JSON I/O, membership and boundedness.

A g-tuple ``A`` of Hermitian ``d x d`` coefficient matrices defines the monic
pencil ``L_A(X) = I - sum_j A_j ⊗ X_j`` and its homogeneous part
``Lam_A(X) = sum_j A_j ⊗ X_j``; the positivity domain of ``L_A`` is evaluated
levelwise on Hermitian tuples ``X`` of any size ``n``.

Tuples travel as JSON objects ``{"g": int, "n": int, "matrices": [...]}`` where
each matrix is a row-major list of ``[re, im]`` entry pairs. Loaders reject
matrices whose Hermitian defect exceeds a relative 1e-10 and store the
symmetrized data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg
from .errors import InputError
from .linalg import TOL


# ---------------------------------------------------------------------------
# tuple JSON I/O
# ---------------------------------------------------------------------------

def as_tuple(matrices, what: str = "tuple") -> np.ndarray:
    """Coerce a sequence of matrices into a validated (g, n, n) Hermitian stack.

    Level-1 points may be passed as plain length-g vectors.
    """
    arr = np.asarray(matrices, dtype=complex)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1, 1)
    if arr.ndim == 2:
        arr = arr[None]
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise InputError(f"{what} must be a stack of square matrices, got {arr.shape}")
    if arr.shape[0] == 0:
        raise InputError(f"{what} must contain at least one matrix")
    return np.stack(
        [linalg.check_hermitian(a, what=f"{what}[{j}]") for j, a in enumerate(arr)]
    )


def tuple_to_json(a) -> dict:
    """Serialize a Hermitian tuple to the shared JSON schema."""
    a = np.asarray(a, dtype=complex)
    if a.ndim == 2:
        a = a[None]
    g, n, _ = a.shape
    mats = [[[[float(e.real), float(e.imag)] for e in row] for row in m] for m in a]
    return {"g": g, "n": n, "matrices": mats}


def tuple_from_json(obj) -> np.ndarray:
    """Load a validated Hermitian tuple from the shared JSON schema."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise InputError("tuple JSON must be an object")
    if "matrices" not in obj and isinstance(obj.get("pencil"), dict):
        # gallery files wrap the coefficient tuple under a "pencil" key
        obj = obj["pencil"]
    for key in ("g", "n", "matrices"):
        if key not in obj:
            raise InputError(f"tuple JSON is missing key {key!r}")
    g, n = int(obj["g"]), int(obj["n"])
    mats = obj["matrices"]
    if len(mats) != g:
        raise InputError(f"expected {g} matrices, got {len(mats)}")
    out = np.zeros((g, n, n), dtype=complex)
    for j, m in enumerate(mats):
        if len(m) != n or any(len(row) != n for row in m):
            raise InputError(f"matrix {j} is not {n}x{n}")
        for r, row in enumerate(m):
            for c, entry in enumerate(row):
                if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
                    raise InputError(
                        f"matrix {j} entry ({r},{c}) must be an [re, im] pair"
                    )
                out[j, r, c] = float(entry[0]) + 1j * float(entry[1])
    return as_tuple(out)


def read_tuple(path) -> np.ndarray:
    """Read a tuple from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        return tuple_from_json(json.load(fh))


def write_tuple(path, a) -> None:
    """Write a tuple to a JSON file."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(tuple_to_json(a), fh)
        fh.write("\n")


def direct_sum(tuples) -> np.ndarray:
    """Coordinatewise direct sum of Hermitian g-tuples.

    Every input must share the same ``g``; the result has size equal to the
    sum of the input sizes, with the summands placed as diagonal blocks in
    the given order.
    """
    stacks = [as_tuple(t, what="summand") for t in tuples]
    if not stacks:
        raise InputError("direct_sum needs at least one summand")
    g = stacks[0].shape[0]
    if any(s.shape[0] != g for s in stacks):
        raise InputError("direct_sum needs tuples with a common g")
    total = sum(s.shape[1] for s in stacks)
    out = np.zeros((g, total, total), dtype=complex)
    at = 0
    for s in stacks:
        n = s.shape[1]
        out[:, at:at + n, at:at + n] = s
        at += n
    return out


# ---------------------------------------------------------------------------
# pencil evaluation
# ---------------------------------------------------------------------------

def check_compatible(a, x) -> tuple[np.ndarray, np.ndarray]:
    """Validate that pencil coefficients and point have matching length g."""
    a = np.asarray(a, dtype=complex)
    x = np.asarray(x, dtype=complex)
    if x.ndim == 1:
        # level-1 points may be given as plain real/complex vectors
        x = x.reshape(-1, 1, 1)
    if a.ndim == 2:
        a = a[None]
    if x.ndim == 2:
        x = x[None]
    if a.shape[0] != x.shape[0]:
        raise InputError(
            f"pencil has g={a.shape[0]} but point has g={x.shape[0]} coordinates"
        )
    return a, x


def eval_hom(a, x) -> np.ndarray:
    """Homogeneous pencil ``sum_j A_j ⊗ X_j`` of size (d*n, d*n)."""
    a, x = check_compatible(a, x)
    d, n = a.shape[1], x.shape[1]
    out = np.zeros((d * n, d * n), dtype=complex)
    for aj, xj in zip(a, x):
        out += np.kron(aj, xj)
    return out


def eval_monic(a, x) -> np.ndarray:
    """Monic pencil ``I - sum_j A_j ⊗ X_j`` of size (d*n, d*n)."""
    lam = eval_hom(a, x)
    return np.eye(lam.shape[0]) - lam


def eval_hom_col(a, alpha) -> np.ndarray:
    """Column evaluation ``sum_j A_j ⊗ alpha_j`` of shape (d*n, d).

    ``alpha`` is a g-tuple of column vectors in C^n, passed as a (g, n) array.
    """
    a = np.asarray(a, dtype=complex)
    alpha = np.asarray(alpha, dtype=complex)
    if alpha.ndim == 1:
        alpha = alpha[None]
    if a.shape[0] != alpha.shape[0]:
        raise InputError("coefficient tuple and column tuple have different g")
    cols = [np.kron(aj, alj.reshape(-1, 1)) for aj, alj in zip(a, alpha)]
    return sum(cols)


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"


@dataclass
class MembershipReport:
    """Result of a levelwise membership test.

    ``status`` is one of interior / boundary / outside, decided by the smallest
    eigenvalue of ``L_A(X)`` against ``tol`` (boundary is the two-sided band
    ``|min_eig| <= tol``). ``kernel`` holds an orthonormal basis of
    ``ker L_A(X)`` (empty for interior points).
    """

    status: str
    min_eig: float
    kernel: np.ndarray
    tol: float

    @property
    def is_member(self) -> bool:
        return self.status != OUTSIDE

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "min_eig": self.min_eig,
            "kernel_dim": int(self.kernel.shape[1]),
            "tol": self.tol,
        }


def membership(a, x, tol: float = TOL) -> MembershipReport:
    """Classify ``X`` against the free spectrahedron of the pencil ``A``."""
    l = eval_monic(a, x)
    w, v = linalg.eigh(l)
    me = float(w[0])
    if me > tol:
        status = INTERIOR
        kernel = np.zeros((l.shape[0], 0), dtype=complex)
    elif me < -tol:
        status = OUTSIDE
        kernel = np.zeros((l.shape[0], 0), dtype=complex)
    else:
        status = BOUNDARY
        cut = tol * max(1.0, float(np.abs(w).max()))
        kernel = v[:, np.abs(w) <= cut]
    return MembershipReport(status=status, min_eig=me, kernel=kernel, tol=tol)


def scale_to_boundary(a, h, tol: float = TOL):
    """Scale a direction tuple ``h`` onto the boundary of the spectrahedron.

    Returns ``(t, x)`` with ``x = t*h`` and ``min_eig(L_A(x)) = 0`` up to
    numerics, or ``None`` if the ray from the origin through ``h`` never
    leaves the set (``lambda_max(Lam_A(h)) <= tol``).
    """
    lam = eval_hom(a, h)
    top = float(linalg.eigh(lam).w[-1])
    if top <= tol:
        return None
    t = 1.0 / top
    return t, t * np.asarray(h, dtype=complex)


# ---------------------------------------------------------------------------
# boundedness (probabilistic, level 1)
# ---------------------------------------------------------------------------

BOUNDED = "bounded"
UNBOUNDED = "unbounded"
INCONCLUSIVE = "inconclusive"


@dataclass
class BoundednessReport:
    """Outcome of the level-1 recession-direction search.

    ``verdict`` is bounded / unbounded / inconclusive; for unbounded, ``witness``
    is a unit vector ``y`` with ``lambda_max(Lam_A(y)) <= tol`` so that the ray
    ``t*y`` stays in the spectrahedron for all ``t >= 0``. Bounded is only
    reported when every probe stayed above a positive margin; the verdict is
    probabilistic and says nothing rigorous about unexplored directions.
    """

    verdict: str
    witness: Optional[np.ndarray]
    margin: float
    probes: int = 0

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "margin": self.margin, "probes": self.probes}
        if self.witness is not None:
            out["witness"] = [float(v) for v in self.witness]
        return out


def _lam_top(a, y):
    return float(linalg.eigh(eval_hom(a, y.reshape(-1, 1, 1)).astype(complex)).w[-1])


def _refine_direction(a, y, steps: int = 60):
    """Subgradient descent for lambda_max(Lam_A(y)) on the unit sphere."""
    g = a.shape[0]
    y = y / np.linalg.norm(y)
    best = _lam_top(a, y)
    step = 0.5
    for _ in range(steps):
        lam = eval_hom(a, y.reshape(-1, 1, 1))
        w, v = linalg.eigh(lam)
        top_vec = v[:, -1]
        grad = np.array([float((top_vec.conj() @ aj @ top_vec).real) for aj in a])
        cand = y - step * grad
        nrm = np.linalg.norm(cand)
        if nrm < 1e-12:
            step /= 2
            continue
        cand = cand / nrm
        val = _lam_top(a, cand)
        if val < best - 1e-14:
            y, best = cand, val
        else:
            step /= 2
            if step < 1e-6:
                break
    return y, best


def bounded(a, trials: int = 32, seed=0, tol: float = TOL) -> BoundednessReport:
    """Search for recession directions of the level-1 spectrahedron.

    Combines an exact lineality check (kernel of ``y -> Lam_A(y)`` via SVD),
    coordinate and random probes, and subgradient refinement of the most
    promising probes. See :class:`BoundednessReport` for the verdict semantics.
    """
    a = as_tuple(a, what="pencil")
    g, d = a.shape[0], a.shape[1]
    rng = linalg.default_rng(seed)

    # exact lineality directions: Lam_A(y) = 0 with y real
    cols = np.stack([np.concatenate([aj.real.ravel(), aj.imag.ravel()]) for aj in a]).T
    lin = linalg.null_space(cols, tol=tol).real
    if lin.shape[1] > 0:
        y = lin[:, 0]
        y = y / np.linalg.norm(y)
        return BoundednessReport(UNBOUNDED, y, margin=0.0)

    probes = []
    for j in range(g):
        e = np.zeros(g)
        e[j] = 1.0
        probes.extend([e, -e])
    for _ in range(max(trials, 4)):
        v = rng.standard_normal(g)
        probes.append(v / np.linalg.norm(v))

    scored = sorted(probes, key=lambda y: _lam_top(a, y / np.linalg.norm(y)))
    best_y, best_val = None, np.inf
    for y in scored[: max(4, trials // 4)]:
        ry, rv = _refine_direction(a, y)
        if rv < best_val:
            best_y, best_val = ry, rv
        if rv <= tol:
            break
    n_probes = len(probes)

    if best_val <= tol:
        return BoundednessReport(UNBOUNDED, best_y, margin=best_val, probes=n_probes)
    # require a clear margin before claiming boundedness
    if best_val > 1e-6:
        return BoundednessReport(BOUNDED, None, margin=best_val, probes=n_probes)
    return BoundednessReport(INCONCLUSIVE, None, margin=best_val, probes=n_probes)
