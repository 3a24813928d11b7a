"""Structure of Hermitian tuples: commutants, irreducible decomposition,
unitary equivalence, minimal defining tuples and free simplices.

A tuple is irreducible when its commutant is trivial. ``decompose_irreducibles``
splits any tuple into a direct sum of irreducibles (grouped into unitary
equivalence classes with multiplicities), ``unitarily_equivalent`` decides
simultaneous unitary equivalence, and ``minimal_defining`` prunes summands
that do not change the free spectrahedron. Free simplices (spectrahedra of
commuting minimal tuples with g+1 summands) get a normal form onto the fixed
reference tuple :func:`reference_simplex`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import feasibility, linalg, pencil
from .errors import InputError, NumericalError
from .linalg import TOL


def commutant(x, tol: float = TOL) -> np.ndarray:
    """Orthonormal basis (Frobenius) of ``{C : C X_j = X_j C for all j}``.

    Returned as a ``(k, n, n)`` stack; ``k >= 1`` always since the identity
    commutes. Row-major vectorization turns each commutator equation into
    ``(X_j ⊗ I - I ⊗ X_j^T) vec(C) = 0``.
    """
    x = pencil.as_tuple(x, what="tuple")
    n = x.shape[1]
    eye = np.eye(n)
    rows = np.vstack([np.kron(xj, eye) - np.kron(eye, xj.T) for xj in x])
    basis = linalg.null_space(rows, tol=tol)
    return basis.T.reshape(-1, n, n)


def commutant_dim(x, tol: float = TOL) -> int:
    return commutant(x, tol=tol).shape[0]


def reducing_projection(x, tol: float = TOL) -> Optional[np.ndarray]:
    """An orthogonal projection commuting with ``x``, or None if irreducible.

    Found by splitting the spectrum of a non-scalar Hermitian commutant
    element at its largest eigenvalue gap.
    """
    x = pencil.as_tuple(x, what="tuple")
    n = x.shape[1]
    basis = commutant(x, tol=tol)
    if basis.shape[0] <= 1:
        return None
    for c in basis:
        for h in (linalg.hermitian_part(c), linalg.hermitian_part(1j * c)):
            traceless = h - np.trace(h) / n * np.eye(n)
            if np.linalg.norm(traceless) < 10 * tol:
                continue
            w, v = linalg.eigh(h)
            gaps = np.diff(w)
            cut = int(np.argmax(gaps)) + 1
            proj = v[:, :cut] @ v[:, :cut].conj().T
            return linalg.hermitian_part(proj)
    return None


# ---------------------------------------------------------------------------
# irreducible decomposition
# ---------------------------------------------------------------------------

@dataclass
class Decomposition:
    """Decomposition of a tuple into irreducible summands.

    ``unitary`` satisfies ``unitary* X_j unitary ≈ reassemble()[j]`` where the
    reassembled tuple is ``⊕_c (I_{mult[c]} ⊗ blocks[c])`` in class order:
    equivalent summands are literally equal to their class representative.
    """

    blocks: list = field(default_factory=list)
    multiplicities: list = field(default_factory=list)
    unitary: np.ndarray = None

    @property
    def n_classes(self) -> int:
        return len(self.blocks)

    @property
    def block_sizes(self) -> list:
        return [b.shape[1] for b in self.blocks]

    def reassemble(self) -> np.ndarray:
        parts = []
        for b, m in zip(self.blocks, self.multiplicities):
            parts.extend([b] * m)
        return pencil.direct_sum(parts)

    def to_json(self) -> dict:
        return {
            "classes": [
                {"size": int(b.shape[1]), "multiplicity": int(m),
                 "block": pencil.tuple_to_json(b)}
                for b, m in zip(self.blocks, self.multiplicities)
            ],
        }


def _split_once(x, rng, tol, gap_floor=1e-6, reseeds=3):
    """One invariant-subspace split via a random Hermitian commutant element.

    Returns a list of isometries onto invariant subspaces (columns), or None
    when the commutant is trivial.
    """
    n = x.shape[1]
    basis = commutant(x, tol=tol)
    if basis.shape[0] <= 1:
        return None
    for _ in range(reseeds + 1):
        coef = rng.standard_normal(basis.shape[0]) + 1j * rng.standard_normal(basis.shape[0])
        h = linalg.hermitian_part(np.tensordot(coef, basis, axes=1))
        h = h / max(1.0, np.linalg.norm(h))
        w, v = linalg.eigh(h)
        gaps = np.diff(w)
        splits = np.nonzero(gaps > gap_floor)[0]
        if splits.size == 0:
            continue
        # clusters must be tight for the eigenspaces to be well conditioned
        edges = [0, *(int(s) + 1 for s in splits), n]
        widths = [w[b - 1] - w[a] for a, b in zip(edges, edges[1:])]
        if max(widths) > 1e-9:
            continue
        return [v[:, a:b] for a, b in zip(edges, edges[1:])]
    raise NumericalError(
        "could not separate commutant eigenvalues; tuple is too ill-conditioned"
    )


def _irreducible_leaves(x, rng, tol):
    """Recursively split into irreducible pieces; yields (isometry, block)."""
    pieces = _split_once(x, rng, tol)
    if pieces is None:
        yield np.eye(x.shape[1], dtype=complex), x
        return
    for v in pieces:
        sub = np.stack([v.conj().T @ xj @ v for xj in x])
        for w, block in _irreducible_leaves(sub, rng, tol):
            yield v @ w, block


def _class_key(block):
    """Deterministic sort key for an irreducible block."""
    traces = tuple(round(float(np.trace(bj).real), 6) for bj in block)
    spec = tuple(round(float(t), 6) for t in linalg.eigh(block[0]).w)
    return (block.shape[1], traces, spec)


def decompose_irreducibles(x, tol: float = TOL, seed=0) -> Decomposition:
    """Split a Hermitian tuple into irreducible summands up to equivalence.

    Invariant subspaces come from eigenspaces of random Hermitian commutant
    elements (reseeded when the spectrum fails to separate); equivalent
    irreducible summands are rotated to literally equal their class
    representative, so ``unitary* X unitary`` matches ``reassemble()`` to
    within ~1e-7.
    """
    x = pencil.as_tuple(x, what="tuple")
    rng = linalg.default_rng(seed)
    leaves = list(_irreducible_leaves(x, rng, tol))

    classes = []  # [representative, [isometries...]]
    for iso, block in leaves:
        placed = False
        for entry in classes:
            rep = entry[0]
            if rep.shape[1] != block.shape[1]:
                continue
            ok, u = _equivalent_irreducible(block, rep, tol=tol)
            if ok:
                entry[1].append(iso @ u)
                placed = True
                break
        if not placed:
            classes.append([block, [iso]])

    classes.sort(key=lambda entry: _class_key(entry[0]))
    blocks = [entry[0] for entry in classes]
    mults = [len(entry[1]) for entry in classes]
    unitary = np.hstack([iso for entry in classes for iso in entry[1]])
    dec = Decomposition(blocks=blocks, multiplicities=mults, unitary=unitary)

    target = dec.reassemble()
    err = max(
        float(np.abs(unitary.conj().T @ xj @ unitary - tj).max())
        for xj, tj in zip(x, target)
    )
    if err > 1e-7:
        raise NumericalError(f"decomposition residual {err:.2e} exceeds 1e-7")
    return dec


# ---------------------------------------------------------------------------
# unitary equivalence
# ---------------------------------------------------------------------------

def _equivalent_irreducible(x, y, tol: float = TOL):
    """Unitary equivalence of two irreducible tuples of equal size.

    Solves the intertwiner equation ``C X_j = Y_j C``; for irreducible tuples
    any nonzero solution satisfies ``C* C = mu I`` and rescales to a unitary.
    Returns ``(True, U)`` with ``U* X_j U = Y_j`` or ``(False, None)``.
    """
    n = x.shape[1]
    eye = np.eye(n)
    rows = np.vstack([np.kron(eye, xj.T) - np.kron(yj, eye) for xj, yj in zip(x, y)])
    ker = linalg.null_space(rows, tol=tol)
    if ker.shape[1] == 0:
        return False, None
    c = ker[:, 0].reshape(n, n)
    mu = float(np.trace(c.conj().T @ c).real) / n
    if mu < tol:
        return False, None
    if np.abs(c.conj().T @ c - mu * eye).max() > 1e-6 * max(1.0, mu):
        # nonzero intertwiner that is not a multiple of a unitary: the
        # tuples were not both irreducible; treat as inequivalent here
        return False, None
    u = (c / np.sqrt(mu)).conj().T
    err = max(float(np.abs(u.conj().T @ xj @ u - yj).max()) for xj, yj in zip(x, y))
    if err > 1e-6:
        return False, None
    return True, u


def unitarily_equivalent(x, y, tol: float = TOL, seed=0):
    """Decide simultaneous unitary equivalence ``U* X_j U = Y_j``.

    Returns ``(flag, U)``. Irreducible inputs go through the intertwiner
    equation directly; otherwise both sides are decomposed and matched class
    by class (sizes and multiplicities must agree).
    """
    x = pencil.as_tuple(x, what="first tuple")
    y = pencil.as_tuple(y, what="second tuple")
    if x.shape != y.shape:
        return False, None
    if commutant_dim(x, tol=tol) == 1 and commutant_dim(y, tol=tol) == 1:
        return _equivalent_irreducible(x, y, tol=tol)

    dx = decompose_irreducibles(x, tol=tol, seed=seed)
    dy = decompose_irreducibles(y, tol=tol, seed=seed)
    if dx.n_classes != dy.n_classes:
        return False, None
    if dx.multiplicities != dy.multiplicities:
        return False, None

    # match x-classes to y-classes bijectively
    used = [False] * dy.n_classes
    pairing = [None] * dx.n_classes
    for i, bx in enumerate(dx.blocks):
        for k, by in enumerate(dy.blocks):
            if used[k] or bx.shape[1] != by.shape[1]:
                continue
            if dx.multiplicities[i] != dy.multiplicities[k]:
                continue
            ok, u = _equivalent_irreducible(bx, by, tol=tol)
            if ok:
                pairing[i] = (k, u)
                used[k] = True
                break
        if pairing[i] is None:
            return False, None

    # offsets of each class in the two block layouts
    def offsets(dec):
        out, at = [], 0
        for b, m in zip(dec.blocks, dec.multiplicities):
            out.append(at)
            at += b.shape[1] * m
        return out

    n = x.shape[1]
    offx, offy = offsets(dx), offsets(dy)
    t = np.zeros((n, n), dtype=complex)
    for i, (k, u) in enumerate(pairing):
        size = dx.blocks[i].shape[1]
        m = dx.multiplicities[i]
        t[offx[i]:offx[i] + size * m, offy[k]:offy[k] + size * m] = np.kron(
            np.eye(m), u
        )
    big_u = dx.unitary @ t @ dy.unitary.conj().T
    err = max(
        float(np.abs(big_u.conj().T @ xj @ big_u - yj).max())
        for xj, yj in zip(x, y)
    )
    if err > 1e-6:
        return False, None
    return True, big_u


# ---------------------------------------------------------------------------
# minimal defining tuples
# ---------------------------------------------------------------------------

@dataclass
class MinimalDefiningReport:
    """A pruned tuple defining the same free spectrahedron.

    ``duplicates_removed`` counts equivalent irreducible copies merged during
    decomposition; ``summands_removed`` counts inequivalent summands whose
    removal was certified not to change the spectrahedron. ``caveats`` lists
    anything that kept the search conservative (e.g. inclusion solves that
    returned no certificate, so a possibly redundant summand was kept).
    """

    tuple: np.ndarray
    summands_removed: int
    duplicates_removed: int
    caveats: list
    verified_samples: int
    mismatches: int

    def to_json(self) -> dict:
        return {
            "tuple": pencil.tuple_to_json(self.tuple),
            "summands_removed": self.summands_removed,
            "duplicates_removed": self.duplicates_removed,
            "caveats": list(self.caveats),
            "verified_samples": self.verified_samples,
            "mismatches": self.mismatches,
        }


def minimal_defining(
    a,
    tol: float = TOL,
    seed=0,
    samples: int = 30,
    level_cap: int = 2,
) -> MinimalDefiningReport:
    """Prune a defining tuple without changing its free spectrahedron.

    Decomposes into inequivalent irreducible summands (dropping repeated
    copies, which never change the spectrahedron), then greedily removes
    summands — largest first, trace order breaking ties — whenever the
    remaining direct sum's spectrahedron is certified to sit inside the
    candidate's. The result is verified on sampled points at levels up to
    ``level_cap``.
    """
    a = pencil.as_tuple(a, what="pencil")
    dec = decompose_irreducibles(a, tol=tol, seed=seed)
    reps = list(dec.blocks)
    duplicates = sum(m - 1 for m in dec.multiplicities)
    caveats = []

    order = sorted(
        range(len(reps)),
        key=lambda i: _class_key(reps[i]),
        reverse=True,
    )
    keep = set(range(len(reps)))
    removed = 0
    for i in order:
        if len(keep) == 1:
            break
        others = [reps[k] for k in sorted(keep - {i})]
        rest = pencil.direct_sum(others)
        res = feasibility.inclusion(rest, reps[i], level_cap=level_cap,
                                    seed=seed, tol=tol)
        if res.status == feasibility.INCLUDED:
            keep.discard(i)
            removed += 1
        elif res.status == feasibility.NO_CERTIFICATE:
            caveats.append(
                f"summand {i} kept: inclusion solver returned no certificate"
            )
    pruned = pencil.direct_sum([reps[k] for k in sorted(keep)])

    rng = linalg.default_rng(seed)
    g = a.shape[0]
    checked = mism = 0
    for _ in range(samples):
        n = int(rng.integers(1, level_cap + 1))
        h = linalg.random_herm_tuple(g, n, rng)
        for radius in (0.5, 1.0):
            hit = pencil.scale_to_boundary(a, h, tol=tol)
            x = radius * hit[1] if hit is not None else h
            me_a = linalg.min_eig(pencil.eval_monic(a, x))
            me_b = linalg.min_eig(pencil.eval_monic(pruned, x))
            if min(abs(me_a), abs(me_b)) <= 10 * tol:
                continue  # too close to the boundary to compare robustly
            checked += 1
            if (me_a >= 0) != (me_b >= 0):
                mism += 1
    if not pencil.bounded(a, seed=seed).verdict == pencil.BOUNDED:
        caveats.append("boundedness not certified; minimality is heuristic")
    return MinimalDefiningReport(
        tuple=pruned,
        summands_removed=removed,
        duplicates_removed=duplicates,
        caveats=caveats,
        verified_samples=checked,
        mismatches=mism,
    )


# ---------------------------------------------------------------------------
# free simplices and their normal form
# ---------------------------------------------------------------------------

def reference_simplex(g: int) -> np.ndarray:
    """The reference simplex tuple of size g+1 in g variables.

    ``N_j = -E_jj + (1/(g+1)) E_{g+1,g+1}``; its spectrahedron is the simplex
    ``{X : X_j >= -I, sum_j X_j <= (g+1) I}``.
    """
    if g < 1:
        raise InputError("need at least one variable")
    out = np.zeros((g, g + 1, g + 1), dtype=complex)
    for j in range(g):
        out[j, j, j] = -1.0
        out[j, g, g] = 1.0 / (g + 1)
    return out


@dataclass
class SimplexReport:
    """Outcome of the free-simplex recognition test.

    When ``is_simplex`` is true, ``facets`` has one row per summand of the
    minimal commuting tuple: facet ``a`` is ``I - sum_s facets[a, s] X_s >= 0``.
    ``vertices`` are the level-1 vertices (row ``a`` solving all facets except
    ``a`` with equality... i.e. the point opposite facet ``a``).
    """

    is_simplex: bool
    reasons: list
    facets: Optional[np.ndarray]
    vertices: Optional[np.ndarray]
    minimal: Optional[MinimalDefiningReport]

    def to_json(self) -> dict:
        out = {"is_simplex": self.is_simplex, "reasons": list(self.reasons)}
        if self.facets is not None:
            out["facets"] = [[float(v) for v in row] for row in self.facets]
        if self.vertices is not None:
            out["vertices"] = [[float(v) for v in row] for row in self.vertices]
        return out


def _joint_diagonal(b, tol: float, seed) -> Optional[np.ndarray]:
    """Rows of jointly diagonalized commuting tuple; None if not commuting."""
    g, n = b.shape[0], b.shape[1]
    for i in range(g):
        for j in range(i + 1, g):
            if np.abs(b[i] @ b[j] - b[j] @ b[i]).max() > 1e-7:
                return None
    dec = decompose_irreducibles(b, tol=tol, seed=seed)
    if any(s != 1 for s in dec.block_sizes):
        return None
    u = dec.unitary
    diag = np.stack([(u.conj().T @ bj @ u).diagonal().real for bj in b])
    return diag.T  # (n, g): row a holds the joint eigenvalue of summand a


def is_free_simplex(a, tol: float = TOL, seed=0) -> SimplexReport:
    """Decide whether the free spectrahedron of ``a`` is a free simplex.

    Requires: bounded spectrahedron, minimal defining tuple commuting with
    exactly g+1 inequivalent one-dimensional summands. Facet data is read off
    the joint diagonalization.
    """
    a = pencil.as_tuple(a, what="pencil")
    g = a.shape[0]
    reasons = []
    md = minimal_defining(a, tol=tol, seed=seed)
    b = md.tuple
    rows = _joint_diagonal(b, tol, seed)
    if rows is None:
        reasons.append("minimal defining tuple is not simultaneously diagonal")
    elif b.shape[1] != g + 1:
        reasons.append(
            f"minimal commuting tuple has {b.shape[1]} summands, need g+1={g + 1}"
        )
    bd = pencil.bounded(a, seed=seed, tol=tol)
    if bd.verdict != pencil.BOUNDED:
        reasons.append(f"boundedness check returned {bd.verdict}")
    if reasons:
        return SimplexReport(False, reasons, None, None, md)

    facets = rows  # (g+1, g)
    verts = np.zeros((g + 1, g))
    for drop in range(g + 1):
        rest = np.delete(facets, drop, axis=0)
        try:
            verts[drop] = np.linalg.solve(rest, np.ones(g))
        except np.linalg.LinAlgError:
            return SimplexReport(
                False, ["facet system is singular; not a simplex"], None, None, md
            )
    return SimplexReport(True, [], facets, verts, md)


@dataclass
class AffineMap:
    """Affine change of variables ``Y_j = sum_k linear[j, k] X_k + offset[j] I``."""

    linear: np.ndarray
    offset: np.ndarray

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.ndim == 1:
            x = x.reshape(-1, 1, 1)
        if x.ndim == 2:
            x = x[None]
        n = x.shape[1]
        eye = np.eye(n)
        return np.stack(
            [
                np.tensordot(self.linear[j], x, axes=1) + self.offset[j] * eye
                for j in range(self.linear.shape[0])
            ]
        )

    def to_json(self) -> dict:
        return {
            "linear": [[float(v) for v in row] for row in self.linear],
            "offset": [float(v) for v in self.offset],
        }


@dataclass
class NormalFormReport:
    map: AffineMap
    dropped_facet: int
    verified_samples: int
    mismatches: int
    simplex: SimplexReport

    def to_json(self) -> dict:
        return {
            "map": self.map.to_json(),
            "dropped_facet": int(self.dropped_facet),
            "verified_samples": self.verified_samples,
            "mismatches": self.mismatches,
        }


def simplex_normal_form(a, tol: float = TOL, seed=0, samples: int = 50) -> NormalFormReport:
    """Affine map carrying a free simplex onto the reference simplex.

    From the facet matrix of the joint diagonalization, ``g`` facets are
    selected (best conditioned drop-one choice, requiring positive barycentric
    weights for the dropped one) and normalized so that the image spectrahedron
    is exactly the spectrahedron of :func:`reference_simplex`. The map is verified
    on sampled tuples at levels 1 and 2.
    """
    a = pencil.as_tuple(a, what="pencil")
    g = a.shape[0]
    rep = is_free_simplex(a, tol=tol, seed=seed)
    if not rep.is_simplex:
        raise InputError(
            "normal form needs a free simplex; reasons: " + "; ".join(rep.reasons)
        )
    facets = rep.facets  # (g+1, g)

    # choose which facet plays the affine-combination role
    candidates = []
    for drop in range(g + 1):
        s = np.delete(facets, drop, axis=0)
        sig = np.linalg.svd(s, compute_uv=False)
        candidates.append((sig[-1], drop, s))
    candidates.sort(reverse=True, key=lambda c: c[0])
    chosen = None
    for sig_min, drop, s in candidates:
        if sig_min < 1e-10:
            continue
        beta = facets[drop] @ np.linalg.inv(s)
        bvec = -beta
        if np.all(bvec > tol):
            chosen = (drop, s, bvec)
            break
    if chosen is None:
        raise NumericalError("no facet choice gave positive barycentric weights")
    drop, s, bvec = chosen
    weights = bvec / (1.0 + bvec.sum())
    linear = -(2 * g + 1) * (weights[:, None] * s)
    offset = (2 * g + 1) * weights - 1.0
    amap = AffineMap(linear=linear, offset=offset)

    target = reference_simplex(g)
    rng = linalg.default_rng(seed)
    checked = mism = 0
    for _ in range(samples):
        n = int(rng.integers(1, 3))
        h = linalg.random_herm_tuple(g, n, rng)
        hit = pencil.scale_to_boundary(a, h, tol=tol)
        for radius in (0.6, 1.0, 1.4):
            x = radius * hit[1] if hit is not None else radius * h
            me_a = linalg.min_eig(pencil.eval_monic(a, x))
            me_t = linalg.min_eig(pencil.eval_monic(target, amap.apply(x)))
            if min(abs(me_a), abs(me_t)) <= 10 * tol:
                continue
            checked += 1
            if (me_a >= 0) != (me_t >= 0):
                mism += 1
    if mism:
        raise NumericalError(
            f"normal form failed verification on {mism}/{checked} samples"
        )
    return NormalFormReport(map=amap, dropped_facet=drop, verified_samples=checked,
                            mismatches=mism, simplex=rep)
