"""Seedable random objects used by the audit suites and tests."""

from __future__ import annotations

import numpy as np

from .classical import ProbVector
from .gpt import ConvexModel
from .quantum import DensityOperator


def as_rng(seed) -> np.random.Generator:
    """Pass Generators through, wrap anything else with default_rng."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _ginibre(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_unitary(d: int, rng=None) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian with phases fixed."""
    rng = as_rng(rng)
    q, r = np.linalg.qr(_ginibre(d, d, rng))
    phases = np.diagonal(r).copy()
    phases = phases / np.abs(phases)
    return q * phases


def random_isometry(rows: int, cols: int, rng=None) -> np.ndarray:
    """A rows x cols matrix with orthonormal columns, rows >= cols."""
    if rows < cols:
        raise ValueError("an isometry needs rows >= cols")
    rng = as_rng(rng)
    q, r = np.linalg.qr(_ginibre(rows, cols, rng))
    phases = np.diagonal(r).copy()
    phases = phases / np.abs(phases)
    return q * phases


def random_state_vector(d: int, rng=None) -> np.ndarray:
    rng = as_rng(rng)
    v = _ginibre(d, 1, rng).ravel()
    return v / np.linalg.norm(v)


def random_density(d: int, rng=None, rank: int | None = None) -> DensityOperator:
    """rho = G G* / Tr(G G*) for a complex Gaussian G with ``rank`` columns."""
    rng = as_rng(rng)
    r = d if rank is None else int(rank)
    if not 1 <= r <= d:
        raise ValueError(f"rank must be in [1, {d}], got {r}")
    g = _ginibre(d, r, rng)
    m = g @ g.conj().T
    return DensityOperator(m / np.trace(m).real)


def random_prob_vector(n: int, rng=None) -> ProbVector:
    """Uniform draw from the simplex."""
    rng = as_rng(rng)
    return ProbVector.from_computation(rng.dirichlet(np.ones(n)))


def random_sphere_model(n_vertices: int, dim: int, rng=None, min_gap: float = 0.05) -> ConvexModel:
    """A polytope whose vertices sit on the unit sphere, hence all extreme."""
    rng = as_rng(rng)
    for _ in range(256):
        pts = rng.standard_normal((n_vertices, dim))
        pts = pts / np.linalg.norm(pts, axis=1, keepdims=True)
        gaps = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
        gaps = gaps + np.eye(n_vertices)  # ignore the diagonal
        if float(gaps.min()) >= min_gap:
            return ConvexModel(pts)
    raise RuntimeError("failed to place well-separated sphere vertices")


def random_simplex_model(dim: int, rng=None) -> ConvexModel:
    """dim + 1 affinely independent random vertices."""
    rng = as_rng(rng)
    for _ in range(256):
        pts = rng.standard_normal((dim + 1, dim))
        diffs = pts[1:] - pts[0]
        if np.linalg.matrix_rank(diffs, tol=1e-8) == dim:
            return ConvexModel(pts)
    raise RuntimeError("failed to draw an affinely independent simplex")


def random_interior_point(model: ConvexModel, rng=None) -> np.ndarray:
    """A hull point sampled by Dirichlet weights over all vertices."""
    rng = as_rng(rng)
    w = rng.dirichlet(np.ones(model.n_vertices))
    return w @ model.vertices
