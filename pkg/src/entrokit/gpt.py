"""Convex polytope state spaces with exact decomposition entropies.

A model is the convex hull of finitely many extreme points in R^d.  The
entropy of a state is the infimum of h(sum_k phi(w_k)) over its convex
decompositions into extreme points.  The objective is a monotone transform
of a sum that is concave (or convex) in the weights, so the optimum over the
decomposition polytope sits at one of its extreme points; those are exactly
the basic decompositions, the ones supported on affinely independent vertex
subsets of size at most d + 1.  Enumerating them is exact and cheap at the
supported scale (README, "Why basic decompositions suffice").
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .classical import ProbVector, entropy_finite, majorizes
from .functionals import EntropicFunctional

PIVOT_TOL = 1e-10
RESIDUAL_TOL = 1e-9
WEIGHT_FLOOR = 1e-12
VERTEX_CAP = 12
DIM_CAP = 4


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Convex weights over a support of vertex indices."""

    support: tuple
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        if len(self.support) != w.size or w.size == 0:
            raise ValueError("support and weights must have matching nonzero length")
        if len(set(self.support)) != len(self.support):
            raise ValueError("support indices must be distinct")
        if float(w.min()) <= WEIGHT_FLOOR:
            raise ValueError(f"weights must exceed {WEIGHT_FLOOR}")
        if abs(float(w.sum()) - 1.0) > 1e-10:
            raise ValueError("weights must sum to 1 within 1e-10")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "support", tuple(int(i) for i in self.support))

    def barycenter(self, model: "ConvexModel") -> np.ndarray:
        return self.weights @ model.vertices[list(self.support)]


def _solve_support(points: np.ndarray, x: np.ndarray) -> np.ndarray | None:
    """Strictly positive affine weights writing x over ``points``, or None.

    Rejects affinely dependent supports (rank below the subset size at pivot
    tolerance PIVOT_TOL), inconsistent systems (residual above RESIDUAL_TOL),
    and solutions touching the weight floor; those belong to a smaller
    support that is enumerated separately.
    """
    k = points.shape[0]
    a = np.vstack([points.T, np.ones((1, k))])
    if np.linalg.matrix_rank(a, tol=PIVOT_TOL) < k:
        return None
    b = np.concatenate([x, [1.0]])
    w, *_ = np.linalg.lstsq(a, b, rcond=None)
    if float(np.max(np.abs(a @ w - b))) > RESIDUAL_TOL:
        return None
    if float(w.min()) <= WEIGHT_FLOOR:
        return None
    return w


class ConvexModel:
    """Convex hull of validated extreme points (rows of ``vertices``).

    Caps keep the subset enumeration exact and fast; both can be widened per
    instance.  Each vertex is verified extreme at construction by checking it
    has no convex decomposition over the remaining vertices.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices, vertex_cap: int = VERTEX_CAP, dim_cap: int = DIM_CAP,
                 check_extreme: bool = True):
        V = np.array(vertices, dtype=float)
        if V.ndim != 2:
            raise ValueError("vertices must be a 2-d array, one point per row")
        n, d = V.shape
        if n < 1 or d < 1:
            raise ValueError("model needs at least one vertex and one dimension")
        if n > vertex_cap:
            raise ValueError(f"{n} vertices exceed the cap {vertex_cap}")
        if d > dim_cap:
            raise ValueError(f"ambient dimension {d} exceeds the cap {dim_cap}")
        if not np.all(np.isfinite(V)):
            raise ValueError("vertices must be finite")
        if check_extreme:
            for i in range(n):
                others = np.delete(V, i, axis=0)
                if others.shape[0] and _first_solution(others, V[i], d) is not None:
                    raise ValueError(f"vertex {i} is a convex combination of the others")
        V.setflags(write=False)
        self.vertices = V

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def is_simplex(self) -> bool:
        n, d = self.vertices.shape
        if n != d + 1:
            return False
        a = np.vstack([self.vertices.T, np.ones((1, n))])
        return int(np.linalg.matrix_rank(a, tol=PIVOT_TOL)) == n

    def __repr__(self) -> str:
        return f"ConvexModel(n={self.n_vertices}, dim={self.ambient_dim})"


def _iter_solutions(V: np.ndarray, x: np.ndarray, d: int):
    # Lexicographic subset order fixes tie-breaking everywhere downstream.
    n = V.shape[0]
    for k in range(1, min(n, d + 1) + 1):
        for support in itertools.combinations(range(n), k):
            w = _solve_support(V[list(support)], x)
            if w is not None:
                yield support, w


def _first_solution(V: np.ndarray, x: np.ndarray, d: int):
    return next(_iter_solutions(V, x, d), None)


def _check_point(model: ConvexModel, x) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.size != model.ambient_dim:
        raise ValueError(f"state has dimension {x.size}, model is {model.ambient_dim}")
    if not np.all(np.isfinite(x)):
        raise ValueError("state must be finite")
    return x


def membership(model: ConvexModel, x) -> Decomposition | None:
    """First basic decomposition of x, or None when x is outside the hull."""
    x = _check_point(model, x)
    found = _first_solution(model.vertices, x, model.ambient_dim)
    if found is None:
        return None
    support, w = found
    return Decomposition(support=support, weights=w)


def enumerate_basic_decompositions(model: ConvexModel, x) -> list[Decomposition]:
    """All decompositions of x on affinely independent supports, in lex order."""
    x = _check_point(model, x)
    return [
        Decomposition(support=s, weights=w)
        for s, w in _iter_solutions(model.vertices, x, model.ambient_dim)
    ]


@dataclass(frozen=True, eq=False)
class GptState:
    """A point of a model together with an optional membership witness."""

    point: np.ndarray
    witness: Decomposition | None = None

    @classmethod
    def of(cls, model: ConvexModel, point) -> "GptState":
        point = _check_point(model, point)
        witness = membership(model, point)
        if witness is None:
            raise ValueError("point lies outside the model")
        return cls(point=point, witness=witness)


def gpt_entropy(
    model: ConvexModel, x, F: EntropicFunctional
) -> tuple[float, Decomposition | None]:
    """Minimum of h(sum phi(weights)) over basic decompositions of x.

    Returns (+inf, None) when x is outside the hull.  Ties are broken by
    the lexicographically first support.
    """
    best_value = np.inf
    best = None
    for dec in enumerate_basic_decompositions(model, x):
        value = entropy_finite(ProbVector.from_computation(dec.weights), F).value
        if value < best_value:
            best_value = value
            best = dec
    return float(best_value), best


def gpt_majorant(model: ConvexModel, x) -> np.ndarray | None:
    """A basic weight spectrum majorizing every other one, if it exists.

    Spectra are the sorted weight vectors of the basic decompositions,
    zero-padded as needed.  Returns None when x is outside the hull or no
    spectrum dominates all others.
    """
    decs = enumerate_basic_decompositions(model, x)
    if not decs:
        return None
    spectra = [np.sort(d.weights)[::-1] for d in decs]
    for candidate in spectra:
        if all(majorizes(candidate, other) for other in spectra):
            return candidate
    return None


def gpt_majorization(model: ConvexModel, x, y) -> bool | None:
    """Whether x majorizes y, judged by their majorant spectra.

    Returns True iff the spectrum of y is majorized by the spectrum of x
    (argument order matches classical.majorizes), None when either state
    lacks a majorant.
    """
    sx = gpt_majorant(model, x)
    sy = gpt_majorant(model, y)
    if sx is None or sy is None:
        return None
    return majorizes(sx, sy)
