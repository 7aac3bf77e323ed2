"""Convex polytope models: decompositions, entropies, majorants."""

import itertools
import math

import numpy as np
import pytest

from entrokit.classical import ProbVector, entropy_finite, majorizes
from entrokit.functionals import functional_from_spec, make_shannon
from entrokit.gpt import (
    ConvexModel,
    Decomposition,
    GptState,
    enumerate_basic_decompositions,
    gpt_entropy,
    gpt_majorant,
    gpt_majorization,
    membership,
)
from entrokit.quantum import DensityOperator, quantum_entropy
from entrokit.rand import as_rng, random_interior_point, random_simplex_model, random_sphere_model

LN2 = 0.6931471805599453

SQUARE = [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]]
TRIANGLE = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
# quadrilateral built so that (0.4, 1.2) has exactly two decompositions with
# weight spectra (0.6, 0.3, 0.1) and (0.55, 0.4, 0.05), which are incomparable:
# partial sums (0.6, 0.9, 1) vs (0.55, 0.95, 1)
INCOMPARABLE_QUAD = [[0.0, 0.0], [4.0, 0.0], [0.0, 4.0], [-4.5, 2.5]]
INCOMPARABLE_POINT = [0.4, 1.2]


def oracle_decompositions(vertices, x, tol=1e-9):
    """Enumerate supports independently: pinv solve + explicit SVD rank check."""
    verts = np.asarray(vertices, dtype=float)
    x = np.asarray(x, dtype=float)
    n, d = verts.shape
    target = np.concatenate([x, [1.0]])
    out = []
    for size in range(1, min(n, d + 1) + 1):
        for support in itertools.combinations(range(n), size):
            A = np.vstack([verts[list(support)].T, np.ones(size)])
            sv = np.linalg.svd(A, compute_uv=False)
            if sv[-1] <= 1e-10 * max(1.0, sv[0]):
                continue  # affinely dependent subset
            w = np.linalg.pinv(A) @ target
            if np.max(np.abs(A @ w - target)) > tol:
                continue
            if np.min(w) <= 1e-12:
                continue
            out.append((support, w))
    return out


# ------------------------------------------------------------------- models

def test_model_accepts_square():
    model = ConvexModel(SQUARE)
    assert model.ambient_dim == 2
    assert model.n_vertices == 4
    assert not model.is_simplex


def test_model_rejects_interior_vertex():
    with pytest.raises(ValueError):
        ConvexModel(SQUARE + [[0.0, 0.0]])


def test_model_rejects_duplicate_vertex():
    with pytest.raises(ValueError):
        ConvexModel(SQUARE + [[1.0, 1.0]])


def test_model_caps():
    with pytest.raises(ValueError):
        ConvexModel(np.random.default_rng(0).normal(size=(13, 2)))
    with pytest.raises(ValueError):
        ConvexModel(np.eye(5) * 2.0)  # dim 5 exceeds the cap


def test_simplex_detection():
    assert ConvexModel(TRIANGLE).is_simplex
    seg = ConvexModel([[0.0], [1.0]])
    assert seg.is_simplex


# ------------------------------------------------------------ decompositions

def test_square_center_decompositions_frozen():
    model = ConvexModel(SQUARE)
    decs = enumerate_basic_decompositions(model, [0.0, 0.0])
    assert [d.support for d in decs] == [(0, 3), (1, 2)]
    for d in decs:
        assert np.allclose(d.weights, [0.5, 0.5], rtol=0, atol=1e-12)


def test_square_edge_midpoint_decompositions_frozen():
    model = ConvexModel(SQUARE)
    decs = enumerate_basic_decompositions(model, [0.5, 0.0])
    assert [d.support for d in decs] == [(0, 1, 2), (0, 1, 3)]
    assert np.allclose(decs[0].weights, [0.25, 0.5, 0.25], rtol=0, atol=1e-12)
    assert np.allclose(decs[1].weights, [0.5, 0.25, 0.25], rtol=0, atol=1e-12)


def test_vertex_decomposes_as_itself():
    model = ConvexModel(SQUARE)
    decs = enumerate_basic_decompositions(model, [1.0, 1.0])
    assert len(decs) == 1
    assert decs[0].support == (0,)
    assert decs[0].weights[0] == 1.0


def test_outside_point_has_no_decomposition():
    model = ConvexModel(SQUARE)
    assert enumerate_basic_decompositions(model, [3.0, 0.0]) == []
    assert membership(model, [3.0, 0.0]) is None


def test_enumeration_matches_independent_oracle():
    rng = as_rng(17)
    for _ in range(12):
        n = int(rng.integers(4, 8))
        model = random_sphere_model(n, 2, rng)
        x = random_interior_point(model, rng)
        got = enumerate_basic_decompositions(model, x)
        want = oracle_decompositions(model.vertices, x)
        assert [d.support for d in got] == [s for s, _ in want]
        for d, (_, w) in zip(got, want):
            assert np.max(np.abs(d.weights - w)) < 1e-8
            assert np.max(np.abs(d.barycenter(model) - np.asarray(x))) < 1e-9


def test_decomposition_validation():
    model = ConvexModel(SQUARE)
    with pytest.raises(ValueError):
        Decomposition(support=(0, 0), weights=np.array([0.5, 0.5]))
    with pytest.raises(ValueError):
        Decomposition(support=(0, 1), weights=np.array([1.1, -0.1]))
    with pytest.raises(ValueError):
        Decomposition(support=(0, 1), weights=np.array([0.4, 0.4]))
    d = Decomposition(support=(0, 3), weights=np.array([0.5, 0.5]))
    assert np.allclose(d.barycenter(model), [0.0, 0.0], rtol=0, atol=1e-15)


# ------------------------------------------------------------------ entropy

def test_square_golden_entropies():
    model = ConvexModel(SQUARE)
    F = make_shannon()
    center_value, center_dec = gpt_entropy(model, [0.0, 0.0], F)
    assert abs(center_value - LN2) <= 1e-9
    assert center_dec.support == (0, 3)  # lexicographic tie-break
    edge_value, edge_dec = gpt_entropy(model, [0.5, 0.0], F)
    assert abs(edge_value - 1.5 * LN2) <= 1e-9
    vertex_value, vertex_dec = gpt_entropy(model, [1.0, 1.0], F)
    assert vertex_value == 0.0
    assert vertex_dec.support == (0,)


def test_center_is_entropy_minimal_on_its_cross_section():
    # the two-point diagonal split at the center beats the three-point
    # decompositions forced at off-center points like (1/2, 0)
    model = ConvexModel(SQUARE)
    F = make_shannon()
    center_value, _ = gpt_entropy(model, [0.0, 0.0], F)
    for x in ([0.5, 0.0], [-0.5, 0.0], [0.0, 0.5], [0.0, -0.5]):
        value, _ = gpt_entropy(model, x, F)
        assert value > center_value


def test_gpt_entropy_outside_hull():
    model = ConvexModel(SQUARE)
    value, dec = gpt_entropy(model, [3.0, 0.0], make_shannon())
    assert value == math.inf
    assert dec is None


def test_fan_point_matches_quantum_diagonal():
    # two-outcome fan: segment between (1,0) and (0,1); the point
    # (lam, 1-lam) has the unique weight vector (lam, 1-lam), so its
    # entropy must agree with the diagonal density matrix diag(lam, 1-lam)
    fan = ConvexModel([[1.0, 0.0], [0.0, 1.0]])
    specs = ("shannon", "renyi:alpha=2", "tsallis:q=0.5", "kaniadakis:kappa=0.25")
    for lam in (0.3, 0.75):
        rho = DensityOperator(np.diag([lam, 1.0 - lam]))
        for spec in specs:
            F = functional_from_spec(spec)
            value, dec = gpt_entropy(fan, [lam, 1.0 - lam], F)
            assert dec is not None
            assert abs(value - quantum_entropy(rho, F).value) <= 1e-9


def test_simplex_entropy_equals_classical():
    F = make_shannon()
    model = ConvexModel(TRIANGLE)
    value, dec = gpt_entropy(model, [0.2, 0.3], F)
    direct = entropy_finite(ProbVector([0.5, 0.2, 0.3]), F).value
    assert abs(value - direct) <= 1e-9
    assert dec.support == (0, 1, 2)

    rng = as_rng(23)
    for _ in range(10):
        dim = int(rng.integers(1, 5))
        model = random_simplex_model(dim, rng)
        x = random_interior_point(model, rng)
        decs = enumerate_basic_decompositions(model, x)
        assert len(decs) == 1  # simplex: unique decomposition
        value, _ = gpt_entropy(model, x, F)
        assert abs(value - entropy_finite(ProbVector.from_computation(decs[0].weights), F).value) <= 1e-9


def test_argmin_depends_on_functional_without_majorant():
    model = ConvexModel(INCOMPARABLE_QUAD)
    value_sh, dec_sh = gpt_entropy(model, INCOMPARABLE_POINT, make_shannon())
    assert dec_sh.support == (1, 2, 3)
    expected_sh = -(0.55 * math.log(0.55) + 0.4 * math.log(0.4) + 0.05 * math.log(0.05))
    assert abs(value_sh - expected_sh) <= 1e-9
    value_r5, dec_r5 = gpt_entropy(model, INCOMPARABLE_POINT, functional_from_spec("renyi:alpha=5"))
    assert dec_r5.support == (0, 1, 2)
    expected_r5 = math.log(0.6**5 + 0.3**5 + 0.1**5) / (1.0 - 5.0)
    assert abs(value_r5 - expected_r5) <= 1e-9


# ----------------------------------------------------------------- majorant

def test_square_center_majorant():
    model = ConvexModel(SQUARE)
    spectrum = gpt_majorant(model, [0.0, 0.0])
    assert np.allclose(spectrum, [0.5, 0.5], rtol=0, atol=1e-12)


def test_majorant_missing_for_incomparable_spectra():
    model = ConvexModel(INCOMPARABLE_QUAD)
    decs = enumerate_basic_decompositions(model, INCOMPARABLE_POINT)
    spectra = [np.sort(d.weights)[::-1] for d in decs]
    assert np.allclose(spectra[0], [0.6, 0.3, 0.1], rtol=0, atol=1e-9)
    assert np.allclose(spectra[1], [0.55, 0.4, 0.05], rtol=0, atol=1e-9)
    assert gpt_majorant(model, INCOMPARABLE_POINT) is None
    assert gpt_majorization(model, INCOMPARABLE_POINT, INCOMPARABLE_POINT) is None


def test_majorant_on_simplex_is_the_unique_spectrum():
    rng = as_rng(29)
    model = random_simplex_model(3, rng)
    x = random_interior_point(model, rng)
    dec = membership(model, x)
    spectrum = gpt_majorant(model, x)
    assert np.allclose(spectrum, np.sort(dec.weights)[::-1], rtol=0, atol=1e-12)


def test_gpt_majorization_vertex_dominates_center():
    model = ConvexModel(SQUARE)
    assert gpt_majorization(model, [1.0, 1.0], [0.0, 0.0]) is True
    assert gpt_majorization(model, [0.0, 0.0], [1.0, 1.0]) is False


def test_majorant_entropy_is_minimal_across_decompositions():
    model = ConvexModel(SQUARE)
    F = make_shannon()
    for x in ([0.0, 0.0], [0.25, 0.25], [0.5, 0.0]):
        spectrum = gpt_majorant(model, x)
        if spectrum is None:
            continue
        h_maj = entropy_finite(ProbVector.from_computation(spectrum), F).value
        for dec in enumerate_basic_decompositions(model, x):
            h_dec = entropy_finite(ProbVector.from_computation(dec.weights), F).value
            assert h_dec >= h_maj - 1e-9


# -------------------------------------------------------------------- state

def test_gpt_state_wrapper():
    model = ConvexModel(SQUARE)
    st = GptState.of(model, [0.0, 0.0])
    assert st.witness.support == (0, 3)
    with pytest.raises(ValueError):
        GptState.of(model, [5.0, 5.0])
