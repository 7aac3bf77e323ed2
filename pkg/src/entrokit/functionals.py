"""Entropic functional pairs and their validation.

An entropy in this family evaluates ``h(sum_i phi(p_i))`` on a probability
vector ``p``.  Admissible pairs couple a strictly increasing ``h`` with a
strictly concave ``phi``, or a strictly decreasing ``h`` with a strictly
convex ``phi``, normalized so that ``phi(0) = 0`` and ``h(phi(1)) = 0``.
Instances are immutable and safe to share across threads.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

STRICT_TOL = 1e-12
GRID_DEFAULT = 1001
MIN_GRID = 3
# h is validated on the sums realizable with at most this many outcomes.
RANGE_OUTCOMES = 64


class FunctionalCase(Enum):
    """Monotonicity and curvature pairing of an admissible pair."""

    INCREASING_CONCAVE = "increasing_concave"
    DECREASING_CONVEX = "decreasing_convex"


def _elementwise(f: Callable) -> Callable:
    """Lift a function of 1-d float arrays to scalars and nd arrays."""

    @functools.wraps(f)
    def wrapper(x):
        shape = np.shape(x)
        arr = np.asarray(x, dtype=float).ravel()
        if arr.size == 0:
            return np.empty(shape)
        out = np.asarray(f(arr), dtype=float)
        if shape == ():
            return float(out[0])
        return out.reshape(shape)

    return wrapper


def _as_elementwise(f: Callable) -> Callable:
    """Like _elementwise for user callables that may be scalar-only."""
    try:
        probe = f(np.array([0.25, 0.5]))
        vector_ok = np.shape(probe) == (2,)
    except Exception:
        vector_ok = False
    if vector_ok:
        return _elementwise(f)
    return _elementwise(np.vectorize(f, otypes=[float]))


@dataclass(frozen=True)
class EntropicFunctional:
    """A named (h, phi) pair with its declared case and parameters.

    ``phi`` maps [0, 1] to the reals and ``h`` maps the closure of the range
    of the finite sums ``sum_i phi(p_i)`` to the reals; both accept scalars
    or numpy arrays.  ``family`` tags instances produced by the built-in
    factories so closed-form tail bounds can recognize them; custom pairs
    leave it None.
    """

    name: str
    phi: Callable
    h: Callable
    case: FunctionalCase
    params: dict = field(default_factory=dict)
    family: str | None = None


def make_shannon() -> EntropicFunctional:
    """The pair phi(x) = -x ln x, h = identity."""

    @_elementwise
    def phi(x):
        out = np.zeros_like(x)
        nz = x > 0.0
        out[nz] = -x[nz] * np.log(x[nz])
        return out

    return EntropicFunctional(
        name="shannon",
        phi=phi,
        h=_elementwise(lambda y: y),
        case=FunctionalCase.INCREASING_CONCAVE,
        params={},
        family="shannon",
    )


def make_renyi(alpha: float) -> EntropicFunctional:
    """The pair phi(x) = x**alpha, h(y) = ln(y) / (1 - alpha).

    Strictly concave phi with increasing h for 0 < alpha < 1, strictly
    convex phi with decreasing h for alpha > 1.  alpha = 1 is excluded.
    """
    alpha = float(alpha)
    if alpha <= 0.0 or alpha == 1.0:
        raise ValueError(f"alpha must be positive and different from 1, got {alpha}")

    @_elementwise
    def phi(x):
        out = np.zeros_like(x)
        nz = x > 0.0
        out[nz] = x[nz] ** alpha
        return out

    scale = 1.0 - alpha

    @_elementwise
    def h(y):
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.log(y) / scale

    case = FunctionalCase.INCREASING_CONCAVE if alpha < 1.0 else FunctionalCase.DECREASING_CONVEX
    return EntropicFunctional(
        name=f"renyi:alpha={alpha:g}",
        phi=phi,
        h=h,
        case=case,
        params={"alpha": alpha},
        family="renyi",
    )


def make_tsallis(q: float) -> EntropicFunctional:
    """The pair phi(x) = (x - x**q) / (q - 1), h = identity.

    phi is strictly concave for every admissible q > 0, q != 1, so the case
    is increasing/concave throughout the parameter range.
    """
    q = float(q)
    if q <= 0.0 or q == 1.0:
        raise ValueError(f"q must be positive and different from 1, got {q}")

    @_elementwise
    def phi(x):
        out = np.zeros_like(x)
        nz = x > 0.0
        out[nz] = (x[nz] - x[nz] ** q) / (q - 1.0)
        return out

    return EntropicFunctional(
        name=f"tsallis:q={q:g}",
        phi=phi,
        h=_elementwise(lambda y: y),
        case=FunctionalCase.INCREASING_CONCAVE,
        params={"q": q},
        family="tsallis",
    )


def make_kaniadakis(kappa: float) -> EntropicFunctional:
    """The pair phi(x) = (x**(1-kappa) - x**(1+kappa)) / (2 kappa), h = identity.

    Requires 0 < |kappa| < 1; the pair is symmetric under kappa -> -kappa.
    """
    kappa = float(kappa)
    if kappa == 0.0 or abs(kappa) >= 1.0:
        raise ValueError(f"kappa must satisfy 0 < |kappa| < 1, got {kappa}")

    @_elementwise
    def phi(x):
        out = np.zeros_like(x)
        nz = x > 0.0
        xs = x[nz]
        out[nz] = (xs ** (1.0 - kappa) - xs ** (1.0 + kappa)) / (2.0 * kappa)
        return out

    return EntropicFunctional(
        name=f"kaniadakis:kappa={kappa:g}",
        phi=phi,
        h=_elementwise(lambda y: y),
        case=FunctionalCase.INCREASING_CONCAVE,
        params={"kappa": kappa},
        family="kaniadakis",
    )


def make_custom(
    name: str,
    phi: Callable,
    h: Callable,
    case: FunctionalCase,
    params: dict | None = None,
) -> EntropicFunctional:
    """Wrap user callables as a functional pair without validating them.

    Run validate_functional on the result to check the declared case.
    """
    if not isinstance(case, FunctionalCase):
        raise ValueError(f"case must be a FunctionalCase, got {case!r}")
    return EntropicFunctional(
        name=name,
        phi=_as_elementwise(phi),
        h=_as_elementwise(h),
        case=case,
        params=dict(params or {}),
        family=None,
    )


@dataclass(frozen=True)
class ValidationCheck:
    """Single validation outcome; margin > 0 is slack, negative is violation."""

    name: str
    passed: bool
    margin: float


@dataclass(frozen=True)
class ValidationReport:
    functional: str
    case: str
    grid_size: int
    checks: tuple[ValidationCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "functional": self.functional,
            "case": self.case,
            "grid_size": self.grid_size,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "margin": c.margin} for c in self.checks
            ],
        }


def validate_functional(F: EntropicFunctional, grid_size: int = GRID_DEFAULT) -> ValidationReport:
    """Check the normalization, curvature, and monotonicity of a pair on a grid.

    Curvature is probed by strict midpoint concavity (or convexity) over all
    pairs of a uniform grid on [0, 1]; monotonicity of h is probed on the
    interval of sums realizable with at most RANGE_OUTCOMES outcomes.
    Failures are report entries, never exceptions.
    """
    if grid_size < MIN_GRID:
        raise ValueError(f"grid_size must be at least {MIN_GRID}, got {grid_size}")
    checks = []

    phi0 = F.phi(0.0)
    checks.append(ValidationCheck("phi_at_zero", passed=(phi0 == 0.0), margin=-abs(phi0)))

    root = abs(float(F.h(F.phi(1.0))))
    checks.append(ValidationCheck("h_at_phi_one", passed=(root <= STRICT_TOL), margin=STRICT_TOL - root))

    xs = np.linspace(0.0, 1.0, grid_size)
    phi_xs = np.asarray(F.phi(xs))
    ii, jj = np.triu_indices(grid_size, k=1)
    gaps = np.asarray(F.phi(0.5 * (xs[ii] + xs[jj]))) - 0.5 * (phi_xs[ii] + phi_xs[jj])
    if F.case is FunctionalCase.DECREASING_CONVEX:
        gaps = -gaps
    curve_name = (
        "phi_strictly_concave"
        if F.case is FunctionalCase.INCREASING_CONCAVE
        else "phi_strictly_convex"
    )
    curve_margin = float(np.min(gaps))
    checks.append(ValidationCheck(curve_name, passed=(curve_margin > -STRICT_TOL), margin=curve_margin))

    phi1 = float(F.phi(1.0))
    uniform_sum = RANGE_OUTCOMES * float(F.phi(1.0 / RANGE_OUTCOMES))
    lo, hi = sorted((phi1, uniform_sum))
    ys = np.linspace(lo, hi, grid_size)
    diffs = np.diff(np.asarray(F.h(ys)))
    if F.case is FunctionalCase.DECREASING_CONVEX:
        diffs = -diffs
        mono_name = "h_strictly_decreasing"
    else:
        mono_name = "h_strictly_increasing"
    mono_margin = float(np.min(diffs)) if diffs.size else 0.0
    checks.append(ValidationCheck(mono_name, passed=(mono_margin > STRICT_TOL), margin=mono_margin))

    return ValidationReport(
        functional=F.name,
        case=F.case.value,
        grid_size=grid_size,
        checks=tuple(checks),
    )


# Parameter schema of the built-in families, keyed by spec-string name.
BUILTIN_FAMILIES = {
    "shannon": {"factory": make_shannon, "params": {}, "constraint": "no parameters"},
    "renyi": {"factory": make_renyi, "params": ("alpha",), "constraint": "alpha > 0, alpha != 1"},
    "tsallis": {"factory": make_tsallis, "params": ("q",), "constraint": "q > 0, q != 1"},
    "kaniadakis": {
        "factory": make_kaniadakis,
        "params": ("kappa",),
        "constraint": "0 < |kappa| < 1",
    },
}


def functional_from_spec(spec: str) -> EntropicFunctional:
    """Build a built-in functional from a spec string like ``renyi:alpha=2``."""
    name, _, rest = spec.strip().partition(":")
    name = name.strip().lower()
    if name not in BUILTIN_FAMILIES:
        known = ", ".join(sorted(BUILTIN_FAMILIES))
        raise ValueError(f"unknown functional family {name!r} (known: {known})")
    entry = BUILTIN_FAMILIES[name]
    params = {}
    if rest:
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"malformed parameter {item!r} in spec {spec!r}")
            try:
                params[key.strip()] = float(value)
            except ValueError:
                raise ValueError(f"non-numeric value for {key.strip()!r} in spec {spec!r}") from None
    expected = set(entry["params"])
    if set(params) != expected:
        raise ValueError(
            f"family {name!r} takes parameters {sorted(expected) or 'none'}, got {sorted(params)}"
        )
    return entry["factory"](**params)
